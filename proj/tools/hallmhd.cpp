// Batch experiment runner: parses a JSON job description, dispatches the
// solver/verification work and emits machine-readable artifacts.

#include <cstdio>
#include <cstdlib>
#include <string>

#include "CLI11.hpp"

#include "hallmhd/experiment.hpp"
#include "hallmhd/parallel.hpp"

int main(int argc, char** argv) {
    CLI::App app{"hallmhd - pseudo-spectral Hall-MHD workbench"};
    app.require_subcommand(1);

    std::string config_path;
    std::string output_override;
    int threads = 1;

    CLI::App* run = app.add_subcommand("run", "execute a job described by a JSON config");
    run->add_option("config", config_path, "path to config.json")->required();
    run->add_option("--threads", threads, "worker thread cap")->check(CLI::PositiveNumber);
    run->add_option("--output", output_override, "override the config's output directory");

    CLI::App* validate = app.add_subcommand("validate", "parse and validate a JSON config");
    validate->add_option("config", config_path, "path to config.json")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        hallmhd::ExperimentConfig cfg = hallmhd::load_config(config_path);
        hallmhd::apply_seed_override(cfg, std::getenv("HALLMHD_SEED"));

        if (validate->parsed()) {
            std::printf("ok: %s\n", hallmhd::to_json(cfg).dump().c_str());
            return hallmhd::exit_ok;
        }

        hallmhd::set_thread_budget(threads);
        if (!output_override.empty()) cfg.output_dir = output_override;
        return hallmhd::run_experiment(cfg);
    } catch (const hallmhd::ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return hallmhd::exit_config;
    } catch (const hallmhd::DomainError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return hallmhd::exit_config;
    } catch (const hallmhd::IntegrityError& e) {
        std::fprintf(stderr, "integrity error: %s\n", e.what());
        return hallmhd::exit_integrity;
    } catch (const hallmhd::IoError& e) {
        std::fprintf(stderr, "io error: %s\n", e.what());
        return hallmhd::exit_io;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return hallmhd::exit_failure;
    }
}
