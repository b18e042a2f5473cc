#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "hallmhd/random_fields.hpp"
#include "hallmhd/solver.hpp"
#include "hallmhd/verification.hpp"

namespace hallmhd {

// One batch job: parsed from a single JSON document, dispatched by kind.
struct ExperimentConfig {
    std::string kind;                 // solve_global | solve_local | estimate | consistency
                                      // | scaling | uniqueness | contraction | norm_report
    std::uint64_t seed = 0;           // master seed; HALLMHD_SEED overrides
    GridSpec grid;
    SolverConfig solver;
    InitialDataSpec initial;
    bool initial_seed_explicit = false;       // config pinned its own data seed
    std::optional<std::string> initial_file;  // 9-component state container
    std::string output_dir = "out";

    std::string lemma = "div_vw";     // estimate jobs
    int n_samples = 200;              // estimate / contraction jobs
    int probe_samples = 4;            // smallness probe attached to solve jobs
    std::vector<double> epsilons{1e-2, 1e-3, 1e-4};  // uniqueness sweep
    std::size_t snapshot_stride = 0;  // 0: endpoints only

    void validate() const;
};

ExperimentConfig parse_config(const nlohmann::json& doc);
ExperimentConfig load_config(const std::string& path);
nlohmann::ordered_json to_json(const ExperimentConfig& cfg);

// Applies the HALLMHD_SEED environment override (when set) to the master seed
// and to the initial-data seed when the config did not pin one explicitly.
void apply_seed_override(ExperimentConfig& cfg, const char* env_value);

// Materializes initial data from the generator spec or state file; always
// re-projects, strips means and sets J = curl B.
ExtendedState materialize_initial_data(const ExperimentConfig& cfg);

// Runs the job, writing manifest.json, series.csv, reports/*.json and
// fields/*.bin under output_dir. Returns a CLI exit code.
int run_experiment(const ExperimentConfig& cfg);

// State container helpers (9 components: u, b, j).
void write_state(const std::string& path, const ExtendedState& s);
ExtendedState read_state(const std::string& path);

}  // namespace hallmhd
