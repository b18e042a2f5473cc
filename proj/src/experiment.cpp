#include "hallmhd/experiment.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>

#include "hallmhd/io.hpp"

namespace fs = std::filesystem;

namespace hallmhd {

namespace {

const std::set<std::string> kKinds = {"solve_global", "solve_local", "estimate",
                                      "consistency",  "scaling",     "uniqueness",
                                      "contraction",  "norm_report"};

std::string hex_hash(std::uint64_t h) {
    char buf[24];
    std::snprintf(buf, sizeof(buf), "0x%016llx", static_cast<unsigned long long>(h));
    return buf;
}

void write_json_file(const fs::path& path, const nlohmann::ordered_json& doc) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw IoError("cannot open for write: " + path.string());
    out << doc.dump(2) << "\n";
    if (!out) throw IoError("write failed: " + path.string());
}

}  // namespace

void ExperimentConfig::validate() const {
    if (!kKinds.count(kind)) throw ConfigError("unknown job kind: " + kind);
    grid.validate();
    solver.validate();
    if (initial.amplitude < 0.0) throw ConfigError("initial data amplitude must be >= 0");
    if (kind == "estimate") lemma_from_string(lemma);  // throws on bad name
    if ((kind == "estimate" || kind == "contraction") && n_samples < 1)
        throw ConfigError(kind + ": n_samples must be >= 1");
    if (kind == "uniqueness" && epsilons.empty())
        throw ConfigError("uniqueness: epsilon sweep must not be empty");
    for (double e : epsilons)
        if (!(e > 0.0)) throw ConfigError("uniqueness: epsilons must be positive");
    if (probe_samples < 1) throw ConfigError("probe_samples must be >= 1");
    if (output_dir.empty()) throw ConfigError("output_dir must not be empty");
}

ExperimentConfig parse_config(const nlohmann::json& doc) {
    try {
        ExperimentConfig cfg;
        cfg.kind = doc.at("kind").get<std::string>();
        cfg.seed = doc.value("seed", std::uint64_t{0});

        const auto& g = doc.at("grid");
        cfg.grid = GridSpec(g.at("n").get<int>(),
                            g.value("box_length", 2.0 * std::numbers::pi),
                            g.value("dealias_fraction", 2.0 / 3.0));

        if (doc.contains("solver")) {
            const auto& s = doc.at("solver");
            cfg.solver.params.mu = s.value("mu", 1.0);
            cfg.solver.params.nu = s.value("nu", 1.0);
            cfg.solver.params.h = s.value("h", 1.0);
            cfg.solver.T = s.value("T", 0.5);
            cfg.solver.n_steps = s.value("n_steps", std::size_t{64});
            cfg.solver.picard_tol = s.value("picard_tol", 1e-10);
            cfg.solver.picard_max_iter = s.value("picard_max_iter", 40);
            cfg.solver.delta = s.value("delta", 0.0);
        }

        NormSpec norm;
        if (doc.contains("norm")) {
            const auto& n = doc.at("norm");
            norm.p = n.value("p", 3.0);
            norm.q = n.value("q", 2.0);
            const auto r = n.value("r", 1.0);
            norm.r = r;
            norm.s = n.value("s", 3.0 / norm.p - 1.0);
            norm.policy.center_stride = n.value("center_stride", 2);
            norm.policy.min_halfwidth_cells = n.value("min_radius_cells", 2);
        } else {
            norm.s = 3.0 / norm.p - 1.0;
        }
        cfg.solver.norm_spec = norm;

        if (doc.contains("initial_data")) {
            const auto& d = doc.at("initial_data");
            if (d.contains("file")) {
                cfg.initial_file = d.at("file").get<std::string>();
            } else {
                cfg.initial.preset = preset_from_string(d.value("preset", std::string("random")));
                cfg.initial.amplitude = d.value("amplitude", 1.0);
                cfg.initial.decay = d.value("decay", 2.0);
                cfg.initial.kmax = d.value("kmax", 0);
                cfg.initial_seed_explicit = d.contains("seed");
                cfg.initial.seed = cfg.initial_seed_explicit ? d.at("seed").get<std::uint64_t>()
                                                             : cfg.seed;
            }
        } else {
            cfg.initial.seed = cfg.seed;
        }

        cfg.output_dir = doc.value("output_dir", std::string("out"));
        cfg.lemma = doc.value("lemma", std::string("div_vw"));
        cfg.n_samples = doc.value("n_samples", 200);
        cfg.probe_samples = doc.value("probe_samples", 4);
        if (doc.contains("epsilons"))
            cfg.epsilons = doc.at("epsilons").get<std::vector<double>>();
        cfg.snapshot_stride = doc.value("snapshot_stride", std::size_t{0});

        cfg.validate();
        return cfg;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("config parse error: ") + e.what());
    }
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config: " + path);
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    return parse_config(doc);
}

nlohmann::ordered_json to_json(const ExperimentConfig& cfg) {
    nlohmann::ordered_json doc;
    doc["kind"] = cfg.kind;
    doc["seed"] = cfg.seed;
    doc["grid"] = {{"n", cfg.grid.n},
                   {"box_length", cfg.grid.box_length},
                   {"dealias_fraction", cfg.grid.dealias_fraction}};
    doc["solver"] = {{"mu", cfg.solver.params.mu},
                     {"nu", cfg.solver.params.nu},
                     {"h", cfg.solver.params.h},
                     {"T", cfg.solver.T},
                     {"n_steps", cfg.solver.n_steps},
                     {"picard_tol", cfg.solver.picard_tol},
                     {"picard_max_iter", cfg.solver.picard_max_iter},
                     {"delta", cfg.solver.delta}};
    const NormSpec& n = cfg.solver.norm_spec;
    doc["norm"] = {{"s", n.s},
                   {"p", n.p},
                   {"q", n.q},
                   {"r", n.r},
                   {"center_stride", n.policy.center_stride},
                   {"min_radius_cells", n.policy.min_halfwidth_cells}};
    if (cfg.initial_file) {
        doc["initial_data"] = {{"file", *cfg.initial_file}};
    } else {
        doc["initial_data"] = {{"preset", to_string(cfg.initial.preset)},
                               {"seed", cfg.initial.seed},
                               {"amplitude", cfg.initial.amplitude},
                               {"decay", cfg.initial.decay},
                               {"kmax", cfg.initial.kmax}};
    }
    doc["output_dir"] = cfg.output_dir;
    doc["lemma"] = cfg.lemma;
    doc["n_samples"] = cfg.n_samples;
    doc["probe_samples"] = cfg.probe_samples;
    doc["epsilons"] = cfg.epsilons;
    doc["snapshot_stride"] = cfg.snapshot_stride;
    return doc;
}

void apply_seed_override(ExperimentConfig& cfg, const char* env_value) {
    if (!env_value || !*env_value) return;
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env_value, &end, 10);
    if (end == env_value || *end != '\0')
        throw ConfigError("HALLMHD_SEED must be an unsigned integer");
    cfg.seed = v;
    if (!cfg.initial_file && !cfg.initial_seed_explicit) cfg.initial.seed = v;
}

void write_state(const std::string& path, const ExtendedState& s) {
    std::vector<SampleArray> comps;
    comps.reserve(9);
    for (int i = 0; i < 3; ++i) {
        auto phys = to_physical(s.slot(i));
        for (auto& c : phys) comps.push_back(std::move(c));
    }
    write_field_container(path, s.grid(), comps);
}

ExtendedState read_state(const std::string& path) {
    FieldContainer fc = read_field_container(path);
    if (fc.components.size() != 9)
        throw IoError("state container must have 9 components: " + path);
    ExtendedState s(fc.grid);
    for (int i = 0; i < 3; ++i)
        s.slot(i) = to_spectral(
            {fc.components[static_cast<std::size_t>(3 * i)],
             fc.components[static_cast<std::size_t>(3 * i + 1)],
             fc.components[static_cast<std::size_t>(3 * i + 2)]},
            fc.grid);
    return s;
}

ExtendedState materialize_initial_data(const ExperimentConfig& cfg) {
    if (cfg.initial_file) {
        ExtendedState loaded = read_state(*cfg.initial_file);
        // the container does not persist the dealias fraction; the config's
        // grid governs, only geometry must agree
        if (loaded.grid().n != cfg.grid.n || loaded.grid().box_length != cfg.grid.box_length)
            throw IntegrityError("initial data file grid does not match config grid");
        ExtendedState s(cfg.grid);
        for (int i = 0; i < 3; ++i) s.slot(i).coeffs = loaded.slot(i).coeffs;
        s.u = leray_project(s.u);
        s.b = leray_project(s.b);
        strip_mean(s.u);
        strip_mean(s.b);
        s.j = curl(s.b);
        return s;
    }
    return generate_initial_data(cfg.grid, cfg.initial);
}

namespace {

nlohmann::ordered_json smallness_json(const SmallnessReport& r) {
    return {{"norm_u0", r.norm_u0},
            {"norm_b0", r.norm_b0},
            {"h_norm_j0", r.h_norm_j0},
            {"delta", r.delta},
            {"k_emp", r.k_emp},
            {"m_emp", r.m_emp},
            {"radius", r.radius},
            {"radius_global", r.radius_global},
            {"y_x_norm", r.y_x_norm},
            {"local_gate", r.local_gate},
            {"global_gate", r.global_gate},
            {"marginal", r.marginal}};
}

void write_series_csv(const fs::path& path, const std::vector<IterateRecord>& series) {
    CsvWriter csv(path.string());
    csv.raw_row({"iter", "linf_low", "l1_high", "l2_mid", "x_norm", "residual"});
    for (const auto& rec : series) {
        const double rel = rec.norms.x_norm > 0.0 ? rec.diff_norm / rec.norms.x_norm : 0.0;
        csv.row({static_cast<double>(rec.iter), rec.norms.linf_low, rec.norms.l1_high,
                 rec.norms.l2_mid, rec.norms.x_norm, rel});
    }
    csv.close();
}

void write_snapshots(const fs::path& dir, const Trajectory& traj, std::size_t stride) {
    write_state((dir / "theta_initial.bin").string(), traj.states.front());
    write_state((dir / "theta_final.bin").string(), traj.states.back());
    if (stride == 0) return;
    for (std::size_t k = stride; k + 1 < traj.node_count(); k += stride) {
        char name[32];
        std::snprintf(name, sizeof(name), "theta_%05zu.bin", k);
        write_state((dir / name).string(), traj.states[k]);
    }
}

struct JobContext {
    const ExperimentConfig& cfg;
    fs::path out;
    fs::path reports;
    fs::path fields;
    nlohmann::ordered_json manifest;
};

int run_solve(JobContext& ctx, bool local) {
    const ExperimentConfig& cfg = ctx.cfg;
    const ExtendedState theta0 = materialize_initial_data(cfg);
    ctx.manifest["input_hash"] = hex_hash(state_hash(theta0));

    SolverConfig scfg = cfg.solver;
    const SmallnessReport small =
        smallness_report(theta0, scfg, cfg.seed + 999u, cfg.probe_samples);
    if (scfg.delta <= 0.0) scfg.delta = small.delta;
    ctx.manifest["delta_in_force"] = scfg.delta;
    write_json_file(ctx.reports / "smallness.json", smallness_json(small));

    bool converged = false;
    if (local) {
        LocalPicardResult res = picard_local(theta0, scfg);
        converged = res.converged;
        write_series_csv(ctx.out / "series.csv", res.series);
        write_snapshots(ctx.fields, res.traj, cfg.snapshot_stride);
        ctx.manifest["result"] = {{"converged", res.converged},
                                  {"diverged", res.diverged},
                                  {"iterates", res.iterates},
                                  {"residual", res.residual},
                                  {"m_emp", res.m_emp}};
    } else {
        PicardResult res = picard_global(theta0, scfg);
        converged = res.converged;
        write_series_csv(ctx.out / "series.csv", res.series);
        write_snapshots(ctx.fields, res.traj, cfg.snapshot_stride);
        ctx.manifest["result"] = {{"converged", res.converged},
                                  {"diverged", res.diverged},
                                  {"iterates", res.iterates},
                                  {"residual", res.residual}};
    }
    if (!converged) {
        write_json_file(ctx.reports / "failure.json",
                        {{"error", "nonconvergence"}, {"kind", cfg.kind}});
        return exit_nonconvergence;
    }
    return exit_ok;
}

int run_estimate(JobContext& ctx) {
    const ExperimentConfig& cfg = ctx.cfg;
    EstimateOptions opt;
    opt.T = cfg.solver.T;
    const EstimateReport rep = estimate_constant(lemma_from_string(cfg.lemma), cfg.n_samples,
                                                 cfg.grid, cfg.solver.norm_spec, cfg.seed, opt);
    nlohmann::ordered_json doc = {{"lemma_id", to_string(rep.lemma)},
                                  {"n_samples", rep.n_samples},
                                  {"skipped", rep.skipped},
                                  {"max_ratio", rep.max_ratio},
                                  {"mean_ratio", rep.mean_ratio},
                                  {"grid_n", rep.grid.n},
                                  {"box_length", rep.grid.box_length},
                                  {"p", rep.spec.p},
                                  {"q", rep.spec.q},
                                  {"r", rep.spec.r},
                                  {"seed", rep.seed}};
    write_json_file(ctx.reports / "estimate.json", doc);

    CsvWriter csv((ctx.out / "estimate.csv").string());
    csv.raw_row({"lemma_id", "max_ratio", "mean_ratio", "grid_n", "p", "q", "r", "n_samples",
                 "seed"});
    csv.raw_row({to_string(rep.lemma), format_double(rep.max_ratio),
                 format_double(rep.mean_ratio), std::to_string(rep.grid.n),
                 format_double(rep.spec.p), format_double(rep.spec.q), format_double(rep.spec.r),
                 std::to_string(rep.n_samples), std::to_string(rep.seed)});
    csv.close();
    return exit_ok;
}

int run_consistency(JobContext& ctx) {
    const ExperimentConfig& cfg = ctx.cfg;
    const ExtendedState theta0 = materialize_initial_data(cfg);
    ctx.manifest["input_hash"] = hex_hash(state_hash(theta0));
    const NormSpec low = cfg.solver.norm_spec;

    const Trajectory heat = heat_trajectory(theta0, cfg.solver);
    const std::vector<double> heat_defects = check_j_consistency(heat, low);

    const PicardResult res = picard_global(theta0, cfg.solver);
    const std::vector<double> sol_defects = check_j_consistency(res.traj, low);

    auto vmax = [](const std::vector<double>& v) {
        double m = 0.0;
        for (double x : v) m = std::max(m, x);
        return m;
    };
    nlohmann::ordered_json doc = {{"heat_max_defect", vmax(heat_defects)},
                                  {"solution_max_defect", vmax(sol_defects)},
                                  {"converged", res.converged},
                                  {"heat_series", heat_defects},
                                  {"solution_series", sol_defects}};
    write_json_file(ctx.reports / "consistency.json", doc);
    if (!res.converged) {
        write_json_file(ctx.reports / "failure.json",
                        {{"error", "nonconvergence"}, {"kind", cfg.kind}});
        return exit_nonconvergence;
    }
    return exit_ok;
}

int run_scaling(JobContext& ctx) {
    const ExperimentConfig& cfg = ctx.cfg;
    const ExtendedState theta0 = materialize_initial_data(cfg);
    ctx.manifest["input_hash"] = hex_hash(state_hash(theta0));

    const Trajectory heat = heat_trajectory(theta0, cfg.solver);
    const ScalingReport heat_rep = check_scaling(heat, cfg.solver);

    const PicardResult res = picard_global(theta0, cfg.solver);
    const ScalingReport sol_rep = check_scaling(res.traj, cfg.solver);

    nlohmann::ordered_json doc = {
        {"heat", {{"covariance_defect", heat_rep.heat_covariance_defect}}},
        {"solution",
         {{"original_residual", sol_rep.original_residual},
          {"rescaled_residual", sol_rep.rescaled_residual},
          {"converged", res.converged}}}};
    write_json_file(ctx.reports / "scaling.json", doc);
    if (!res.converged) {
        write_json_file(ctx.reports / "failure.json",
                        {{"error", "nonconvergence"}, {"kind", cfg.kind}});
        return exit_nonconvergence;
    }
    return exit_ok;
}

int run_uniqueness(JobContext& ctx) {
    const ExperimentConfig& cfg = ctx.cfg;
    const ExtendedState theta0 = materialize_initial_data(cfg);
    ctx.manifest["input_hash"] = hex_hash(state_hash(theta0));

    const UniquenessReport rep = uniqueness_probe(theta0, cfg.epsilons, cfg.solver, cfg.seed + 7u);
    nlohmann::ordered_json doc = {{"base_converged", rep.base_converged},
                                  {"epsilons", rep.epsilons},
                                  {"response_ratios", rep.response_ratios},
                                  {"max_ratio", rep.max_ratio},
                                  {"ratio_spread", rep.ratio_spread}};
    write_json_file(ctx.reports / "uniqueness.json", doc);
    if (!rep.base_converged) {
        write_json_file(ctx.reports / "failure.json",
                        {{"error", "nonconvergence"}, {"kind", cfg.kind}});
        return exit_nonconvergence;
    }
    return exit_ok;
}

int run_contraction(JobContext& ctx) {
    const ExperimentConfig& cfg = ctx.cfg;
    const ContractionReport rep =
        contraction_probe(cfg.solver, cfg.grid, cfg.n_samples, cfg.seed);
    nlohmann::ordered_json doc = {{"k_emp", rep.k_emp},
                                  {"radius", rep.radius},
                                  {"n_samples", rep.n_samples},
                                  {"seed", rep.seed},
                                  {"T", cfg.solver.T}};
    write_json_file(ctx.reports / "contraction.json", doc);
    return exit_ok;
}

int run_norm_report(JobContext& ctx) {
    const ExperimentConfig& cfg = ctx.cfg;
    const ExtendedState theta0 = materialize_initial_data(cfg);
    ctx.manifest["input_hash"] = hex_hash(state_hash(theta0));
    const LPPartition part = build_partition(cfg.grid);
    const NormSpec base = cfg.solver.norm_spec;

    nlohmann::ordered_json entries = nlohmann::ordered_json::array();
    CsvWriter csv((ctx.out / "norms.csv").string());
    csv.raw_row({"field_id", "s", "p", "q", "r", "value"});
    const char* names[3] = {"u0", "b0", "j0"};
    for (int i = 0; i < 3; ++i) {
        for (int ds = 0; ds <= 2; ++ds) {
            const NormSpec spec = base.with_s(base.s + ds);
            const double v = besov_morrey_norm(theta0.slot(i), spec, part);
            entries.push_back({{"field_id", names[i]},
                               {"s", spec.s},
                               {"p", spec.p},
                               {"q", spec.q},
                               {"r", spec.r},
                               {"value", v},
                               {"policy",
                                {{"center_stride", spec.policy.center_stride},
                                 {"min_radius_cells", spec.policy.min_halfwidth_cells}}},
                               {"j_range", {part.j_min, part.j_max}}});
            csv.raw_row({names[i], format_double(spec.s), format_double(spec.p),
                         format_double(spec.q), format_double(spec.r), format_double(v)});
        }
    }
    csv.close();
    write_json_file(ctx.reports / "norms.json", entries);

    // optional per-band dumps of the decomposition
    if (cfg.snapshot_stride != 0) {
        for (int i = 0; i < 3; ++i)
            for (int j = part.j_min; j <= part.j_max; ++j) {
                char name[48];
                std::snprintf(name, sizeof(name), "band_%s_j%+03d.bin", names[i], j);
                write_vector_field((ctx.fields / name).string(),
                                   lp_block(theta0.slot(i), j, part));
            }
    }
    return exit_ok;
}

}  // namespace

int run_experiment(const ExperimentConfig& cfg) {
    JobContext ctx{cfg, fs::path(cfg.output_dir), {}, {}, {}};
    try {
        cfg.validate();
        ctx.reports = ctx.out / "reports";
        ctx.fields = ctx.out / "fields";
        fs::create_directories(ctx.reports);
        fs::create_directories(ctx.fields);

        ctx.manifest["tool"] = "hallmhd";
        // the destination is not part of the run's identity; replays into
        // fresh directories must be byte-identical
        nlohmann::ordered_json config_doc = to_json(cfg);
        config_doc.erase("output_dir");
        ctx.manifest["config"] = config_doc;
        ctx.manifest["seed_in_force"] = cfg.seed;

        int code = exit_failure;
        if (cfg.kind == "solve_global") code = run_solve(ctx, false);
        else if (cfg.kind == "solve_local") code = run_solve(ctx, true);
        else if (cfg.kind == "estimate") code = run_estimate(ctx);
        else if (cfg.kind == "consistency") code = run_consistency(ctx);
        else if (cfg.kind == "scaling") code = run_scaling(ctx);
        else if (cfg.kind == "uniqueness") code = run_uniqueness(ctx);
        else if (cfg.kind == "contraction") code = run_contraction(ctx);
        else if (cfg.kind == "norm_report") code = run_norm_report(ctx);

        write_json_file(ctx.out / "manifest.json", ctx.manifest);
        return code;
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return exit_config;
    } catch (const DomainError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return exit_config;
    } catch (const IntegrityError& e) {
        std::fprintf(stderr, "integrity error: %s\n", e.what());
        return exit_integrity;
    } catch (const IoError& e) {
        std::fprintf(stderr, "io error: %s\n", e.what());
        return exit_io;
    }
}

}  // namespace hallmhd
