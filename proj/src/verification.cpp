#include "hallmhd/verification.hpp"

#include <algorithm>
#include <cmath>

#include "hallmhd/parallel.hpp"
#include "hallmhd/random_fields.hpp"

namespace hallmhd {

LemmaId lemma_from_string(const std::string& name) {
    if (name == "div_vw") return LemmaId::div_vw;
    if (name == "div_curlinv_w") return LemmaId::div_curlinv_w;
    if (name == "div_v_curlinv") return LemmaId::div_v_curlinv;
    if (name == "algebra") return LemmaId::algebra;
    if (name == "heat") return LemmaId::heat;
    if (name == "duhamel") return LemmaId::duhamel;
    if (name == "interp") return LemmaId::interp;
    throw ConfigError("unknown lemma id: " + name);
}

std::string to_string(LemmaId id) {
    switch (id) {
        case LemmaId::div_vw: return "div_vw";
        case LemmaId::div_curlinv_w: return "div_curlinv_w";
        case LemmaId::div_v_curlinv: return "div_v_curlinv";
        case LemmaId::algebra: return "algebra";
        case LemmaId::heat: return "heat";
        case LemmaId::duhamel: return "duhamel";
        case LemmaId::interp: return "interp";
    }
    return "div_vw";
}

namespace {

ScalarField scalar_pointwise_product(const ScalarField& u, const ScalarField& v) {
    SampleArray up, vp;
    backward_into(u.grid, u.coeffs, up);
    backward_into(v.grid, v.coeffs, vp);
    for (std::size_t i = 0; i < up.size(); ++i) up[i] *= vp[i];
    ScalarField out(u.grid);
    forward_scaled_into(u.grid, up, out.coeffs);
    apply_dealias_mask(u.grid, out.coeffs);
    return out;
}

struct SampleRatio {
    double value = 0.0;
    bool skipped = false;
};

// Ratio for one seeded sample of the given lemma. The critical indices are
// pinned by p: s_low = 3/p - 1, s_mid = 3/p, s_high = 3/p + 1.
SampleRatio lemma_sample(LemmaId lemma, const GridSpec& grid, const NormSpec& spec,
                         std::uint64_t seed, const EstimateOptions& opt,
                         const LPPartition& part) {
    const double s_mid = 3.0 / spec.p;
    const NormSpec low = spec.with_s(s_mid - 1.0);
    const NormSpec mid = spec.with_s(s_mid);
    const NormSpec high = spec.with_s(s_mid + 1.0);

    const RandomFieldSpec fs_v{seed, opt.amplitude, opt.decay, opt.kmax};
    const RandomFieldSpec fs_w{seed + 31u, opt.amplitude, opt.decay, opt.kmax};

    auto guard = [](double num, double den) {
        SampleRatio r;
        if (den <= 0.0) {
            r.skipped = true;
            return r;
        }
        r.value = num / den;
        return r;
    };

    switch (lemma) {
        case LemmaId::div_vw: {
            const VectorField v = random_divfree_field(grid, fs_v);
            const VectorField w = random_divfree_field(grid, fs_w);
            const double num = besov_morrey_norm(tensor_divergence(v, w), low, part);
            const double den = besov_morrey_norm(v, mid, part) * besov_morrey_norm(w, mid, part);
            return guard(num, den);
        }
        case LemmaId::div_curlinv_w: {
            const VectorField v = random_divfree_field(grid, fs_v);
            const VectorField w = random_divfree_field(grid, fs_w);
            const double num = besov_morrey_norm(tensor_divergence(curl_inv(v), w), mid, part);
            const double den = std::sqrt(besov_morrey_norm(v, low, part) *
                                         besov_morrey_norm(w, low, part) *
                                         besov_morrey_norm(v, high, part) *
                                         besov_morrey_norm(w, high, part));
            return guard(num, den);
        }
        case LemmaId::div_v_curlinv: {
            const VectorField v = random_divfree_field(grid, fs_v);
            const VectorField w = random_divfree_field(grid, fs_w);
            const double num = besov_morrey_norm(tensor_divergence(v, curl_inv(w)), mid, part);
            const double den = besov_morrey_norm(v, high, part) * besov_morrey_norm(w, low, part);
            return guard(num, den);
        }
        case LemmaId::algebra: {
            const ScalarField u = random_scalar_field(grid, fs_v);
            const ScalarField v = random_scalar_field(grid, fs_w);
            const double num = besov_morrey_norm(scalar_pointwise_product(u, v), mid, part);
            const double den = besov_morrey_norm(u, mid, part) * besov_morrey_norm(v, mid, part);
            return guard(num, den);
        }
        case LemmaId::heat: {
            const VectorField u0 = random_divfree_field(grid, fs_v);
            ExtendedState th(grid);
            th.u = u0;
            SolverConfig cfg;
            cfg.T = opt.T;
            cfg.n_steps = opt.n_nodes;
            cfg.norm_spec = low;
            const Trajectory y = heat_trajectory(th, cfg);
            const SpaceTimeNorms n = spacetime_norms(y, low, low.with_s(low.s + 2.0));
            return guard(n.x_norm, besov_morrey_norm(u0, low, part));
        }
        case LemmaId::duhamel: {
            const VectorField g = random_divfree_field(grid, fs_v);
            Trajectory rhs(grid, opt.T, opt.n_nodes);
            for (std::size_t k = 0; k < rhs.node_count(); ++k)
                rhs.states[k].u = (1.0 + 0.5 * std::cos(3.0 * rhs.times[k] / opt.T)) * g;
            const Trajectory z = integrate_duhamel(rhs, PhysicalParams{});
            const SpaceTimeNorms zn = spacetime_norms(z, low, low.with_s(low.s + 2.0));
            // L1-in-time source norm by the same trapezoid rule.
            std::vector<double> f(rhs.node_count());
            for (std::size_t k = 0; k < rhs.node_count(); ++k)
                f[k] = state_norm(rhs.states[k], low, part);
            double l1 = 0.5 * (f.front() + f.back());
            for (std::size_t k = 1; k + 1 < f.size(); ++k) l1 += f[k];
            l1 *= rhs.dt();
            return guard(zn.x_norm, l1);
        }
        case LemmaId::interp: {
            const VectorField u0 = random_divfree_field(grid, fs_v);
            ExtendedState th(grid);
            th.u = u0;
            SolverConfig cfg;
            cfg.T = opt.T;
            cfg.n_steps = opt.n_nodes;
            cfg.norm_spec = low;
            const Trajectory y = heat_trajectory(th, cfg);
            const SpaceTimeNorms n = spacetime_norms(y, low, low.with_s(low.s + 2.0));
            return guard(n.l2_mid, std::sqrt(n.linf_low * n.l1_high));
        }
    }
    return SampleRatio{0.0, true};
}

}  // namespace

EstimateReport estimate_constant(LemmaId lemma, int n_samples, const GridSpec& grid,
                                 const NormSpec& spec, std::uint64_t seed,
                                 const EstimateOptions& options) {
    if (n_samples < 1) throw DomainError("estimate_constant: n_samples must be >= 1");
    grid.validate();
    spec.validate();
    const LPPartition part = build_partition(grid);

    std::vector<SampleRatio> ratios(static_cast<std::size_t>(n_samples));
    parallel_for(ratios.size(), [&](std::size_t i) {
        const std::uint64_t sample_seed = seed + 1000003u * i;
        ratios[i] = lemma_sample(lemma, grid, spec, sample_seed, options, part);
    });

    EstimateReport rep;
    rep.lemma = lemma;
    rep.n_samples = n_samples;
    rep.grid = grid;
    rep.spec = spec;
    rep.seed = seed;
    double sum = 0.0;
    int used = 0;
    for (const auto& r : ratios) {
        if (r.skipped) {
            ++rep.skipped;
            continue;
        }
        rep.max_ratio = std::max(rep.max_ratio, r.value);
        sum += r.value;
        ++used;
    }
    rep.mean_ratio = used > 0 ? sum / used : 0.0;
    return rep;
}

std::vector<double> check_j_consistency(const Trajectory& traj, const NormSpec& spec_low) {
    traj.check_uniform();
    const LPPartition part = build_partition(traj.grid);
    const NormSpec down = spec_low.with_s(spec_low.s - 1.0);  // N^{3/p - 2}
    std::vector<double> defect(traj.node_count(), 0.0);
    parallel_for(traj.node_count(), [&](std::size_t k) {
        const ExtendedState& s = traj.states[k];
        const double num = besov_morrey_norm(curl(s.b) - s.j, down, part);
        const double den = std::max(besov_morrey_norm(s.j, down, part), 1e-30);
        defect[k] = num / den;
    });
    return defect;
}

Trajectory rescale_lambda2(const Trajectory& traj) {
    traj.check_uniform();
    const GridSpec& g = traj.grid;
    const GridSpec fine(g.n, g.box_length / 2.0, g.dealias_fraction);
    Trajectory out;
    out.grid = fine;
    out.times.resize(traj.times.size());
    for (std::size_t k = 0; k < traj.times.size(); ++k) out.times[k] = traj.times[k] / 4.0;
    out.states.reserve(traj.node_count());
    for (const auto& s : traj.states) {
        // Same integer-mode arrays: u'(x') = 2 u(2x') has coefficients 2 c_k
        // against xi' = 2 xi on the half-size box.
        ExtendedState r(fine);
        for (int i = 0; i < 3; ++i)
            for (int d = 0; d < 3; ++d) {
                const auto& src = s.slot(i).coeffs[static_cast<std::size_t>(d)];
                auto& dst = r.slot(i).coeffs[static_cast<std::size_t>(d)];
                for (std::size_t m = 0; m < src.size(); ++m) dst[m] = 2.0 * src[m];
            }
        out.states.push_back(std::move(r));
    }
    return out;
}

ScalingReport check_scaling(const Trajectory& traj, const SolverConfig& cfg) {
    ScalingReport rep;
    rep.original_residual = integral_equation_residual(traj, cfg);

    const Trajectory rescaled = rescale_lambda2(traj);
    SolverConfig fine_cfg = cfg;
    fine_cfg.T = rescaled.final_time();
    fine_cfg.n_steps = rescaled.node_count();
    rep.rescaled_residual = integral_equation_residual(rescaled, fine_cfg);

    const Trajectory heat = heat_trajectory(rescaled.states[0], fine_cfg);
    double num = 0.0, den = 0.0;
    for (std::size_t k = 0; k < rescaled.node_count(); ++k)
        for (int i = 0; i < 3; ++i) {
            const double d = l2_norm(rescaled.states[k].slot(i) - heat.states[k].slot(i));
            const double h = l2_norm(heat.states[k].slot(i));
            num += d * d;
            den += h * h;
        }
    rep.heat_covariance_defect = den > 0.0 ? std::sqrt(num / den) : 0.0;
    return rep;
}

UniquenessReport uniqueness_probe(const ExtendedState& theta0, const std::vector<double>& epsilons,
                                  const SolverConfig& cfg, std::uint64_t seed) {
    cfg.validate();
    // The probe only makes sense for consistent data; refuse anything else.
    const double j_scale = std::max(l2_norm(theta0.j), 1e-300);
    if (l2_norm(curl(theta0.b) - theta0.j) > 1e-9 * j_scale)
        throw DomainError("uniqueness_probe: inputs must satisfy J = curl B");

    UniquenessReport rep;
    const PicardResult base = picard_global(theta0, cfg);
    rep.base_converged = base.converged;
    if (!base.converged) return rep;

    const LPPartition part = build_partition(theta0.grid());
    const NormSpec low = cfg.norm_spec;

    // Unit perturbation direction: random div-free (du, db), dj = curl db.
    ExtendedState dir(theta0.grid());
    dir.u = random_divfree_field(theta0.grid(), {seed, 1.0});
    dir.b = random_divfree_field(theta0.grid(), {seed + 1u, 1.0});
    dir.j = curl(dir.b);
    const double dir_norm = besov_morrey_norm(dir.u, low, part) +
                            besov_morrey_norm(dir.b, low, part) +
                            cfg.params.h * besov_morrey_norm(dir.j, low, part);
    if (dir_norm > 0.0) dir = (1.0 / dir_norm) * dir;

    for (double eps : epsilons) {
        ExtendedState perturbed = theta0;
        axpy(eps, dir, perturbed);
        const PicardResult run = picard_global(perturbed, cfg);
        if (!run.converged) continue;
        Trajectory diff = run.traj - base.traj;
        const SpaceTimeNorms n = spacetime_norms(diff, low, low.with_s(low.s + 2.0));
        rep.epsilons.push_back(eps);
        rep.response_ratios.push_back(n.linf_low / eps);
    }
    if (!rep.response_ratios.empty()) {
        const auto [lo, hi] =
            std::minmax_element(rep.response_ratios.begin(), rep.response_ratios.end());
        rep.max_ratio = *hi;
        rep.ratio_spread = *lo > 0.0 ? *hi / *lo : 0.0;
    }
    return rep;
}

ContractionReport contraction_probe(const SolverConfig& cfg, const GridSpec& grid, int n_samples,
                                    std::uint64_t seed) {
    ContractionReport rep;
    rep.k_emp = estimate_bilinear_constant(grid, cfg, n_samples, seed);
    rep.radius = rep.k_emp > 0.0 ? 1.0 / (4.0 * rep.k_emp) : 0.0;
    rep.n_samples = n_samples;
    rep.seed = seed;
    return rep;
}

}  // namespace hallmhd
