#include "hallmhd/solver.hpp"

#include <algorithm>
#include <cmath>

#include "hallmhd/parallel.hpp"
#include "hallmhd/random_fields.hpp"

namespace hallmhd {

namespace {

void heat_state_inplace(ExtendedState& s, double t, const PhysicalParams& p) {
    heat_propagate_inplace(s.u, t, p.mu);
    heat_propagate_inplace(s.b, t, p.nu);
    heat_propagate_inplace(s.j, t, p.nu);
}

// mu = h = 1 normalization: Theta* = (u, B, hJ)/mu on the rescaled clock
// t* = mu t, leaving the torus untouched. Exact by bilinearity of Pi.
struct Normalization {
    double mu, h;

    SolverConfig rescale(const SolverConfig& cfg) const {
        SolverConfig out = cfg;
        out.params = PhysicalParams{1.0, cfg.params.nu / mu, 1.0};
        out.T = cfg.T * mu;
        return out;
    }
    ExtendedState forward(const ExtendedState& s) const {
        ExtendedState out = s;
        out.u = (1.0 / mu) * s.u;
        out.b = (1.0 / mu) * s.b;
        out.j = (h / mu) * s.j;
        return out;
    }
    // Maps a normalized trajectory back onto the caller's clock and units.
    Trajectory backward(const Trajectory& t, const SolverConfig& original_cfg) const {
        Trajectory out(t.grid, original_cfg.T, t.node_count());
        for (std::size_t k = 0; k < t.node_count(); ++k) {
            out.states[k].u = mu * t.states[k].u;
            out.states[k].b = mu * t.states[k].b;
            out.states[k].j = (mu / h) * t.states[k].j;
        }
        return out;
    }
};

}  // namespace

Trajectory heat_trajectory(const ExtendedState& theta0, const SolverConfig& cfg) {
    cfg.validate();
    Trajectory traj(theta0.grid(), cfg.T, cfg.n_steps);
    parallel_for(traj.node_count(), [&](std::size_t k) {
        ExtendedState s = theta0;
        heat_state_inplace(s, traj.times[k], cfg.params);
        traj.states[k] = std::move(s);
    });
    return traj;
}

Trajectory integrate_duhamel(const Trajectory& rhs, const PhysicalParams& params) {
    rhs.check_uniform();
    const double dt = rhs.dt();
    Trajectory out = rhs;  // shape; node values overwritten below
    out.states[0] = ExtendedState(rhs.grid);

    // Composite trapezoid with exact inter-node propagation:
    //   I_k = e^{dt lap}(I_{k-1} + dt/2 rhs_{k-1}) + dt/2 rhs_k;
    // the trailing half weight on rhs_{k-1} completes to a full interior
    // weight when the next step adds its own half before propagating.
    ExtendedState acc(rhs.grid);
    for (std::size_t k = 1; k < rhs.node_count(); ++k) {
        axpy(0.5 * dt, rhs.states[k - 1], acc);
        heat_state_inplace(acc, dt, params);
        axpy(0.5 * dt, rhs.states[k], acc);
        out.states[k] = acc;
    }
    return out;
}

Trajectory duhamel_bilinear(const Trajectory& phi, const Trajectory& psi, const SolverConfig& cfg) {
    cfg.validate();
    phi.check_uniform();
    psi.check_uniform();
    if (phi.grid != psi.grid || phi.node_count() != psi.node_count() ||
        phi.times != psi.times)
        throw IntegrityError("duhamel_bilinear: trajectory grids do not match");

    Trajectory rhs = phi;
    parallel_for(phi.node_count(), [&](std::size_t k) {
        rhs.states[k] = extended_rhs(phi.states[k], psi.states[k], cfg.params);
    });
    return integrate_duhamel(rhs, cfg.params);
}

namespace {

struct IterationOutcome {
    Trajectory final;
    int iterates = 0;
    bool converged = false;
    bool diverged = false;
    std::vector<IterateRecord> series;
};

// Shared fixed-point loop: next = make_next(prev). Stops on relative X-norm
// change below tol, or flags divergence when the iterate norm runs away.
template <typename MakeNext>
IterationOutcome iterate_fixed_point(Trajectory first, const SolverConfig& cfg,
                                     double divergence_scale, MakeNext&& make_next) {
    const NormSpec low = cfg.norm_spec;
    IterationOutcome out;

    Trajectory prev = std::move(first);
    SpaceTimeNorms prev_norms = spacetime_norms(prev, low, low.with_s(low.s + 2.0));
    out.series.push_back({0, prev_norms, 0.0, 0.0});

    double prev_diff = 0.0;
    for (int iter = 1; iter <= cfg.picard_max_iter; ++iter) {
        Trajectory next = make_next(prev);
        const double diff = trajectory_x_norm(next - prev, low);
        const SpaceTimeNorms norms = spacetime_norms(next, low, low.with_s(low.s + 2.0));
        const double ratio = prev_diff > 0.0 ? diff / prev_diff : 0.0;
        out.series.push_back({iter, norms, diff, ratio});
        out.iterates = iter;

        if (norms.x_norm > 10.0 * std::max(divergence_scale, 1e-300)) {
            out.diverged = true;
            out.final = std::move(next);
            return out;
        }
        if (diff <= cfg.picard_tol * std::max(norms.x_norm, 1e-300)) {
            out.converged = true;
            out.final = std::move(next);
            return out;
        }
        prev = std::move(next);
        prev_diff = diff;
    }
    out.final = std::move(prev);
    return out;
}

}  // namespace

PicardResult picard_global(const ExtendedState& theta0, const SolverConfig& cfg) {
    cfg.validate();
    const Normalization nrm{cfg.params.mu, cfg.params.h};
    const SolverConfig ncfg = nrm.rescale(cfg);
    const ExtendedState t0 = nrm.forward(theta0);

    Trajectory y = heat_trajectory(t0, ncfg);
    const double y_x = trajectory_x_norm(y, ncfg.norm_spec);

    PicardResult result;
    if (y_x == 0.0) {
        // Zero data: the zero trajectory is the fixed point after one sweep.
        result.traj = nrm.backward(y, cfg);
        result.iterates = 1;
        result.converged = true;
        result.residual = 0.0;
        result.series.push_back({0, SpaceTimeNorms{}, 0.0, 0.0});
        return result;
    }

    auto outcome = iterate_fixed_point(y, ncfg, y_x, [&](const Trajectory& prev) {
        Trajectory next = y;
        Trajectory b = duhamel_bilinear(prev, prev, ncfg);
        axpy(1.0, b, next);
        return next;
    });

    result.iterates = outcome.iterates;
    result.converged = outcome.converged;
    result.diverged = outcome.diverged;
    result.series = std::move(outcome.series);

    // Residual in normalized units; the ratio is unit-invariant.
    const Trajectory& theta = outcome.final;
    Trajectory defect = theta - y;
    axpy(-1.0, duhamel_bilinear(theta, theta, ncfg), defect);
    const double theta_x = trajectory_x_norm(theta, ncfg.norm_spec);
    result.residual =
        theta_x > 0.0 ? trajectory_x_norm(defect, ncfg.norm_spec) / theta_x : 0.0;
    result.traj = nrm.backward(theta, cfg);
    return result;
}

LocalPicardResult picard_local(const ExtendedState& theta0, const SolverConfig& cfg) {
    cfg.validate();
    const Normalization nrm{cfg.params.mu, cfg.params.h};
    const SolverConfig ncfg = nrm.rescale(cfg);
    const ExtendedState t0 = nrm.forward(theta0);
    const NormSpec low = ncfg.norm_spec;

    Trajectory thetaL = heat_trajectory(t0, ncfg);
    Trajectory ytilde = duhamel_bilinear(thetaL, thetaL, ncfg);
    const double thetaL_x = trajectory_x_norm(thetaL, low);
    const double ytilde_x = trajectory_x_norm(ytilde, low);

    LocalPicardResult result;
    if (thetaL_x == 0.0) {
        result.traj = nrm.backward(thetaL, cfg);
        result.thetaL = nrm.backward(thetaL, cfg);
        result.tilde = nrm.backward(ytilde, cfg);
        result.converged = true;
        result.iterates = 1;
        return result;
    }

    auto linear_op = [&](const Trajectory& phi) {
        Trajectory l = duhamel_bilinear(phi, thetaL, ncfg);
        axpy(1.0, duhamel_bilinear(thetaL, phi, ncfg), l);
        return l;
    };

    auto outcome = iterate_fixed_point(
        ytilde, ncfg, ytilde_x, [&](const Trajectory& prev) {
            Trajectory next = ytilde;
            axpy(1.0, linear_op(prev), next);
            axpy(1.0, duhamel_bilinear(prev, prev, ncfg), next);
            return next;
        });

    const Trajectory& tilde = outcome.final;
    const double tilde_x = trajectory_x_norm(tilde, low);
    result.m_emp = tilde_x > 0.0 ? trajectory_x_norm(linear_op(tilde), low) / tilde_x : 0.0;

    Trajectory theta = thetaL;
    axpy(1.0, tilde, theta);

    Trajectory defect = theta - heat_trajectory(t0, ncfg);
    axpy(-1.0, duhamel_bilinear(theta, theta, ncfg), defect);
    const double theta_x = trajectory_x_norm(theta, low);
    result.residual = theta_x > 0.0 ? trajectory_x_norm(defect, low) / theta_x : 0.0;

    result.iterates = outcome.iterates;
    result.converged = outcome.converged;
    result.diverged = outcome.diverged;
    result.series = std::move(outcome.series);
    result.traj = nrm.backward(theta, cfg);
    result.thetaL = nrm.backward(thetaL, cfg);
    result.tilde = nrm.backward(tilde, cfg);
    return result;
}

double estimate_bilinear_constant(const GridSpec& grid, const SolverConfig& cfg, int n_samples,
                                  std::uint64_t seed) {
    cfg.validate();
    if (n_samples < 1) throw DomainError("estimate_bilinear_constant: n_samples >= 1");
    const NormSpec low = cfg.norm_spec;

    std::vector<double> ratios(static_cast<std::size_t>(n_samples), 0.0);
    parallel_for(static_cast<std::size_t>(n_samples), [&](std::size_t s) {
        // Heat flows of independent random states, one of the pair modulated
        // in time so the samples are not all pure semigroup orbits.
        const std::uint64_t base = seed + 977u * s;
        InitialDataSpec ds;
        ds.preset = Preset::random;
        ds.amplitude = 1.0;
        // fixed low shell: identical samples on every grid that hosts it, and
        // quadratic products clear the dealias mask from 16^3 up
        ds.kmax = 2;
        ds.seed = base;
        Trajectory phi = heat_trajectory(generate_initial_data(grid, ds), cfg);
        ds.seed = base + 101u;
        Trajectory psi = heat_trajectory(generate_initial_data(grid, ds), cfg);
        const double w = 0.25 + 0.5 * static_cast<double>(s % 3);
        for (std::size_t k = 0; k < psi.node_count(); ++k) {
            const double mod = 1.0 + 0.5 * std::cos(w * psi.times[k]);
            psi.states[k] = mod * psi.states[k];
        }
        const double phi_x = trajectory_x_norm(phi, low);
        const double psi_x = trajectory_x_norm(psi, low);
        if (phi_x == 0.0 || psi_x == 0.0) return;  // degenerate sample skipped
        const double b_x = trajectory_x_norm(duhamel_bilinear(phi, psi, cfg), low);
        ratios[s] = b_x / (phi_x * psi_x);
    });
    return *std::max_element(ratios.begin(), ratios.end());
}

SmallnessReport smallness_report(const ExtendedState& theta0, const SolverConfig& cfg,
                                 std::uint64_t probe_seed, int probe_samples) {
    cfg.validate();
    const LPPartition part = build_partition(theta0.grid());
    const NormSpec low = cfg.norm_spec;

    SmallnessReport rep;
    rep.norm_u0 = besov_morrey_norm(theta0.u, low, part);
    rep.norm_b0 = besov_morrey_norm(theta0.b, low, part);
    rep.h_norm_j0 = cfg.params.h * besov_morrey_norm(theta0.j, low, part);

    rep.k_emp = estimate_bilinear_constant(theta0.grid(), cfg, probe_samples, probe_seed);

    // Linear-operator norm surrogate around this data's heat flow.
    const Normalization nrm{cfg.params.mu, cfg.params.h};
    const SolverConfig ncfg = nrm.rescale(cfg);
    Trajectory thetaL = heat_trajectory(nrm.forward(theta0), ncfg);
    InitialDataSpec probe;
    probe.seed = probe_seed + 7u;
    Trajectory phi = heat_trajectory(generate_initial_data(theta0.grid(), probe), ncfg);
    const double phi_x = trajectory_x_norm(phi, low);
    if (phi_x > 0.0) {
        Trajectory l = duhamel_bilinear(phi, thetaL, ncfg);
        axpy(1.0, duhamel_bilinear(thetaL, phi, ncfg), l);
        rep.m_emp = trajectory_x_norm(l, low) / phi_x;
    }

    const double m = std::min(rep.m_emp, 1.0);
    rep.radius = rep.k_emp > 0.0 ? (1.0 - m) * (1.0 - m) / (4.0 * rep.k_emp) : 0.0;
    rep.radius_global = rep.k_emp > 0.0 ? 1.0 / (4.0 * rep.k_emp) : 0.0;
    rep.delta = cfg.delta > 0.0 ? cfg.delta : 0.5 * rep.radius_global;
    rep.y_x_norm = trajectory_x_norm(thetaL, low);

    rep.local_gate = rep.h_norm_j0 < rep.delta;
    rep.global_gate = (rep.norm_u0 + rep.norm_b0 + rep.h_norm_j0) < rep.delta;
    rep.marginal = rep.radius_global > 0.0 &&
                   std::abs(rep.y_x_norm - rep.radius_global) <= 0.1 * rep.radius_global;
    return rep;
}

Trajectory march_reference(const ExtendedState& theta0, const SolverConfig& cfg) {
    cfg.validate();
    Trajectory traj(theta0.grid(), cfg.T, cfg.n_steps);
    traj.states[0] = theta0;
    const double dt = traj.dt();
    for (std::size_t k = 1; k < traj.node_count(); ++k) {
        ExtendedState step = traj.states[k - 1];
        axpy(dt, extended_rhs(traj.states[k - 1], traj.states[k - 1], cfg.params), step);
        heat_state_inplace(step, dt, cfg.params);
        traj.states[k] = std::move(step);
    }
    return traj;
}

double integral_equation_residual(const Trajectory& traj, const SolverConfig& cfg) {
    traj.check_uniform();
    SolverConfig local = cfg;
    local.T = traj.final_time();
    local.n_steps = traj.node_count();
    Trajectory defect = traj - heat_trajectory(traj.states[0], local);
    axpy(-1.0, duhamel_bilinear(traj, traj, local), defect);
    const double scale = trajectory_x_norm(traj, cfg.norm_spec);
    if (scale == 0.0) return 0.0;
    return trajectory_x_norm(defect, cfg.norm_spec) / scale;
}

}  // namespace hallmhd
