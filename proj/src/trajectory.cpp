#include "hallmhd/trajectory.hpp"

#include <algorithm>
#include <cmath>

#include "hallmhd/parallel.hpp"

namespace hallmhd {

Trajectory::Trajectory(const GridSpec& g, double T, std::size_t n_nodes) : grid(g) {
    if (n_nodes < 2) throw ConfigError("trajectory: need at least 2 time nodes");
    if (!(T > 0.0)) throw ConfigError("trajectory: final time must be positive");
    times.resize(n_nodes);
    const double dt = T / static_cast<double>(n_nodes - 1);
    for (std::size_t k = 0; k < n_nodes; ++k) times[k] = dt * static_cast<double>(k);
    times.back() = T;
    states.assign(n_nodes, ExtendedState(g));
}

void Trajectory::check_uniform() const {
    if (times.size() != states.size() || times.size() < 2)
        throw IntegrityError("trajectory: malformed node sequence");
    const double dt0 = times[1] - times[0];
    for (std::size_t k = 1; k < times.size(); ++k) {
        if (std::abs((times[k] - times[k - 1]) - dt0) > 1e-12 * std::max(1.0, std::abs(dt0)))
            throw IntegrityError("trajectory: nonuniform time step");
        if (states[k].grid() != grid)
            throw IntegrityError("trajectory: node grid mismatch");
    }
}

void axpy(double a, const Trajectory& x, Trajectory& y) {
    if (x.node_count() != y.node_count() || x.grid != y.grid)
        throw IntegrityError("trajectory axpy: shape mismatch");
    for (std::size_t k = 0; k < x.node_count(); ++k) axpy(a, x.states[k], y.states[k]);
}

Trajectory operator-(const Trajectory& a, const Trajectory& b) {
    Trajectory out = a;
    axpy(-1.0, b, out);
    return out;
}

double state_norm(const ExtendedState& t, const NormSpec& spec, const LPPartition& part) {
    double acc = 0.0;
    for (int i = 0; i < 3; ++i)
        acc += besov_morrey_norm(t.slot(i), spec, part);
    return acc;
}

namespace {

double trapezoid(const std::vector<double>& f, double dt) {
    if (f.size() < 2) return 0.0;
    double s = 0.5 * (f.front() + f.back());
    for (std::size_t k = 1; k + 1 < f.size(); ++k) s += f[k];
    return s * dt;
}

}  // namespace

SpaceTimeNorms spacetime_norms(const Trajectory& traj, const NormSpec& spec_low,
                               const NormSpec& spec_high) {
    traj.check_uniform();
    if (std::abs(spec_high.s - (spec_low.s + 2.0)) > 1e-12)
        throw DomainError("spacetime_norms: spec_high.s must equal spec_low.s + 2");
    const LPPartition part = build_partition(traj.grid);
    const std::size_t n = traj.node_count();

    std::vector<double> low(n, 0.0), mid(n, 0.0), high(n, 0.0);
    parallel_for(n, [&](std::size_t k) {
        double n_low = 0.0, n_mid = 0.0, n_high = 0.0;
        for (int i = 0; i < 3; ++i) {
            const auto profile = band_morrey_profile(traj.states[k].slot(i), part, spec_low);
            n_low += combine_profile(profile, part, spec_low.s, spec_low.r);
            n_mid += combine_profile(profile, part, spec_low.s + 1.0, spec_low.r);
            n_high += combine_profile(profile, part, spec_high.s, spec_high.r);
        }
        low[k] = n_low;
        mid[k] = n_mid;
        high[k] = n_high;
    });

    SpaceTimeNorms out;
    out.linf_low = *std::max_element(low.begin(), low.end());
    out.l1_high = trapezoid(high, traj.dt());
    std::vector<double> mid2(n);
    for (std::size_t k = 0; k < n; ++k) mid2[k] = mid[k] * mid[k];
    out.l2_mid = std::sqrt(trapezoid(mid2, traj.dt()));
    out.x_norm = out.linf_low + out.l1_high;
    return out;
}

double trajectory_x_norm(const Trajectory& traj, const NormSpec& spec_low) {
    return spacetime_norms(traj, spec_low, spec_low.with_s(spec_low.s + 2.0)).x_norm;
}

}  // namespace hallmhd
