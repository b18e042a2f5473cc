#pragma once

#include <vector>

#include "hallmhd/norms.hpp"
#include "hallmhd/state.hpp"

namespace hallmhd {

// Uniformly time-sampled sequence of extended states; the discrete element of
// the space-time solution space.
struct Trajectory {
    GridSpec grid;
    std::vector<double> times;
    std::vector<ExtendedState> states;

    Trajectory() = default;
    Trajectory(const GridSpec& g, double T, std::size_t n_nodes);

    std::size_t node_count() const { return states.size(); }
    double dt() const { return times.size() > 1 ? times[1] - times[0] : 0.0; }
    double final_time() const { return times.empty() ? 0.0 : times.back(); }

    void check_uniform() const;
};

void axpy(double a, const Trajectory& x, Trajectory& y);
Trajectory operator-(const Trajectory& a, const Trajectory& b);

// Instantaneous triple norm: sum over (u, b, j) of the Besov-Morrey norm at
// index s (vector norm = component max).
double state_norm(const ExtendedState& t, const NormSpec& spec, const LPPartition& part);

struct SpaceTimeNorms {
    double linf_low = 0.0;  // sup_t of the s-index norm
    double l1_high = 0.0;   // trapezoid integral of the (s+2)-index norm
    double l2_mid = 0.0;    // sqrt of trapezoid integral of squared (s+1)-index norm
    double x_norm = 0.0;    // linf_low + l1_high
};

// Requires >= 2 nodes and spec_high.s == spec_low.s + 2.
SpaceTimeNorms spacetime_norms(const Trajectory& traj, const NormSpec& spec_low,
                               const NormSpec& spec_high);

// Convenience: x_norm for the (s, s+2) pair anchored at spec_low.
double trajectory_x_norm(const Trajectory& traj, const NormSpec& spec_low);

}  // namespace hallmhd
