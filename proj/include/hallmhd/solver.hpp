#pragma once

#include <cstdint>
#include <vector>

#include "hallmhd/nonlinearity.hpp"
#include "hallmhd/trajectory.hpp"

namespace hallmhd {

struct SolverConfig {
    PhysicalParams params;
    double T = 0.5;
    std::size_t n_steps = 64;  // time node count (t_0 = 0 ... t_{n-1} = T)
    double picard_tol = 1e-10;
    int picard_max_iter = 40;
    double delta = 0.0;  // smallness threshold; 0 = calibrate from the probe radius
    NormSpec norm_spec;  // low index of the family in force (s = 3/p - 1 by default)

    void validate() const {
        params.validate();
        if (!(T > 0.0)) throw ConfigError("solver: T must be positive");
        if (n_steps < 2) throw ConfigError("solver: n_steps must be >= 2");
        if (!(picard_tol > 0.0)) throw ConfigError("solver: picard_tol must be positive");
        if (picard_max_iter < 1) throw ConfigError("solver: picard_max_iter must be >= 1");
        norm_spec.validate();
    }
};

// Heat-flow trajectory: node k holds (e^{mu t_k lap} u0, e^{nu t_k lap} B0,
// e^{nu t_k lap} J0); the linear part of the splitting.
Trajectory heat_trajectory(const ExtendedState& theta0, const SolverConfig& cfg);

// Composite-trapezoid Duhamel integral of a supplied right-hand-side
// trajectory: node k approximates int_0^{t_k} e^{(t_k - tau) lap_{mu,nu}} rhs(tau) dtau
// with exact semigroup propagation between nodes.
Trajectory integrate_duhamel(const Trajectory& rhs, const PhysicalParams& params);

// B(Phi, Psi)(t) = int_0^t e^{(t-tau) lap_{mu,nu}} Pi(Phi, Psi)(tau) dtau.
Trajectory duhamel_bilinear(const Trajectory& phi, const Trajectory& psi, const SolverConfig& cfg);

struct IterateRecord {
    int iter = 0;
    SpaceTimeNorms norms;       // of the iterate
    double diff_norm = 0.0;     // ||Theta^k - Theta^{k-1}||_X
    double contraction = 0.0;   // ratio of successive diff norms (0 when undefined)
};

struct PicardResult {
    Trajectory traj;
    int iterates = 0;
    bool converged = false;
    bool diverged = false;
    double residual = 0.0;  // ||Theta - y - B(Theta,Theta)||_X / ||Theta||_X
    std::vector<IterateRecord> series;
};

// Global construction: Theta^{k+1} = y + B(Theta^k, Theta^k), iterated on
// whole trajectories until the relative X-norm change drops below picard_tol.
// Internally normalized to mu = h = 1 (amplitude/time rescale), mapped back.
PicardResult picard_global(const ExtendedState& theta0, const SolverConfig& cfg);

struct LocalPicardResult {
    Trajectory traj;     // Theta^L + tilde
    Trajectory thetaL;   // heat flow
    Trajectory tilde;    // fixed point of tilde = ytilde + L(tilde) + B(tilde, tilde)
    double m_emp = 0.0;  // ||L(tilde)||_X / ||tilde||_X at the final iterate
    int iterates = 0;
    bool converged = false;
    bool diverged = false;
    double residual = 0.0;
    std::vector<IterateRecord> series;
};

// Local split construction around the heat flow, with the linear operator
// L(Phi) = B(Phi, Theta^L) + B(Theta^L, Phi).
LocalPicardResult picard_local(const ExtendedState& theta0, const SolverConfig& cfg);

// Max over random trajectory pairs of ||B(Phi,Psi)||_X / (||Phi||_X ||Psi||_X);
// the measured bilinear constant behind the admissibility radius.
double estimate_bilinear_constant(const GridSpec& grid, const SolverConfig& cfg, int n_samples,
                                  std::uint64_t seed);

struct SmallnessReport {
    double norm_u0 = 0.0;    // N^{3/p-1} norms in the caller's units
    double norm_b0 = 0.0;
    double h_norm_j0 = 0.0;
    double delta = 0.0;      // threshold in force (configured or calibrated)
    double k_emp = 0.0;
    double m_emp = 0.0;
    double radius = 0.0;         // (1 - m_emp)^2 / (4 k_emp), the local-split ball
    double radius_global = 0.0;  // 1 / (4 k_emp), the M = 0 ball picard_global lives in
    double y_x_norm = 0.0;       // ||heat trajectory||_X
    bool local_gate = false;   // h ||J0|| < delta
    bool global_gate = false;  // ||u0|| + ||B0|| + h ||J0|| < delta
    bool marginal = false;     // ||y||_X within 10% of the M = 0 radius
};

SmallnessReport smallness_report(const ExtendedState& theta0, const SolverConfig& cfg,
                                 std::uint64_t probe_seed = 2024, int probe_samples = 8);

// First-order exponential time differencing reference integrator:
// Theta_{k+1} = e^{dt lap}(Theta_k + dt Pi(Theta_k, Theta_k)).
Trajectory march_reference(const ExtendedState& theta0, const SolverConfig& cfg);

// ||Theta - y - B(Theta,Theta)||_X / ||Theta||_X for an arbitrary trajectory,
// with y the heat flow of the trajectory's own initial node.
double integral_equation_residual(const Trajectory& traj, const SolverConfig& cfg);

}  // namespace hallmhd
