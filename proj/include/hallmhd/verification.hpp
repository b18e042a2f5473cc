#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hallmhd/solver.hpp"

namespace hallmhd {

// Estimated operator/product inequalities. Each id names the left/right-hand
// sides whose empirical ratio the harness maximizes over random ensembles.
enum class LemmaId {
    div_vw,         // ||div(v (x) w)||_{s-1+1... at 3/p-1}  vs ||v||_{3/p} ||w||_{3/p}
    div_curlinv_w,  // ||div((curl_inv v) (x) w)||_{3/p} vs interpolation product
    div_v_curlinv,  // ||div(v (x) curl_inv w)||_{3/p} vs ||v||_{3/p+1} ||w||_{3/p-1}
    algebra,        // ||uv||_{3/p} vs ||u||_{3/p} ||v||_{3/p} on scalars
    heat,           // X-norm of the heat flow vs ||u0||_s
    duhamel,        // X-norm of the Duhamel integral vs L1-in-time source norm
    interp,         // L2-in-time mid norm vs sqrt(Linf_low * L1_high)
};

LemmaId lemma_from_string(const std::string& name);
std::string to_string(LemmaId id);

struct EstimateOptions {
    double amplitude = 1.0;
    double decay = 2.0;
    int kmax = 3;          // fixed mode shell => grid-independent draws
    double T = 0.25;       // time window for heat/duhamel/interp
    std::size_t n_nodes = 17;
};

struct EstimateReport {
    LemmaId lemma = LemmaId::div_vw;
    int n_samples = 0;
    int skipped = 0;  // degenerate (zero-denominator) samples
    double max_ratio = 0.0;
    double mean_ratio = 0.0;
    GridSpec grid;
    NormSpec spec;
    std::uint64_t seed = 0;
};

EstimateReport estimate_constant(LemmaId lemma, int n_samples, const GridSpec& grid,
                                 const NormSpec& spec, std::uint64_t seed,
                                 const EstimateOptions& options = {});

// Relative current-consistency defect per node:
//   e(t_k) = ||curl B(t_k) - J(t_k)||_{N^{s-1}} / max(||J(t_k)||_{N^{s-1}}, eps).
std::vector<double> check_j_consistency(const Trajectory& traj, const NormSpec& spec_low);

struct ScalingReport {
    double original_residual = 0.0;   // integral-equation residual of the input
    double rescaled_residual = 0.0;   // same functional on the lambda = 2 rescale
    double heat_covariance_defect = 0.0;  // rescaled trajectory vs heat flow of its own data
};

// Applies (u,B,J) -> lambda (u,B,J)(lambda x, lambda^2 t) with lambda = 2 onto
// the matched grid (same n, box L/2, times t/4) and re-evaluates the integral
// equation there. Same physical parameters: the extended system's scaling map
// leaves (mu, nu, h) untouched.
Trajectory rescale_lambda2(const Trajectory& traj);
ScalingReport check_scaling(const Trajectory& traj, const SolverConfig& cfg);

struct UniquenessReport {
    bool base_converged = false;
    std::vector<double> epsilons;
    std::vector<double> response_ratios;  // sup-in-time difference norm / eps
    double max_ratio = 0.0;
    double ratio_spread = 0.0;  // max/min over the sweep
};

// Perturbs (u0, B0) by eps times a unit random divergence-free pair (with the
// current perturbation tied to curl of the B perturbation) and measures the
// response of the converged solution. Requires consistent input data.
UniquenessReport uniqueness_probe(const ExtendedState& theta0, const std::vector<double>& epsilons,
                                  const SolverConfig& cfg, std::uint64_t seed);

struct ContractionReport {
    double k_emp = 0.0;
    double radius = 0.0;  // 1 / (4 k_emp), the M = 0 admissibility radius
    int n_samples = 0;
    std::uint64_t seed = 0;
};

ContractionReport contraction_probe(const SolverConfig& cfg, const GridSpec& grid, int n_samples,
                                    std::uint64_t seed);

}  // namespace hallmhd
