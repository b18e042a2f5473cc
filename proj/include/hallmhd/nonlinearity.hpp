#pragma once

#include "hallmhd/state.hpp"

namespace hallmhd {

// Bilinear maps of the reformulated extended system.
//
//   pi_a(v, w) = 1/2 P( div(v (x) w) + div(w (x) v) )        (symmetric)
//   pi_b(v, w) = div(v (x) w) - div(w (x) v)                 (antisymmetric)
//
// and the full nonlinearity
//
//   Pi(Phi, Psi) = ( pi_a(Phi_2, Psi_2) - pi_a(Phi_1, Psi_1),
//                    pi_b(Phi_2, h Psi_3 - Psi_1),
//                    curl pi_b(curl_inv Phi_3, h Psi_3 - Psi_1) ).
//
// Both contractions of pi_a / pi_b reuse one dealiased product tensor, so
// pi_b equals curl(v x w) identically on the grid (same product arrays, same
// derivative weights) and its divergence vanishes to rounding.

VectorField pi_a(const VectorField& v, const VectorField& w);
VectorField pi_b(const VectorField& v, const VectorField& w);

ExtendedState extended_rhs(const ExtendedState& phi, const ExtendedState& psi,
                           const PhysicalParams& params);

// Residual of the ORIGINAL Hall-MHD formulation against a supplied time
// derivative, used to certify that the reformulated right-hand side solves
// the system it came from. Evaluates, in L2 relative to the term magnitudes,
//   d_t u + P[(u.grad)u] - mu lap u - P[J x B]          (velocity equation)
//   d_t B - curl((u - hJ) x B) - nu lap B               (induction equation)
// and returns the larger of the two relative residuals.
double original_rhs_residual(const ExtendedState& theta, const ExtendedState& dtheta_dt,
                             const PhysicalParams& params);

}  // namespace hallmhd
