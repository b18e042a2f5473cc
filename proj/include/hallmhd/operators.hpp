#pragma once

#include <utility>

#include "hallmhd/field.hpp"

namespace hallmhd {

// Fourier-multiplier operators on torus fields. Odd multipliers (single
// factors of i*xi) zero the Nyquist planes |k_i| = n/2 so real fields stay
// real; even multipliers (Leray, heat, curl_inv.curl) act on all modes.

ScalarField divergence(const VectorField& f);
VectorField gradient(const ScalarField& f);
VectorField curl(const VectorField& f);

// Scalar times vector with scalar field spectrum interpretation:
// coefficient map f(k) -> f(k) - xi (xi . f(k)) / |xi|^2, zero mode -> 0.
VectorField leray_project(const VectorField& f);

// Inverse of curl on divergence-free mean-free fields: symbol i |xi|^-2 xi x.
VectorField curl_inv(const VectorField& j);

// Heat semigroup e^{kappa t Laplacian}: multiplies by exp(-kappa |xi|^2 t).
VectorField heat_propagate(const VectorField& f, double t, double kappa);
void heat_propagate_inplace(VectorField& f, double t, double kappa);

// Dealiased collocation products v_i w_j, kept spectral for reuse by both
// contractions div(v (x) w) and div(w (x) v).
struct ProductTensor {
    GridSpec grid;
    std::array<SpectralArray, 9> p;  // p[3*i + j] = transform of v_i * w_j
};

ProductTensor tensor_product(const VectorField& v, const VectorField& w);

// div(v (x) w)_i = sum_j d_j (v_i w_j); equals (w . grad) v for div-free w.
VectorField tensor_divergence(const ProductTensor& vw);
VectorField tensor_divergence(const VectorField& v, const VectorField& w);
// div(w (x) v) from the same product tensor (transposed contraction).
VectorField tensor_divergence_transpose(const ProductTensor& vw);

// Physical-space pointwise products, transformed back and dealiased.
VectorField pointwise_cross(const VectorField& v, const VectorField& w);
ScalarField pointwise_dot(const VectorField& v, const VectorField& w);
// (w . grad) v assembled from spectral derivatives of v and physical w.
VectorField advective_derivative(const VectorField& w, const VectorField& v);

// Pressure recovery for the velocity equation: with F = div(B (x) B) - div(u (x) u),
// Lambda solves  laplacian(Lambda) = div F  in the mean-free gauge, and the
// physical pressure is phi = Lambda - |B|^2/2. Returns {Lambda, phi}.
std::pair<ScalarField, ScalarField> recover_pressure(const VectorField& u, const VectorField& b);

}  // namespace hallmhd
