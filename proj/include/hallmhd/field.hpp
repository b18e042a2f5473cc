#pragma once

#include <array>
#include <vector>

#include "hallmhd/fft.hpp"
#include "hallmhd/grid.hpp"

namespace hallmhd {

using SpectralArray = std::vector<cplx>;
using SampleArray = std::vector<double>;

// Real scalar field on the torus, stored as Fourier coefficients indexed by
// integer wavevector (Hermitian-symmetric so the physical field is real).
// Forward transforms carry the 1/n^3 factor, so coefficient magnitudes are
// resolution-independent for a fixed smooth field.
struct ScalarField {
    GridSpec grid;
    SpectralArray coeffs;

    ScalarField() = default;
    explicit ScalarField(const GridSpec& g) : grid(g), coeffs(g.size(), cplx(0.0)) {}

    cplx& at(int ix, int iy, int iz) { return coeffs[grid.flat(ix, iy, iz)]; }
    const cplx& at(int ix, int iy, int iz) const { return coeffs[grid.flat(ix, iy, iz)]; }
};

// Real 3-component vector field, one spectral array per component.
struct VectorField {
    GridSpec grid;
    std::array<SpectralArray, 3> coeffs;

    VectorField() = default;
    explicit VectorField(const GridSpec& g) : grid(g) {
        for (auto& c : coeffs) c.assign(g.size(), cplx(0.0));
    }

    SpectralArray& comp(int d) { return coeffs[static_cast<std::size_t>(d)]; }
    const SpectralArray& comp(int d) const { return coeffs[static_cast<std::size_t>(d)]; }
};

// --- transforms -------------------------------------------------------------

ScalarField to_spectral(const SampleArray& samples, const GridSpec& grid);
VectorField to_spectral(const std::array<SampleArray, 3>& samples, const GridSpec& grid);

// Inverse transform. Audits Hermitian symmetry first (IntegrityError above
// 1e-12 relative) and discards the sub-1e-12 imaginary residue.
SampleArray to_physical(const ScalarField& f);
std::array<SampleArray, 3> to_physical(const VectorField& f);

// Unchecked inverse for internal hot paths operating on fields that preserve
// symmetry by construction (real multipliers, products of real fields).
void backward_into(const GridSpec& grid, const SpectralArray& coeffs, SampleArray& out);
void forward_scaled_into(const GridSpec& grid, const SampleArray& samples, SpectralArray& out);

// Largest |coeff(-k) - conj(coeff(k))| over all modes.
double hermitian_defect(const GridSpec& grid, const SpectralArray& coeffs);
double hermitian_defect(const VectorField& f);

// --- elementwise algebra ----------------------------------------------------

void axpy(double a, const VectorField& x, VectorField& y);  // y += a*x
VectorField operator+(const VectorField& a, const VectorField& b);
VectorField operator-(const VectorField& a, const VectorField& b);
VectorField operator*(double s, const VectorField& f);

void strip_mean(ScalarField& f);
void strip_mean(VectorField& f);

// --- discrete L2 (integral) norms via Parseval -------------------------------

double l2_norm(const ScalarField& f);
double l2_norm(const VectorField& f);
double linf_coeff(const VectorField& f);  // max |coefficient|

// Zeros every mode with |k| above the grid's spherical dealias radius.
void apply_dealias_mask(const GridSpec& grid, SpectralArray& coeffs);
void apply_dealias_mask(VectorField& f);

}  // namespace hallmhd
