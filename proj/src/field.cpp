#include "hallmhd/field.hpp"

#include <algorithm>
#include <cmath>

#include "hallmhd/errors.hpp"
#include "hallmhd/parallel.hpp"

namespace hallmhd {

void forward_scaled_into(const GridSpec& grid, const SampleArray& samples, SpectralArray& out) {
    const std::size_t sz = grid.size();
    SpectralArray in(sz);
    for (std::size_t i = 0; i < sz; ++i) in[i] = cplx(samples[i], 0.0);
    out.resize(sz);
    fft::forward(grid.n, in.data(), out.data());
    const double scale = 1.0 / static_cast<double>(sz);
    for (auto& c : out) c *= scale;
}

void backward_into(const GridSpec& grid, const SpectralArray& coeffs, SampleArray& out) {
    const std::size_t sz = grid.size();
    SpectralArray tmp(sz);
    fft::backward(grid.n, coeffs.data(), tmp.data());
    out.resize(sz);
    for (std::size_t i = 0; i < sz; ++i) out[i] = tmp[i].real();
}

ScalarField to_spectral(const SampleArray& samples, const GridSpec& grid) {
    grid.validate();
    if (samples.size() != grid.size())
        throw ConfigError("to_spectral: sample array shape does not match grid");
    ScalarField f(grid);
    forward_scaled_into(grid, samples, f.coeffs);
    return f;
}

VectorField to_spectral(const std::array<SampleArray, 3>& samples, const GridSpec& grid) {
    grid.validate();
    for (const auto& s : samples)
        if (s.size() != grid.size())
            throw ConfigError("to_spectral: sample array shape does not match grid");
    VectorField f(grid);
    parallel_for(3, [&](std::size_t d) { forward_scaled_into(grid, samples[d], f.coeffs[d]); });
    return f;
}

double hermitian_defect(const GridSpec& grid, const SpectralArray& coeffs) {
    const int n = grid.n;
    double worst = 0.0;
    for (int ix = 0; ix < n; ++ix) {
        const int jx = (n - ix) % n;
        for (int iy = 0; iy < n; ++iy) {
            const int jy = (n - iy) % n;
            for (int iz = 0; iz < n; ++iz) {
                const int jz = (n - iz) % n;
                const cplx d = coeffs[grid.flat(ix, iy, iz)] -
                               std::conj(coeffs[grid.flat(jx, jy, jz)]);
                worst = std::max(worst, std::abs(d));
            }
        }
    }
    return worst;
}

double hermitian_defect(const VectorField& f) {
    double worst = 0.0;
    for (int d = 0; d < 3; ++d)
        worst = std::max(worst, hermitian_defect(f.grid, f.coeffs[d]));
    return worst;
}

namespace {

void check_symmetry(const GridSpec& grid, const SpectralArray& coeffs) {
    double mag = 0.0;
    for (const auto& c : coeffs) mag = std::max(mag, std::abs(c));
    const double defect = hermitian_defect(grid, coeffs);
    if (defect > 1e-12 * std::max(mag, 1e-300))
        throw IntegrityError("to_physical: Hermitian symmetry violated");
}

}  // namespace

SampleArray to_physical(const ScalarField& f) {
    check_symmetry(f.grid, f.coeffs);
    SampleArray out;
    backward_into(f.grid, f.coeffs, out);
    return out;
}

std::array<SampleArray, 3> to_physical(const VectorField& f) {
    for (int d = 0; d < 3; ++d) check_symmetry(f.grid, f.coeffs[d]);
    std::array<SampleArray, 3> out;
    parallel_for(3, [&](std::size_t d) { backward_into(f.grid, f.coeffs[d], out[d]); });
    return out;
}

void axpy(double a, const VectorField& x, VectorField& y) {
    if (x.grid != y.grid) throw IntegrityError("axpy: grid mismatch");
    for (int d = 0; d < 3; ++d) {
        const auto& xs = x.coeffs[d];
        auto& ys = y.coeffs[d];
        for (std::size_t i = 0; i < xs.size(); ++i) ys[i] += a * xs[i];
    }
}

VectorField operator+(const VectorField& a, const VectorField& b) {
    VectorField out = a;
    axpy(1.0, b, out);
    return out;
}

VectorField operator-(const VectorField& a, const VectorField& b) {
    VectorField out = a;
    axpy(-1.0, b, out);
    return out;
}

VectorField operator*(double s, const VectorField& f) {
    VectorField out = f;
    for (auto& comp : out.coeffs)
        for (auto& c : comp) c *= s;
    return out;
}

void strip_mean(ScalarField& f) { f.coeffs[0] = cplx(0.0); }

void strip_mean(VectorField& f) {
    for (auto& comp : f.coeffs) comp[0] = cplx(0.0);
}

double l2_norm(const ScalarField& f) {
    double s = 0.0;
    for (const auto& c : f.coeffs) s += std::norm(c);
    return std::sqrt(s * f.grid.box_length * f.grid.box_length * f.grid.box_length);
}

double l2_norm(const VectorField& f) {
    double s = 0.0;
    for (const auto& comp : f.coeffs)
        for (const auto& c : comp) s += std::norm(c);
    return std::sqrt(s * f.grid.box_length * f.grid.box_length * f.grid.box_length);
}

double linf_coeff(const VectorField& f) {
    double m = 0.0;
    for (const auto& comp : f.coeffs)
        for (const auto& c : comp) m = std::max(m, std::abs(c));
    return m;
}

void apply_dealias_mask(const GridSpec& grid, SpectralArray& coeffs) {
    const int n = grid.n;
    const double r2 = grid.dealias_radius() * grid.dealias_radius();
    for (int ix = 0; ix < n; ++ix) {
        const double kx = grid.wave_index(ix);
        for (int iy = 0; iy < n; ++iy) {
            const double ky = grid.wave_index(iy);
            for (int iz = 0; iz < n; ++iz) {
                const double kz = grid.wave_index(iz);
                if (kx * kx + ky * ky + kz * kz > r2)
                    coeffs[grid.flat(ix, iy, iz)] = cplx(0.0);
            }
        }
    }
}

void apply_dealias_mask(VectorField& f) {
    for (auto& comp : f.coeffs) apply_dealias_mask(f.grid, comp);
}

}  // namespace hallmhd
