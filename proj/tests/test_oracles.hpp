// Test-side oracles, deliberately independent of the library's FFT path:
// direct DFT sums and direct trig-interpolant evaluation over the sparse set
// of nonzero modes. Slow (O(modes * n^3)) but exact for low-mode fields.
#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include "hallmhd/field.hpp"
#include "hallmhd/grid.hpp"

namespace oracle {

using hallmhd::cplx;
using hallmhd::GridSpec;
using hallmhd::SampleArray;
using hallmhd::SpectralArray;
using hallmhd::VectorField;

// (1/n^3) sum_x u(x) e^{-i xi_k . x} by direct summation.
inline cplx direct_dft_coefficient(const SampleArray& samples, const GridSpec& g, int kx, int ky,
                                   int kz) {
    const int n = g.n;
    cplx acc(0.0);
    const double c = 2.0 * std::numbers::pi / n;
    for (int ix = 0; ix < n; ++ix)
        for (int iy = 0; iy < n; ++iy)
            for (int iz = 0; iz < n; ++iz) {
                const double phase = -c * (kx * ix + ky * iy + kz * iz);
                acc += samples[g.flat(ix, iy, iz)] * cplx(std::cos(phase), std::sin(phase));
            }
    return acc / static_cast<double>(g.size());
}

struct Mode {
    int kx, ky, kz;
    cplx coeff;
};

inline std::vector<Mode> nonzero_modes(const GridSpec& g, const SpectralArray& coeffs) {
    std::vector<Mode> modes;
    const int n = g.n;
    for (int ix = 0; ix < n; ++ix)
        for (int iy = 0; iy < n; ++iy)
            for (int iz = 0; iz < n; ++iz) {
                const cplx c = coeffs[g.flat(ix, iy, iz)];
                if (c != cplx(0.0))
                    modes.push_back({g.wave_index(ix), g.wave_index(iy), g.wave_index(iz), c});
            }
    return modes;
}

// Evaluates sum_k (i xi_d)^order c_k e^{i xi_k . x} on the grid by direct
// mode summation; order 0 reproduces the field, order 1 its d-derivative.
inline SampleArray direct_eval_derivative(const GridSpec& g, const SpectralArray& coeffs, int d,
                                          int order) {
    const auto modes = nonzero_modes(g, coeffs);
    SampleArray out(g.size(), 0.0);
    const double step = 2.0 * std::numbers::pi / g.n;
    for (const auto& m : modes) {
        const double xi_d = g.xi(d == 0 ? m.kx : (d == 1 ? m.ky : m.kz));
        cplx factor = m.coeff;
        for (int o = 0; o < order; ++o) factor *= cplx(0.0, xi_d);
        for (int ix = 0; ix < g.n; ++ix)
            for (int iy = 0; iy < g.n; ++iy)
                for (int iz = 0; iz < g.n; ++iz) {
                    const double phase = step * (m.kx * ix + m.ky * iy + m.kz * iz);
                    out[g.flat(ix, iy, iz)] +=
                        (factor * cplx(std::cos(phase), std::sin(phase))).real();
                }
    }
    return out;
}

inline SampleArray direct_eval(const GridSpec& g, const SpectralArray& coeffs) {
    return direct_eval_derivative(g, coeffs, 0, 0);
}

inline double max_abs(const SampleArray& a) {
    double m = 0.0;
    for (double v : a) m = std::max(m, std::abs(v));
    return m;
}

inline double max_abs_diff(const SampleArray& a, const SampleArray& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

inline double rel_l2_diff(const VectorField& a, const VectorField& b) {
    const VectorField d = a - b;
    const double scale = std::max(hallmhd::l2_norm(a), hallmhd::l2_norm(b));
    return scale > 0.0 ? hallmhd::l2_norm(d) / scale : 0.0;
}

}  // namespace oracle
