#include "hallmhd/norms.hpp"

#include <algorithm>
#include <cmath>

#include "hallmhd/errors.hpp"
#include "hallmhd/parallel.hpp"

namespace hallmhd {

void NormSpec::validate() const {
    if (!(q >= 1.0 && q <= p))
        throw DomainError("norm spec: require 1 <= q <= p < infinity");
    if (!std::isfinite(p)) throw DomainError("norm spec: p must be finite");
    if (!(r == 1.0 || std::isinf(r)))
        throw DomainError("norm spec: r must be 1 or infinity");
    if (policy.center_stride < 1 || policy.min_halfwidth_cells < 1)
        throw DomainError("norm spec: invalid Morrey policy");
}

namespace {

// Circular windowed sums along one axis: out[c] = sum_{d=-w+1..w} in[c+d mod n],
// applied to every line of the cube. stride selects the axis.
void windowed_sum_axis(const GridSpec& g, int w, const std::vector<double>& in,
                       std::vector<double>& out, int axis) {
    const int n = g.n;
    const int len = 2 * w;
    const std::size_t line_stride =
        axis == 2 ? 1 : (axis == 1 ? static_cast<std::size_t>(n) : static_cast<std::size_t>(n) * n);

    // Enumerate the n^2 lines perpendicular to `axis`.
    const std::size_t n_lines = static_cast<std::size_t>(n) * n;
    parallel_for(n_lines, [&](std::size_t line) {
        std::size_t base;
        if (axis == 2) {
            base = line * n;  // (ix, iy) fixed, iz runs
        } else if (axis == 1) {
            const std::size_t ix = line / n, iz = line % n;
            base = (ix * n) * static_cast<std::size_t>(n) + iz;
        } else {
            base = line;  // (iy, iz) fixed, ix runs
        }
        thread_local std::vector<double> prefix;
        prefix.resize(static_cast<std::size_t>(n) + 1);
        prefix[0] = 0.0;
        for (int i = 0; i < n; ++i)
            prefix[static_cast<std::size_t>(i) + 1] =
                prefix[static_cast<std::size_t>(i)] + in[base + static_cast<std::size_t>(i) * line_stride];
        const double total = prefix[static_cast<std::size_t>(n)];
        for (int c = 0; c < n; ++c) {
            double s;
            if (len >= n) {
                s = total;
            } else {
                int start = c - w + 1;
                start = ((start % n) + n) % n;
                const int end = start + len;
                if (end <= n)
                    s = prefix[static_cast<std::size_t>(end)] - prefix[static_cast<std::size_t>(start)];
                else
                    s = (total - prefix[static_cast<std::size_t>(start)]) +
                        prefix[static_cast<std::size_t>(end - n)];
            }
            out[base + static_cast<std::size_t>(c) * line_stride] = s;
        }
    });
}

}  // namespace

double morrey_norm(const SampleArray& samples, const GridSpec& grid, double p, double q,
                   const MorreyPolicy& policy) {
    if (!(q >= 1.0 && q <= p)) throw DomainError("morrey_norm: require 1 <= q <= p");
    if (samples.size() != grid.size()) throw IntegrityError("morrey_norm: shape mismatch");

    const int n = grid.n;
    const double h = grid.spacing();
    const double h3 = grid.cell_volume();

    std::vector<double> density(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i)
        density[i] = std::pow(std::abs(samples[i]), q) * h3;

    std::vector<double> a(samples.size()), b(samples.size());
    double best = 0.0;
    for (int w = policy.min_halfwidth_cells; w <= n / 2; w *= 2) {
        windowed_sum_axis(grid, w, density, a, 0);
        windowed_sum_axis(grid, w, a, b, 1);
        windowed_sum_axis(grid, w, b, a, 2);

        double max_sum = 0.0;
        const int stride = policy.center_stride;
        for (int ix = 0; ix < n; ix += stride)
            for (int iy = 0; iy < n; iy += stride)
                for (int iz = 0; iz < n; iz += stride)
                    max_sum = std::max(max_sum, a[grid.flat(ix, iy, iz)]);

        const double R = w * h;
        const double value = std::pow(2.0 * R, 3.0 / p - 3.0 / q) * std::pow(max_sum, 1.0 / q);
        best = std::max(best, value);
    }
    return best;
}

double morrey_norm(const ScalarField& u, double p, double q, const MorreyPolicy& policy) {
    SampleArray s;
    backward_into(u.grid, u.coeffs, s);
    return morrey_norm(s, u.grid, p, q, policy);
}

double morrey_norm(const VectorField& u, double p, double q, const MorreyPolicy& policy) {
    double best = 0.0;
    SampleArray s;
    for (int d = 0; d < 3; ++d) {
        backward_into(u.grid, u.coeffs[static_cast<std::size_t>(d)], s);
        best = std::max(best, morrey_norm(s, u.grid, p, q, policy));
    }
    return best;
}

namespace {

bool band_is_empty(const SpectralArray& coeffs, const BandWeights& w, int band) {
    for (const auto& [idx, weight] : w.nonzero[static_cast<std::size_t>(band)])
        if (coeffs[idx] != cplx(0.0)) return false;
    return true;
}

}  // namespace

std::vector<double> band_morrey_profile(const VectorField& u, const LPPartition& part,
                                        const NormSpec& spec) {
    spec.validate();
    auto weights = band_weights(u.grid, part);
    const int bands = part.band_count();
    // Each (band, component) task owns one scratch slot; the component max is
    // reduced serially afterwards so results are schedule-independent.
    std::vector<double> scratch(static_cast<std::size_t>(bands) * 3, 0.0);
    parallel_for(scratch.size(), [&](std::size_t task) {
        const int band = static_cast<int>(task / 3);
        const int d = static_cast<int>(task % 3);
        const auto& comp = u.coeffs[static_cast<std::size_t>(d)];
        if (band_is_empty(comp, *weights, band)) return;
        SpectralArray block;
        extract_band(comp, *weights, band, block);
        SampleArray phys;
        backward_into(u.grid, block, phys);
        scratch[task] = morrey_norm(phys, u.grid, spec.p, spec.q, spec.policy);
    });
    std::vector<double> profile(static_cast<std::size_t>(bands), 0.0);
    for (std::size_t task = 0; task < scratch.size(); ++task)
        profile[task / 3] = std::max(profile[task / 3], scratch[task]);
    return profile;
}

std::vector<double> band_morrey_profile(const ScalarField& u, const LPPartition& part,
                                        const NormSpec& spec) {
    spec.validate();
    auto weights = band_weights(u.grid, part);
    const int bands = part.band_count();
    std::vector<double> profile(static_cast<std::size_t>(bands), 0.0);
    parallel_for(static_cast<std::size_t>(bands), [&](std::size_t band) {
        if (band_is_empty(u.coeffs, *weights, static_cast<int>(band))) return;
        SpectralArray block;
        extract_band(u.coeffs, *weights, static_cast<int>(band), block);
        SampleArray phys;
        backward_into(u.grid, block, phys);
        profile[band] = morrey_norm(phys, u.grid, spec.p, spec.q, spec.policy);
    });
    return profile;
}

double combine_profile(const std::vector<double>& profile, const LPPartition& part, double s,
                       double r) {
    double acc = 0.0;
    for (int b = 0; b < part.band_count(); ++b) {
        const int j = part.j_min + b;
        const double term = std::exp2(s * j) * profile[static_cast<std::size_t>(b)];
        if (r == 1.0)
            acc += term;
        else
            acc = std::max(acc, term);
    }
    return acc;
}

double besov_morrey_norm(const VectorField& u, const NormSpec& spec, const LPPartition& part) {
    return combine_profile(band_morrey_profile(u, part, spec), part, spec.s, spec.r);
}

double besov_morrey_norm(const ScalarField& u, const NormSpec& spec, const LPPartition& part) {
    return combine_profile(band_morrey_profile(u, part, spec), part, spec.s, spec.r);
}

}  // namespace hallmhd
