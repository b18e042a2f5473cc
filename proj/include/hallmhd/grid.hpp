#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>

#include "hallmhd/errors.hpp"

namespace hallmhd {

// Periodic torus [0, L]^3 sampled on n points per axis. Spectral indexing
// uses integer wavevectors k in (-n/2, n/2] per axis; the angular wavenumber
// is xi = 2*pi*k/L.
struct GridSpec {
    int n = 0;
    double box_length = 2.0 * std::numbers::pi;
    double dealias_fraction = 2.0 / 3.0;

    GridSpec() = default;
    GridSpec(int n_per_axis, double length, double dealias = 2.0 / 3.0)
        : n(n_per_axis), box_length(length), dealias_fraction(dealias) {
        validate();
    }

    void validate() const {
        if (n < 8 || (n & (n - 1)) != 0)
            throw ConfigError("grid: n_per_axis must be a power of two >= 8");
        if (!(box_length > 0.0))
            throw ConfigError("grid: box_length must be positive");
        if (!(dealias_fraction > 0.0 && dealias_fraction <= 1.0))
            throw ConfigError("grid: dealias_fraction must lie in (0, 1]");
    }

    std::size_t size() const { return static_cast<std::size_t>(n) * n * n; }
    double spacing() const { return box_length / n; }
    double cell_volume() const { double h = spacing(); return h * h * h; }

    // Integer wavevector component for storage index i in [0, n).
    int wave_index(int i) const { return i <= n / 2 ? i : i - n; }
    double xi(int k) const { return 2.0 * std::numbers::pi * k / box_length; }

    std::size_t flat(int ix, int iy, int iz) const {
        return (static_cast<std::size_t>(ix) * n + iy) * n + iz;
    }

    // Smallest and largest nonzero |xi| resolvable on the grid.
    double xi_min() const { return xi(1); }
    double xi_max() const { return xi(n / 2) * std::sqrt(3.0); }

    // Spherical dealias cutoff in integer-wavevector units.
    double dealias_radius() const { return dealias_fraction * (n / 2); }

    bool operator==(const GridSpec& o) const {
        return n == o.n && box_length == o.box_length &&
               dealias_fraction == o.dealias_fraction;
    }
    bool operator!=(const GridSpec& o) const { return !(*this == o); }
};

}  // namespace hallmhd
