#include "hallmhd/littlewood_paley.hpp"

#include <cmath>
#include <map>
#include <mutex>

#include "hallmhd/errors.hpp"
#include "hallmhd/parallel.hpp"

namespace hallmhd {

namespace {

// exp(-1/t) ramp; smooth_step is C-infinity, exactly 0 below 0 and 1 above 1.
double ramp(double t) { return t > 0.0 ? std::exp(-1.0 / t) : 0.0; }

double smooth_step(double t) {
    if (t <= 0.0) return 0.0;
    if (t >= 1.0) return 1.0;
    const double a = ramp(t);
    const double b = ramp(1.0 - t);
    return a / (a + b);
}

constexpr double kThetaInner = 0.75;        // theta == 1 up to here
constexpr double kThetaOuter = 4.0 / 3.0;   // theta == 0 from here on

}  // namespace

double LPPartition::theta(double rho) {
    return 1.0 - smooth_step((rho - kThetaInner) / (kThetaOuter - kThetaInner));
}

double LPPartition::phi(int j, double xi_abs) const {
    const double scaled = std::ldexp(xi_abs, -j);  // 2^-j |xi|
    return theta(0.5 * scaled) - theta(scaled);
}

double LPPartition::psi(double xi_abs) const { return theta(xi_abs); }

LPPartition build_partition(const GridSpec& grid) {
    grid.validate();
    const double lo = grid.xi_min();
    const double hi = grid.xi_max();
    // Truncated telescoping over [j_min, j_max] sums to
    // theta(2^-(j_max+1) xi) - theta(2^-j_min xi); this equals 1 on the grid
    // iff 4/3 * 2^j_min <= |xi|_min and 3/4 * 2^(j_max+1) >= |xi|_max.
    int j_min = static_cast<int>(std::floor(std::log2(lo / kThetaOuter)));
    while (kThetaOuter * std::ldexp(1.0, j_min) > lo) --j_min;
    int j_max = static_cast<int>(std::ceil(std::log2(hi / kThetaInner))) - 1;
    while (kThetaInner * std::ldexp(1.0, j_max + 1) < hi) ++j_max;
    if (j_max < j_min)
        throw ConfigError("build_partition: grid cannot host one full annulus");
    return LPPartition{j_min, j_max};
}

std::shared_ptr<const BandWeights> band_weights(const GridSpec& grid, const LPPartition& part) {
    struct Key {
        int n;
        double box;
        int j_min, j_max;
        bool operator<(const Key& o) const {
            if (n != o.n) return n < o.n;
            if (box != o.box) return box < o.box;
            if (j_min != o.j_min) return j_min < o.j_min;
            return j_max < o.j_max;
        }
    };
    static std::mutex mu;
    static std::map<Key, std::shared_ptr<const BandWeights>> cache;

    const Key key{grid.n, grid.box_length, part.j_min, part.j_max};
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }

    auto table = std::make_shared<BandWeights>();
    table->nonzero.resize(static_cast<std::size_t>(part.band_count()));
    const int n = grid.n;
    std::size_t idx = 0;
    for (int ix = 0; ix < n; ++ix) {
        const int kx = grid.wave_index(ix);
        for (int iy = 0; iy < n; ++iy) {
            const int ky = grid.wave_index(iy);
            for (int iz = 0; iz < n; ++iz, ++idx) {
                const int kz = grid.wave_index(iz);
                const double kk = static_cast<double>(kx) * kx +
                                  static_cast<double>(ky) * ky +
                                  static_cast<double>(kz) * kz;
                if (kk == 0.0) continue;
                const double xi_abs = grid.xi(1) * std::sqrt(kk);
                for (int j = part.j_min; j <= part.j_max; ++j) {
                    const double w = part.phi(j, xi_abs);
                    if (w != 0.0)
                        table->nonzero[static_cast<std::size_t>(j - part.j_min)]
                            .emplace_back(idx, w);
                }
            }
        }
    }

    std::lock_guard<std::mutex> lock(mu);
    auto [it, inserted] = cache.emplace(key, table);
    return it->second;
}

void extract_band(const SpectralArray& u, const BandWeights& w, int band_index, SpectralArray& out) {
    out.assign(u.size(), cplx(0.0));
    for (const auto& [idx, weight] : w.nonzero[static_cast<std::size_t>(band_index)])
        out[idx] = weight * u[idx];
}

VectorField lp_block(const VectorField& u, int j, const LPPartition& part) {
    if (!part.in_range(j)) throw DomainError("lp_block: band index out of range");
    auto weights = band_weights(u.grid, part);
    VectorField out(u.grid);
    for (int d = 0; d < 3; ++d)
        extract_band(u.coeffs[static_cast<std::size_t>(d)], *weights, j - part.j_min,
                     out.coeffs[static_cast<std::size_t>(d)]);
    return out;
}

ScalarField lp_block(const ScalarField& u, int j, const LPPartition& part) {
    if (!part.in_range(j)) throw DomainError("lp_block: band index out of range");
    auto weights = band_weights(u.grid, part);
    ScalarField out(u.grid);
    extract_band(u.coeffs, *weights, j - part.j_min, out.coeffs);
    return out;
}

BlockDecomposition decompose(const VectorField& u, const LPPartition& part) {
    BlockDecomposition d;
    d.j_min = part.j_min;
    d.j_max = part.j_max;
    d.blocks.reserve(static_cast<std::size_t>(part.band_count()));
    for (int j = part.j_min; j <= part.j_max; ++j) d.blocks.push_back(lp_block(u, j, part));
    return d;
}

}  // namespace hallmhd
