#include "hallmhd/random_fields.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "hallmhd/errors.hpp"

namespace hallmhd {

namespace {

int effective_kmax(const GridSpec& grid, int requested) {
    const int cap = grid.n / 2 - 1;
    if (requested <= 0) {
        const int r = static_cast<int>(std::floor(grid.dealias_radius()));
        return std::min(cap, r);
    }
    if (requested > cap)
        throw ConfigError("random field: kmax exceeds grid half-range");
    return requested;
}

// First nonzero component positive: one representative per Hermitian pair.
bool canonical_mode(int kx, int ky, int kz) {
    if (kx != 0) return kx > 0;
    if (ky != 0) return ky > 0;
    return kz > 0;
}

std::size_t mode_index(const GridSpec& g, int kx, int ky, int kz) {
    const int n = g.n;
    const int ix = (kx + n) % n, iy = (ky + n) % n, iz = (kz + n) % n;
    return g.flat(ix, iy, iz);
}

// Fills `comps` components with Hermitian-symmetric Gaussian coefficients.
// Draw order runs over the fixed cube in (kx, ky, kz) lexicographic order,
// independent of the grid resolution.
template <std::size_t N>
void fill_gaussian(const GridSpec& grid, const RandomFieldSpec& spec,
                   std::array<SpectralArray, N>& comps) {
    const int kmax = effective_kmax(grid, spec.kmax);
    std::mt19937_64 engine(spec.seed * 0x9e3779b97f4a7c15ull + 0x2545f4914f6cdd1dull);
    std::normal_distribution<double> normal(0.0, 1.0);

    for (auto& c : comps) c.assign(grid.size(), cplx(0.0));

    for (int kx = -kmax; kx <= kmax; ++kx) {
        for (int ky = -kmax; ky <= kmax; ++ky) {
            for (int kz = -kmax; kz <= kmax; ++kz) {
                if (!canonical_mode(kx, ky, kz)) continue;
                if (kx * kx + ky * ky + kz * kz > kmax * kmax) continue;  // spherical support
                const double kk = std::sqrt(static_cast<double>(kx) * kx +
                                            static_cast<double>(ky) * ky +
                                            static_cast<double>(kz) * kz);
                const double amp = spec.amplitude * std::pow(kk, -spec.decay);
                const std::size_t i = mode_index(grid, kx, ky, kz);
                const std::size_t ic = mode_index(grid, -kx, -ky, -kz);
                for (auto& c : comps) {
                    const double re = normal(engine);
                    const double im = normal(engine);
                    c[i] = amp * cplx(re, im);
                    c[ic] = std::conj(c[i]);
                }
            }
        }
    }
}

}  // namespace

VectorField random_divfree_field(const GridSpec& grid, const RandomFieldSpec& spec) {
    grid.validate();
    VectorField f(grid);
    fill_gaussian(grid, spec, f.coeffs);
    f = leray_project(f);
    strip_mean(f);
    return f;
}

ScalarField random_scalar_field(const GridSpec& grid, const RandomFieldSpec& spec) {
    grid.validate();
    ScalarField f(grid);
    std::array<SpectralArray, 1> tmp;
    fill_gaussian(grid, spec, tmp);
    f.coeffs = std::move(tmp[0]);
    strip_mean(f);
    return f;
}

Preset preset_from_string(const std::string& name) {
    if (name == "random") return Preset::random;
    if (name == "taylor_green") return Preset::taylor_green;
    if (name == "orszag_tang") return Preset::orszag_tang;
    throw ConfigError("unknown initial data preset: " + name);
}

std::string to_string(Preset p) {
    switch (p) {
        case Preset::random: return "random";
        case Preset::taylor_green: return "taylor_green";
        case Preset::orszag_tang: return "orszag_tang";
    }
    return "random";
}

namespace {

template <typename Fx, typename Fy, typename Fz>
VectorField trig_field(const GridSpec& g, Fx&& fx, Fy&& fy, Fz&& fz) {
    std::array<SampleArray, 3> samples;
    for (auto& s : samples) s.resize(g.size());
    const double c = 2.0 * std::numbers::pi / g.box_length;
    const double h = g.spacing();
    for (int ix = 0; ix < g.n; ++ix) {
        const double x = c * ix * h;
        for (int iy = 0; iy < g.n; ++iy) {
            const double y = c * iy * h;
            for (int iz = 0; iz < g.n; ++iz) {
                const double z = c * iz * h;
                const std::size_t m = g.flat(ix, iy, iz);
                samples[0][m] = fx(x, y, z);
                samples[1][m] = fy(x, y, z);
                samples[2][m] = fz(x, y, z);
            }
        }
    }
    return to_spectral(samples, g);
}

}  // namespace

ExtendedState generate_initial_data(const GridSpec& grid, const InitialDataSpec& spec) {
    grid.validate();
    if (spec.amplitude < 0.0) throw ConfigError("initial data: amplitude must be >= 0");

    ExtendedState out(grid);
    const double a = spec.amplitude;
    switch (spec.preset) {
        case Preset::random: {
            out.u = random_divfree_field(grid, {spec.seed, a, spec.decay, spec.kmax});
            out.b = random_divfree_field(grid, {spec.seed + 1, a, spec.decay, spec.kmax});
            break;
        }
        case Preset::taylor_green: {
            out.u = trig_field(
                grid, [a](double x, double y, double z) { return a * std::cos(x) * std::sin(y) * std::sin(z); },
                [a](double x, double y, double z) { return -a * std::sin(x) * std::cos(y) * std::sin(z); },
                [](double, double, double) { return 0.0; });
            out.b = trig_field(
                grid, [](double, double, double) { return 0.0; },
                [a](double x, double y, double z) { return a * std::sin(x) * std::cos(y) * std::sin(z); },
                [a](double x, double y, double z) { return -a * std::sin(x) * std::sin(y) * std::cos(z); });
            break;
        }
        case Preset::orszag_tang: {
            out.u = trig_field(
                grid, [a](double, double y, double) { return -a * std::sin(y); },
                [a](double x, double, double) { return a * std::sin(x); },
                [a](double x, double, double) { return 0.1 * a * std::cos(x); });
            out.b = trig_field(
                grid, [a](double, double y, double) { return -a * std::sin(y); },
                [a](double x, double, double) { return a * std::sin(2.0 * x); },
                [a](double, double y, double) { return 0.1 * a * std::cos(y); });
            break;
        }
    }

    out.u = leray_project(out.u);
    out.b = leray_project(out.b);
    strip_mean(out.u);
    strip_mean(out.b);
    out.j = curl(out.b);  // consistency by construction
    return out;
}

}  // namespace hallmhd
