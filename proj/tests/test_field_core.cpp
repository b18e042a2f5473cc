#include "doctest.h"

#include <cmath>
#include <numbers>

#include "hallmhd/field.hpp"
#include "hallmhd/operators.hpp"
#include "hallmhd/random_fields.hpp"
#include "test_oracles.hpp"

using namespace hallmhd;

namespace {

const GridSpec grid16(16, 2.0 * std::numbers::pi);

SampleArray sample_cos_x(const GridSpec& g) {
    SampleArray s(g.size());
    for (int ix = 0; ix < g.n; ++ix)
        for (int iy = 0; iy < g.n; ++iy)
            for (int iz = 0; iz < g.n; ++iz)
                s[g.flat(ix, iy, iz)] =
                    std::cos(2.0 * std::numbers::pi * ix / g.n);
    return s;
}

}  // namespace

TEST_CASE("grid spec validation") {
    CHECK_THROWS_AS(GridSpec(7, 1.0), ConfigError);
    CHECK_THROWS_AS(GridSpec(12, 1.0), ConfigError);
    CHECK_THROWS_AS(GridSpec(16, -1.0), ConfigError);
    CHECK_THROWS_AS(GridSpec(16, 1.0, 1.5), ConfigError);
    CHECK_NOTHROW(GridSpec(8, 2.0 * std::numbers::pi));
}

TEST_CASE("to_spectral: zero samples give zero coefficients") {
    std::array<SampleArray, 3> samples;
    for (auto& s : samples) s.assign(grid16.size(), 0.0);
    const VectorField f = to_spectral(samples, grid16);
    CHECK(linf_coeff(f) == 0.0);
}

TEST_CASE("to_spectral: cos mode lands on k = +-(1,0,0) with the DFT-sum value") {
    std::array<SampleArray, 3> samples;
    samples[0] = sample_cos_x(grid16);
    samples[1].assign(grid16.size(), 0.0);
    samples[2].assign(grid16.size(), 0.0);
    const VectorField f = to_spectral(samples, grid16);

    const cplx plus = f.coeffs[0][grid16.flat(1, 0, 0)];
    const cplx minus = f.coeffs[0][grid16.flat(grid16.n - 1, 0, 0)];
    CHECK(std::abs(plus - cplx(0.5)) < 1e-14);
    CHECK(std::abs(minus - cplx(0.5)) < 1e-14);

    // direct DFT sum oracle agrees
    const cplx oracle_plus = oracle::direct_dft_coefficient(samples[0], grid16, 1, 0, 0);
    CHECK(std::abs(plus - oracle_plus) < 1e-12);

    // exactly two nonzero coefficients
    int nonzero = 0;
    for (const auto& c : f.coeffs[0])
        if (std::abs(c) > 1e-13) ++nonzero;
    CHECK(nonzero == 2);
    for (const auto& c : f.coeffs[1]) CHECK(std::abs(c) < 1e-14);
}

TEST_CASE("to_spectral: random real samples produce Hermitian-symmetric coefficients") {
    const VectorField f = random_divfree_field(grid16, {11u, 1.0});
    const auto phys = to_physical(f);
    const VectorField g = to_spectral(phys, grid16);
    CHECK(hermitian_defect(g) < 1e-13);
}

TEST_CASE("to_physical: round trip is the identity within 1e-12") {
    for (int n : {8, 16, 32}) {
        const GridSpec g(n, 2.0 * std::numbers::pi);
        const VectorField f = random_divfree_field(g, {static_cast<std::uint64_t>(n), 1.0});
        const auto phys = to_physical(f);
        const VectorField back = to_spectral(phys, g);
        CHECK(oracle::rel_l2_diff(f, back) < 1e-12);
    }
}

TEST_CASE("to_physical: two-mode field recovers cos pointwise") {
    VectorField f(grid16);
    f.coeffs[0][grid16.flat(1, 0, 0)] = cplx(0.5);
    f.coeffs[0][grid16.flat(grid16.n - 1, 0, 0)] = cplx(0.5);
    const auto phys = to_physical(f);
    const SampleArray expect = sample_cos_x(grid16);
    CHECK(oracle::max_abs_diff(phys[0], expect) < 1e-12);
}

TEST_CASE("to_physical: symmetry violation raises integrity error") {
    VectorField f(grid16);
    f.coeffs[0][grid16.flat(1, 2, 3)] = cplx(1.0, 0.3);  // no conjugate partner
    CHECK_THROWS_AS(to_physical(f), IntegrityError);
}

TEST_CASE("zero fields map to zero under every operator") {
    const VectorField zero(grid16);
    CHECK(l2_norm(divergence(zero)) == 0.0);
    CHECK(l2_norm(curl(zero)) == 0.0);
    CHECK(l2_norm(leray_project(zero)) == 0.0);
    CHECK(l2_norm(heat_propagate(zero, 1.0, 1.0)) == 0.0);
    const auto phys = to_physical(zero);
    for (const auto& comp : phys)
        CHECK(oracle::max_abs(comp) == 0.0);
}

TEST_CASE("divergence: sine field matches the symbolic derivative") {
    // f = (sin(x), 0, 0) -> div f = cos(x)
    VectorField f(grid16);
    f.coeffs[0][grid16.flat(1, 0, 0)] = cplx(0.0, -0.5);
    f.coeffs[0][grid16.flat(grid16.n - 1, 0, 0)] = cplx(0.0, 0.5);
    const ScalarField d = divergence(f);
    SampleArray phys;
    backward_into(grid16, d.coeffs, phys);
    const SampleArray expect = sample_cos_x(grid16);
    CHECK(oracle::max_abs_diff(phys, expect) < 1e-12);
}

TEST_CASE("divergence of a curl vanishes") {
    const VectorField g = random_divfree_field(grid16, {21u, 1.0});
    const ScalarField d = divergence(curl(g));
    double m = 0.0;
    for (const auto& c : d.coeffs) m = std::max(m, std::abs(c));
    CHECK(m < 1e-12 * grid16.xi_max() * grid16.xi_max() * std::max(linf_coeff(g), 1e-30));
    CHECK(l2_norm(d) < 1e-12);
}

TEST_CASE("curl: single sine mode matches the symbolic result") {
    // f = (0, sin(x), 0) -> curl f = (0, 0, cos(x))
    VectorField f(grid16);
    f.coeffs[1][grid16.flat(1, 0, 0)] = cplx(0.0, -0.5);
    f.coeffs[1][grid16.flat(grid16.n - 1, 0, 0)] = cplx(0.0, 0.5);
    const VectorField c = curl(f);
    const auto phys = to_physical(c);
    const SampleArray expect = sample_cos_x(grid16);
    CHECK(oracle::max_abs(phys[0]) < 1e-13);
    CHECK(oracle::max_abs(phys[1]) < 1e-13);
    CHECK(oracle::max_abs_diff(phys[2], expect) < 1e-12);
}

TEST_CASE("curl of a gradient vanishes") {
    const ScalarField s = random_scalar_field(grid16, {31u, 1.0});
    const VectorField c = curl(gradient(s));
    CHECK(l2_norm(c) < 1e-12);
}

TEST_CASE("leray projector fixes divergence-free fields and kills gradients") {
    const VectorField f = random_divfree_field(grid16, {41u, 1.0});
    CHECK(oracle::rel_l2_diff(leray_project(f), f) < 1e-12);

    const VectorField grad = gradient(random_scalar_field(grid16, {43u, 1.0}));
    CHECK(l2_norm(leray_project(grad)) < 1e-12 * std::max(l2_norm(grad), 1e-30));
}

TEST_CASE("leray projector is idempotent, divergence-annihilating and L2-non-expansive") {
    const VectorField a = random_divfree_field(grid16, {51u, 1.0});
    const VectorField b = gradient(random_scalar_field(grid16, {53u, 1.0}));
    const VectorField f = a + b;  // generic field: solenoidal + gradient parts
    const VectorField p = leray_project(f);
    CHECK(oracle::rel_l2_diff(leray_project(p), p) < 1e-12);
    CHECK(l2_norm(divergence(p)) < 1e-10 * std::max(1.0, l2_norm(p)));
    CHECK(l2_norm(p) <= l2_norm(f) * (1.0 + 1e-14));
    CHECK(std::abs(p.coeffs[0][0]) == 0.0);
}

TEST_CASE("curl_inv inverts curl on divergence-free mean-free fields") {
    const VectorField b = random_divfree_field(grid16, {61u, 1.0});
    const VectorField j = curl(b);
    CHECK(oracle::rel_l2_diff(curl_inv(j), b) < 1e-10);
    CHECK(oracle::rel_l2_diff(curl(curl_inv(j)), j) < 1e-10);
    // curl_inv output is always divergence-free
    CHECK(l2_norm(divergence(curl_inv(j))) < 1e-12 * std::max(1.0, l2_norm(j)));
    // zero in, zero out
    CHECK(l2_norm(curl_inv(VectorField(grid16))) == 0.0);
}

TEST_CASE("heat_propagate: identity at t = 0, domain error for t < 0") {
    const VectorField f = random_divfree_field(grid16, {71u, 1.0});
    CHECK(oracle::rel_l2_diff(heat_propagate(f, 0.0, 1.0), f) == 0.0);
    CHECK_THROWS_AS(heat_propagate(f, -1.0, 1.0), DomainError);
}

TEST_CASE("heat_propagate: semigroup law within 1e-12") {
    const VectorField f = random_divfree_field(grid16, {73u, 1.0});
    const VectorField one = heat_propagate(heat_propagate(f, 0.3, 0.7), 0.45, 0.7);
    const VectorField two = heat_propagate(f, 0.75, 0.7);
    CHECK(oracle::rel_l2_diff(one, two) < 1e-12);
}

TEST_CASE("heat_propagate: single-mode closed form") {
    VectorField f(grid16);
    f.coeffs[1][grid16.flat(1, 0, 0)] = cplx(0.5);
    f.coeffs[1][grid16.flat(grid16.n - 1, 0, 0)] = cplx(0.5);
    const VectorField g = heat_propagate(f, 1.0, 1.0);
    const double factor = std::exp(-std::pow(2.0 * std::numbers::pi / grid16.box_length, 2));
    CHECK(std::abs(g.coeffs[1][grid16.flat(1, 0, 0)] - cplx(0.5 * factor)) < 1e-15);
}

TEST_CASE("heat_propagate is an L2 contraction") {
    const VectorField f = random_divfree_field(grid16, {79u, 1.0});
    for (double t : {0.01, 0.1, 1.0, 10.0})
        CHECK(l2_norm(heat_propagate(f, t, 1.3)) <= l2_norm(f) * (1.0 + 1e-14));
}

TEST_CASE("tensor_divergence: zero argument gives zero") {
    const VectorField v = random_divfree_field(grid16, {81u, 1.0});
    const VectorField zero(grid16);
    CHECK(l2_norm(tensor_divergence(v, zero)) == 0.0);
    CHECK(l2_norm(tensor_divergence(zero, v)) == 0.0);
}

TEST_CASE("tensor_divergence equals the advective derivative for div-free w") {
    // low-mode pair so the dealias mask removes nothing and products are exact
    const RandomFieldSpec spec_v{83u, 1.0, 2.0, 2};
    const RandomFieldSpec spec_w{89u, 1.0, 2.0, 2};
    const VectorField v = random_divfree_field(grid16, spec_v);
    const VectorField w = random_divfree_field(grid16, spec_w);

    const VectorField lhs = tensor_divergence(v, w);

    // pointwise physical-space oracle: w_j d_j v_i via direct mode sums
    const auto wp = to_physical(w);
    VectorField rhs(grid16);
    for (int i = 0; i < 3; ++i) {
        SampleArray acc(grid16.size(), 0.0);
        for (int j = 0; j < 3; ++j) {
            const SampleArray dvi = oracle::direct_eval_derivative(grid16, v.coeffs[i], j, 1);
            for (std::size_t m = 0; m < acc.size(); ++m) acc[m] += wp[j][m] * dvi[m];
        }
        forward_scaled_into(grid16, acc, rhs.coeffs[i]);
    }
    CHECK(oracle::rel_l2_diff(lhs, rhs) < 1e-10);
}

TEST_CASE("curl identity: curl(w x v) = div(w (x) v) - div(v (x) w)") {
    const VectorField v = random_divfree_field(grid16, {91u, 1.0, 2.0, 2});
    const VectorField w = random_divfree_field(grid16, {97u, 1.0, 2.0, 2});
    const VectorField lhs = curl(pointwise_cross(w, v));
    const ProductTensor t = tensor_product(w, v);
    const VectorField rhs = tensor_divergence(t) - tensor_divergence_transpose(t);
    CHECK(oracle::rel_l2_diff(lhs, rhs) < 1e-10);
}

TEST_CASE("recover_pressure: zero fields give zero Lambda") {
    const VectorField zero(grid16);
    const auto [lambda, phi] = recover_pressure(zero, zero);
    CHECK(l2_norm(lambda) == 0.0);
}

TEST_CASE("recover_pressure: Helmholtz decomposition residual") {
    const VectorField u = random_divfree_field(grid16, {101u, 1.0, 2.0, 3});
    const VectorField b = random_divfree_field(grid16, {103u, 1.0, 2.0, 3});
    const auto [lambda, phi] = recover_pressure(u, b);

    const VectorField f = tensor_divergence(b, b) - tensor_divergence(u, u);
    const VectorField resid = gradient(lambda) + leray_project(f) - f;
    CHECK(l2_norm(resid) < 1e-10 * std::max(1.0, l2_norm(f)));
}

TEST_CASE("recover_pressure: Beltrami B with zero u gives phi = -|B|^2/2 + Lambda") {
    // B = (sin z, cos z, 0): curl B = B, (B.grad)B = 0, so F = 0 and Lambda = 0.
    VectorField b(grid16);
    const std::size_t up = grid16.flat(0, 0, 1), dn = grid16.flat(0, 0, grid16.n - 1);
    b.coeffs[0][up] = cplx(0.0, -0.5);
    b.coeffs[0][dn] = cplx(0.0, 0.5);
    b.coeffs[1][up] = cplx(0.5);
    b.coeffs[1][dn] = cplx(0.5);
    const VectorField zero(grid16);
    const auto [lambda, phi] = recover_pressure(zero, b);
    CHECK(l2_norm(lambda) < 1e-12);

    // |B|^2 = 1, so phi = -1/2 everywhere (mean mode carries it all)
    SampleArray phys;
    backward_into(grid16, phi.coeffs, phys);
    SampleArray expect(grid16.size(), -0.5);
    CHECK(oracle::max_abs_diff(phys, expect) < 1e-12);
}

TEST_CASE("vector identity (rot w x w): pointwise within 1e-9 on dealiased low modes") {
    const GridSpec g32(32, 2.0 * std::numbers::pi);
    const VectorField w = random_divfree_field(g32, {111u, 1.0, 2.0, 4});

    // (curl w) x w
    const VectorField lhs = pointwise_cross(curl(w), w);
    // (w.grad)w - grad(|w|^2/2)
    const ScalarField w2 = pointwise_dot(w, w);
    ScalarField half(g32);
    for (std::size_t i = 0; i < half.coeffs.size(); ++i) half.coeffs[i] = 0.5 * w2.coeffs[i];
    const VectorField rhs = advective_derivative(w, w) - gradient(half);

    const auto lp = to_physical(lhs);
    const auto rp = to_physical(rhs);
    double scale = 0.0;
    for (int d = 0; d < 3; ++d) scale = std::max(scale, oracle::max_abs(lp[d]));
    for (int d = 0; d < 3; ++d)
        CHECK(oracle::max_abs_diff(lp[d], rp[d]) < 1e-9 * std::max(scale, 1.0));
}
