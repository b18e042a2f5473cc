#include "doctest.h"

#include <cmath>
#include <numbers>

#include "hallmhd/nonlinearity.hpp"
#include "hallmhd/random_fields.hpp"
#include "test_oracles.hpp"

using namespace hallmhd;

namespace {

const GridSpec grid16(16, 2.0 * std::numbers::pi);

// Low-mode states keep quadratic products inside the dealias sphere, so all
// identities below hold to rounding rather than to truncation error.
ExtendedState low_mode_state(std::uint64_t seed, double amp = 1.0) {
    ExtendedState s(grid16);
    s.u = random_divfree_field(grid16, {seed, amp, 2.0, 2});
    s.b = random_divfree_field(grid16, {seed + 1000u, amp, 2.0, 2});
    s.j = curl(s.b);
    return s;
}

double rel_div(const VectorField& f) {
    const double scale = l2_norm(f);
    if (scale == 0.0) return 0.0;
    return l2_norm(divergence(f)) / (f.grid.xi_max() * scale);
}

}  // namespace

TEST_CASE("pi_a: bilinear zero slot, symmetry, divergence-free output") {
    const VectorField v = random_divfree_field(grid16, {1u, 1.0});
    const VectorField w = random_divfree_field(grid16, {2u, 1.0});
    const VectorField zero(grid16);

    CHECK(l2_norm(pi_a(v, zero)) == 0.0);
    CHECK(l2_norm(pi_a(zero, v)) == 0.0);
    CHECK(oracle::rel_l2_diff(pi_a(v, w), pi_a(w, v)) < 1e-12);
    CHECK(rel_div(pi_a(v, w)) < 1e-10);
}

TEST_CASE("pi_a(u,u) = P((u.grad)u) for divergence-free u") {
    const VectorField u = random_divfree_field(grid16, {3u, 1.0, 2.0, 2});
    const VectorField lhs = pi_a(u, u);

    // oracle: advective form assembled from direct mode-sum derivatives
    const auto up = to_physical(u);
    VectorField adv(grid16);
    for (int i = 0; i < 3; ++i) {
        SampleArray acc(grid16.size(), 0.0);
        for (int j = 0; j < 3; ++j) {
            const SampleArray dui = oracle::direct_eval_derivative(grid16, u.coeffs[i], j, 1);
            for (std::size_t m = 0; m < acc.size(); ++m) acc[m] += up[j][m] * dui[m];
        }
        forward_scaled_into(grid16, acc, adv.coeffs[i]);
    }
    CHECK(oracle::rel_l2_diff(lhs, leray_project(adv)) < 1e-10);
}

TEST_CASE("pi_b: antisymmetry and the curl(v x w) identity") {
    const VectorField v = random_divfree_field(grid16, {5u, 1.0, 2.0, 2});
    const VectorField w = random_divfree_field(grid16, {7u, 1.0, 2.0, 2});

    CHECK(l2_norm(pi_b(v, v)) < 1e-12 * std::max(1.0, l2_norm(v)));
    CHECK(oracle::rel_l2_diff(pi_b(v, w), -1.0 * pi_b(w, v)) < 1e-12);
    CHECK(oracle::rel_l2_diff(pi_b(v, w), curl(pointwise_cross(v, w))) < 1e-10);
}

TEST_CASE("extended_rhs: bilinearity and zero slots") {
    const ExtendedState theta = low_mode_state(11u);
    const ExtendedState zero(grid16);
    const PhysicalParams params{1.0, 1.0, 1.0};

    auto norm_of = [](const ExtendedState& s) {
        return l2_norm(s.u) + l2_norm(s.b) + l2_norm(s.j);
    };
    CHECK(norm_of(extended_rhs(zero, theta, params)) == 0.0);
    CHECK(norm_of(extended_rhs(theta, zero, params)) == 0.0);

    // bilinearity in the first slot
    const ExtendedState phi2 = low_mode_state(13u);
    const ExtendedState lin = extended_rhs(2.0 * theta + phi2, theta, params);
    ExtendedState expect = 2.0 * extended_rhs(theta, theta, params);
    axpy(1.0, extended_rhs(phi2, theta, params), expect);
    CHECK(oracle::rel_l2_diff(lin.u, expect.u) < 1e-12);
    CHECK(oracle::rel_l2_diff(lin.b, expect.b) < 1e-12);
    CHECK(oracle::rel_l2_diff(lin.j, expect.j) < 1e-12);
}

TEST_CASE("extended_rhs: all three outputs are divergence-free") {
    const ExtendedState theta = low_mode_state(17u);
    const ExtendedState out = extended_rhs(theta, theta, PhysicalParams{1.0, 1.2, 0.8});
    CHECK(rel_div(out.u) < 1e-10);
    CHECK(rel_div(out.b) < 1e-10);
    CHECK(rel_div(out.j) < 1e-10);
    // and mean-free
    CHECK(mean_defect(out) == 0.0);
}

TEST_CASE("extended_rhs with B = J = 0 reduces to the Navier-Stokes nonlinearity") {
    ExtendedState theta(grid16);
    theta.u = random_divfree_field(grid16, {19u, 1.0, 2.0, 2});
    const ExtendedState out = extended_rhs(theta, theta, PhysicalParams{});
    const VectorField expect = -1.0 * pi_a(theta.u, theta.u);
    CHECK(oracle::rel_l2_diff(out.u, expect) < 1e-12);
    CHECK(l2_norm(out.b) == 0.0);
    CHECK(l2_norm(out.j) == 0.0);
}

TEST_CASE("extended_rhs with u = 0 reduces to the Hall-only nonlinearity") {
    // third component against the direct assembly of -h curl((curl B) x B)
    // rewritten through J = curl B and B = curl_inv J
    const double h = 0.7;
    ExtendedState theta(grid16);
    theta.b = random_divfree_field(grid16, {23u, 1.0, 2.0, 2});
    theta.j = curl(theta.b);
    const ExtendedState out = extended_rhs(theta, theta, PhysicalParams{1.0, 1.0, h});

    const VectorField hall = -h * curl(curl(pointwise_cross(theta.j, theta.b)));
    CHECK(oracle::rel_l2_diff(out.j, hall) < 1e-9);
}

TEST_CASE("scaling covariance of the nonlinearity under lambda = 2") {
    // Pi((Theta)_lambda, (Theta)_lambda) = lambda^3 Pi(Theta, Theta)(lambda x)
    // realized on the matched grid (same n, box L/2).
    const ExtendedState theta = low_mode_state(29u);
    const PhysicalParams params{1.0, 1.0, 1.0};
    const ExtendedState pi = extended_rhs(theta, theta, params);

    const GridSpec fine(grid16.n, grid16.box_length / 2.0);
    ExtendedState scaled(fine);
    for (int i = 0; i < 3; ++i)
        for (int d = 0; d < 3; ++d)
            for (std::size_t m = 0; m < theta.slot(i).coeffs[d].size(); ++m)
                scaled.slot(i).coeffs[d][m] = 2.0 * theta.slot(i).coeffs[d][m];

    const ExtendedState pi_scaled = extended_rhs(scaled, scaled, params);
    // lambda^3 Pi(Theta,Theta)(lambda x): coefficients 8 * pi_k on the fine box
    double worst = 0.0;
    double scale = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int d = 0; d < 3; ++d)
            for (std::size_t m = 0; m < pi.slot(i).coeffs[d].size(); ++m) {
                worst = std::max(worst, std::abs(pi_scaled.slot(i).coeffs[d][m] -
                                                 8.0 * pi.slot(i).coeffs[d][m]));
                scale = std::max(scale, std::abs(8.0 * pi.slot(i).coeffs[d][m]));
            }
    CHECK(worst < 1e-9 * std::max(scale, 1e-30));
}

TEST_CASE("consistency generator: curl of the B-equation equals the J-equation") {
    const ExtendedState theta = low_mode_state(31u);  // J = curl B exactly
    const ExtendedState out = extended_rhs(theta, theta, PhysicalParams{1.0, 1.0, 1.0});
    CHECK(oracle::rel_l2_diff(curl(out.b), out.j) < 1e-9);
}

TEST_CASE("original_rhs_residual: zero state has zero residual") {
    const ExtendedState zero(grid16);
    CHECK(original_rhs_residual(zero, zero, PhysicalParams{}) == 0.0);
}

TEST_CASE("original_rhs_residual certifies the reformulated right-hand side") {
    for (std::uint64_t seed : {41u, 43u, 47u}) {
        const ExtendedState theta = low_mode_state(seed, 0.8);
        const PhysicalParams params{1.1, 0.9, 0.6};
        // d_t Theta = lap_{mu,nu} Theta + Pi(Theta, Theta)
        ExtendedState dtheta = extended_rhs(theta, theta, params);
        axpy(-params.mu, curl(curl(theta.u)), dtheta.u);  // -curl curl = lap on div-free
        axpy(-params.nu, curl(curl(theta.b)), dtheta.b);
        axpy(-params.nu, curl(curl(theta.j)), dtheta.j);
        CHECK(original_rhs_residual(theta, dtheta, params) < 1e-9);
    }
}

TEST_CASE("original_rhs_residual: P(J x B) equals P((B.grad)B) for J = curl B") {
    const VectorField b = random_divfree_field(grid16, {53u, 1.0, 2.0, 2});
    const VectorField j = curl(b);
    const VectorField lhs = leray_project(pointwise_cross(j, b));
    const VectorField rhs = leray_project(advective_derivative(b, b));
    CHECK(oracle::rel_l2_diff(lhs, rhs) < 1e-10);
}

TEST_CASE("original_rhs_residual flags a wrong time derivative") {
    const ExtendedState theta = low_mode_state(59u);
    const PhysicalParams params{1.0, 1.0, 1.0};
    ExtendedState dtheta = extended_rhs(theta, theta, params);
    axpy(-params.mu, curl(curl(theta.u)), dtheta.u);
    axpy(-params.nu, curl(curl(theta.b)), dtheta.b);
    axpy(-params.nu, curl(curl(theta.j)), dtheta.j);
    // corrupt the induction part
    dtheta.b = 1.5 * dtheta.b;
    CHECK(original_rhs_residual(theta, dtheta, params) > 1e-3);
}
