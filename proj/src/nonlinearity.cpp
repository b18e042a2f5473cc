#include "hallmhd/nonlinearity.hpp"

#include <algorithm>
#include <cmath>

namespace hallmhd {

VectorField pi_a(const VectorField& v, const VectorField& w) {
    const ProductTensor t = tensor_product(v, w);
    VectorField sum = tensor_divergence(t) + tensor_divergence_transpose(t);
    return leray_project(0.5 * sum);
}

VectorField pi_b(const VectorField& v, const VectorField& w) {
    const ProductTensor t = tensor_product(v, w);
    return tensor_divergence(t) - tensor_divergence_transpose(t);
}

ExtendedState extended_rhs(const ExtendedState& phi, const ExtendedState& psi,
                           const PhysicalParams& params) {
    params.validate();
    const VectorField w = params.h * psi.j - psi.u;  // h Psi_3 - Psi_1
    ExtendedState out(phi.grid());
    out.u = pi_a(phi.b, psi.b) - pi_a(phi.u, psi.u);
    out.b = pi_b(phi.b, w);
    out.j = curl(pi_b(curl_inv(phi.j), w));
    return out;
}

namespace {

VectorField laplacian(const VectorField& f) {
    const GridSpec& g = f.grid;
    VectorField out(g);
    const int n = g.n;
    std::size_t idx = 0;
    for (int ix = 0; ix < n; ++ix) {
        const double xx = g.xi(g.wave_index(ix));
        for (int iy = 0; iy < n; ++iy) {
            const double xy = g.xi(g.wave_index(iy));
            for (int iz = 0; iz < n; ++iz, ++idx) {
                const double xz = g.xi(g.wave_index(iz));
                const double m = -(xx * xx + xy * xy + xz * xz);
                out.coeffs[0][idx] = m * f.coeffs[0][idx];
                out.coeffs[1][idx] = m * f.coeffs[1][idx];
                out.coeffs[2][idx] = m * f.coeffs[2][idx];
            }
        }
    }
    return out;
}

double relative_residual(const VectorField& residual, std::initializer_list<double> term_norms) {
    double scale = 0.0;
    for (double t : term_norms) scale = std::max(scale, t);
    if (scale == 0.0) return 0.0;
    return l2_norm(residual) / scale;
}

}  // namespace

double original_rhs_residual(const ExtendedState& theta, const ExtendedState& dtheta_dt,
                             const PhysicalParams& params) {
    params.validate();

    // Velocity equation, Leray-projected so the pressure gradient drops out.
    const VectorField adv = leray_project(advective_derivative(theta.u, theta.u));
    const VectorField lorentz = leray_project(pointwise_cross(theta.j, theta.b));
    const VectorField visc = params.mu * laplacian(theta.u);
    const VectorField r_u = dtheta_dt.u + adv - visc - lorentz;
    const double rel_u = relative_residual(
        r_u, {l2_norm(dtheta_dt.u), l2_norm(adv), l2_norm(visc), l2_norm(lorentz)});

    // Induction equation in its curl form.
    const VectorField drift = theta.u - params.h * theta.j;
    const VectorField emf = curl(pointwise_cross(drift, theta.b));
    const VectorField diff = params.nu * laplacian(theta.b);
    const VectorField r_b = dtheta_dt.b - emf - diff;
    const double rel_b =
        relative_residual(r_b, {l2_norm(dtheta_dt.b), l2_norm(emf), l2_norm(diff)});

    return std::max(rel_u, rel_b);
}

}  // namespace hallmhd
