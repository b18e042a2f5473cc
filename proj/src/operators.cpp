#include "hallmhd/operators.hpp"

#include <cmath>

#include "hallmhd/errors.hpp"
#include "hallmhd/parallel.hpp"

namespace hallmhd {

namespace {

// Visits every mode with its integer wavevector. Body: (flat, kx, ky, kz).
template <typename Body>
void for_each_mode(const GridSpec& g, Body&& body) {
    const int n = g.n;
    std::size_t idx = 0;
    for (int ix = 0; ix < n; ++ix) {
        const int kx = g.wave_index(ix);
        for (int iy = 0; iy < n; ++iy) {
            const int ky = g.wave_index(iy);
            for (int iz = 0; iz < n; ++iz, ++idx) {
                body(idx, kx, ky, iz <= n / 2 ? iz : iz - n);
            }
        }
    }
}

inline bool nyquist(const GridSpec& g, int kx, int ky, int kz) {
    const int ny = g.n / 2;
    return kx == ny || ky == ny || kz == ny;
}

}  // namespace

ScalarField divergence(const VectorField& f) {
    const GridSpec& g = f.grid;
    ScalarField out(g);
    for_each_mode(g, [&](std::size_t i, int kx, int ky, int kz) {
        if (nyquist(g, kx, ky, kz)) return;
        const cplx s = g.xi(kx) * f.coeffs[0][i] + g.xi(ky) * f.coeffs[1][i] +
                       g.xi(kz) * f.coeffs[2][i];
        out.coeffs[i] = cplx(0.0, 1.0) * s;
    });
    return out;
}

VectorField gradient(const ScalarField& f) {
    const GridSpec& g = f.grid;
    VectorField out(g);
    for_each_mode(g, [&](std::size_t i, int kx, int ky, int kz) {
        if (nyquist(g, kx, ky, kz)) return;
        const cplx v = cplx(0.0, 1.0) * f.coeffs[i];
        out.coeffs[0][i] = g.xi(kx) * v;
        out.coeffs[1][i] = g.xi(ky) * v;
        out.coeffs[2][i] = g.xi(kz) * v;
    });
    return out;
}

VectorField curl(const VectorField& f) {
    const GridSpec& g = f.grid;
    VectorField out(g);
    for_each_mode(g, [&](std::size_t i, int kx, int ky, int kz) {
        if (nyquist(g, kx, ky, kz)) return;
        const double xx = g.xi(kx), xy = g.xi(ky), xz = g.xi(kz);
        const cplx fx = f.coeffs[0][i], fy = f.coeffs[1][i], fz = f.coeffs[2][i];
        const cplx I(0.0, 1.0);
        out.coeffs[0][i] = I * (xy * fz - xz * fy);
        out.coeffs[1][i] = I * (xz * fx - xx * fz);
        out.coeffs[2][i] = I * (xx * fy - xy * fx);
    });
    return out;
}

VectorField leray_project(const VectorField& f) {
    const GridSpec& g = f.grid;
    VectorField out(g);
    for_each_mode(g, [&](std::size_t i, int kx, int ky, int kz) {
        if (kx == 0 && ky == 0 && kz == 0) return;  // zero mode -> 0
        const double xx = g.xi(kx), xy = g.xi(ky), xz = g.xi(kz);
        const double x2 = xx * xx + xy * xy + xz * xz;
        const cplx dot = xx * f.coeffs[0][i] + xy * f.coeffs[1][i] + xz * f.coeffs[2][i];
        const cplx q = dot / x2;
        out.coeffs[0][i] = f.coeffs[0][i] - xx * q;
        out.coeffs[1][i] = f.coeffs[1][i] - xy * q;
        out.coeffs[2][i] = f.coeffs[2][i] - xz * q;
    });
    return out;
}

VectorField curl_inv(const VectorField& j) {
    const GridSpec& g = j.grid;
    VectorField out(g);
    for_each_mode(g, [&](std::size_t i, int kx, int ky, int kz) {
        if (kx == 0 && ky == 0 && kz == 0) return;
        if (nyquist(g, kx, ky, kz)) return;
        const double xx = g.xi(kx), xy = g.xi(ky), xz = g.xi(kz);
        const double x2 = xx * xx + xy * xy + xz * xz;
        const cplx jx = j.coeffs[0][i], jy = j.coeffs[1][i], jz = j.coeffs[2][i];
        const cplx I(0.0, 1.0);
        out.coeffs[0][i] = I * (xy * jz - xz * jy) / x2;
        out.coeffs[1][i] = I * (xz * jx - xx * jz) / x2;
        out.coeffs[2][i] = I * (xx * jy - xy * jx) / x2;
    });
    return out;
}

void heat_propagate_inplace(VectorField& f, double t, double kappa) {
    if (t < 0.0) throw DomainError("heat_propagate: negative time");
    if (!(kappa > 0.0)) throw DomainError("heat_propagate: kappa must be positive");
    if (t == 0.0) return;
    const GridSpec& g = f.grid;
    // The multiplier is radial; precompute exp over k^2 = kx^2+ky^2+kz^2,
    // which takes at most 3*(n/2)^2+1 distinct values.
    const int n2 = g.n / 2;
    const int kk_max = 3 * n2 * n2;
    const double xi1 = g.xi(1);
    std::vector<double> table(static_cast<std::size_t>(kk_max) + 1);
    for (int kk = 0; kk <= kk_max; ++kk)
        table[static_cast<std::size_t>(kk)] = std::exp(-kappa * xi1 * xi1 * kk * t);
    for_each_mode(g, [&](std::size_t i, int kx, int ky, int kz) {
        const int kk = kx * kx + ky * ky + kz * kz;
        const double m = table[static_cast<std::size_t>(kk)];
        f.coeffs[0][i] *= m;
        f.coeffs[1][i] *= m;
        f.coeffs[2][i] *= m;
    });
}

VectorField heat_propagate(const VectorField& f, double t, double kappa) {
    VectorField out = f;
    heat_propagate_inplace(out, t, kappa);
    return out;
}

ProductTensor tensor_product(const VectorField& v, const VectorField& w) {
    if (v.grid != w.grid) throw IntegrityError("tensor_product: grid mismatch");
    const GridSpec& g = v.grid;
    std::array<SampleArray, 3> vp, wp;
    parallel_for(3, [&](std::size_t d) {
        backward_into(g, v.coeffs[d], vp[d]);
        backward_into(g, w.coeffs[d], wp[d]);
    });
    ProductTensor out;
    out.grid = g;
    parallel_for(9, [&](std::size_t ij) {
        const std::size_t i = ij / 3, j = ij % 3;
        SampleArray prod(g.size());
        for (std::size_t m = 0; m < prod.size(); ++m) prod[m] = vp[i][m] * wp[j][m];
        forward_scaled_into(g, prod, out.p[ij]);
        apply_dealias_mask(g, out.p[ij]);
    });
    return out;
}

namespace {

// out_i = sum_j i xi_j p[sel(i,j)]
template <typename Sel>
VectorField contract_divergence(const ProductTensor& t, Sel&& sel) {
    const GridSpec& g = t.grid;
    VectorField out(g);
    for_each_mode(g, [&](std::size_t m, int kx, int ky, int kz) {
        if (nyquist(g, kx, ky, kz)) return;
        const double xi[3] = {g.xi(kx), g.xi(ky), g.xi(kz)};
        const cplx I(0.0, 1.0);
        for (int i = 0; i < 3; ++i) {
            cplx s(0.0);
            for (int j = 0; j < 3; ++j) s += xi[j] * t.p[sel(i, j)][m];
            out.coeffs[static_cast<std::size_t>(i)][m] = I * s;
        }
    });
    return out;
}

}  // namespace

VectorField tensor_divergence(const ProductTensor& vw) {
    return contract_divergence(vw, [](int i, int j) { return 3 * i + j; });
}

VectorField tensor_divergence_transpose(const ProductTensor& vw) {
    return contract_divergence(vw, [](int i, int j) { return 3 * j + i; });
}

VectorField tensor_divergence(const VectorField& v, const VectorField& w) {
    return tensor_divergence(tensor_product(v, w));
}

VectorField pointwise_cross(const VectorField& v, const VectorField& w) {
    if (v.grid != w.grid) throw IntegrityError("pointwise_cross: grid mismatch");
    const GridSpec& g = v.grid;
    std::array<SampleArray, 3> vp, wp;
    parallel_for(3, [&](std::size_t d) {
        backward_into(g, v.coeffs[d], vp[d]);
        backward_into(g, w.coeffs[d], wp[d]);
    });
    VectorField out(g);
    parallel_for(3, [&](std::size_t i) {
        const std::size_t j = (i + 1) % 3, k = (i + 2) % 3;
        SampleArray prod(g.size());
        for (std::size_t m = 0; m < prod.size(); ++m)
            prod[m] = vp[j][m] * wp[k][m] - vp[k][m] * wp[j][m];
        forward_scaled_into(g, prod, out.coeffs[i]);
        apply_dealias_mask(g, out.coeffs[i]);
    });
    return out;
}

ScalarField pointwise_dot(const VectorField& v, const VectorField& w) {
    if (v.grid != w.grid) throw IntegrityError("pointwise_dot: grid mismatch");
    const GridSpec& g = v.grid;
    std::array<SampleArray, 3> vp, wp;
    parallel_for(3, [&](std::size_t d) {
        backward_into(g, v.coeffs[d], vp[d]);
        backward_into(g, w.coeffs[d], wp[d]);
    });
    SampleArray prod(g.size(), 0.0);
    for (int d = 0; d < 3; ++d)
        for (std::size_t m = 0; m < prod.size(); ++m) prod[m] += vp[d][m] * wp[d][m];
    ScalarField out(g);
    forward_scaled_into(g, prod, out.coeffs);
    apply_dealias_mask(g, out.coeffs);
    return out;
}

VectorField advective_derivative(const VectorField& w, const VectorField& v) {
    if (v.grid != w.grid) throw IntegrityError("advective_derivative: grid mismatch");
    const GridSpec& g = v.grid;
    std::array<SampleArray, 3> wp;
    parallel_for(3, [&](std::size_t d) { backward_into(g, w.coeffs[d], wp[d]); });

    // d_j v_i in physical space, nine slots.
    std::array<SampleArray, 9> dv;
    parallel_for(9, [&](std::size_t ij) {
        const int i = static_cast<int>(ij / 3), j = static_cast<int>(ij % 3);
        SpectralArray der(g.size(), cplx(0.0));
        for_each_mode(g, [&](std::size_t m, int kx, int ky, int kz) {
            if (nyquist(g, kx, ky, kz)) return;
            const double xi[3] = {g.xi(kx), g.xi(ky), g.xi(kz)};
            der[m] = cplx(0.0, 1.0) * xi[j] * v.coeffs[static_cast<std::size_t>(i)][m];
        });
        backward_into(g, der, dv[ij]);
    });

    VectorField out(g);
    parallel_for(3, [&](std::size_t i) {
        SampleArray acc(g.size(), 0.0);
        for (std::size_t j = 0; j < 3; ++j) {
            const SampleArray& d = dv[3 * i + j];
            for (std::size_t m = 0; m < acc.size(); ++m) acc[m] += wp[j][m] * d[m];
        }
        forward_scaled_into(g, acc, out.coeffs[i]);
        apply_dealias_mask(g, out.coeffs[i]);
    });
    return out;
}

std::pair<ScalarField, ScalarField> recover_pressure(const VectorField& u, const VectorField& b) {
    if (u.grid != b.grid) throw IntegrityError("recover_pressure: grid mismatch");
    const GridSpec& g = u.grid;
    const VectorField f = tensor_divergence(b, b) - tensor_divergence(u, u);

    ScalarField lambda(g);
    for_each_mode(g, [&](std::size_t i, int kx, int ky, int kz) {
        if (kx == 0 && ky == 0 && kz == 0) return;  // mean-free gauge
        const double xx = g.xi(kx), xy = g.xi(ky), xz = g.xi(kz);
        const double x2 = xx * xx + xy * xy + xz * xz;
        const cplx dot = xx * f.coeffs[0][i] + xy * f.coeffs[1][i] + xz * f.coeffs[2][i];
        lambda.coeffs[i] = cplx(0.0, -1.0) * dot / x2;
    });

    ScalarField half_b2 = pointwise_dot(b, b);
    ScalarField phi(g);
    for (std::size_t i = 0; i < phi.coeffs.size(); ++i)
        phi.coeffs[i] = lambda.coeffs[i] - 0.5 * half_b2.coeffs[i];
    return {lambda, phi};
}

}  // namespace hallmhd
