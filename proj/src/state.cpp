#include "hallmhd/state.hpp"

#include <algorithm>
#include <cmath>

namespace hallmhd {

void axpy(double a, const ExtendedState& x, ExtendedState& y) {
    axpy(a, x.u, y.u);
    axpy(a, x.b, y.b);
    axpy(a, x.j, y.j);
}

ExtendedState operator+(const ExtendedState& a, const ExtendedState& b) {
    ExtendedState out = a;
    axpy(1.0, b, out);
    return out;
}

ExtendedState operator-(const ExtendedState& a, const ExtendedState& b) {
    ExtendedState out = a;
    axpy(-1.0, b, out);
    return out;
}

ExtendedState operator*(double s, const ExtendedState& t) {
    ExtendedState out = t;
    for (int i = 0; i < 3; ++i)
        for (auto& comp : out.slot(i).coeffs)
            for (auto& c : comp) c *= s;
    return out;
}

double divergence_defect(const ExtendedState& t) {
    double worst = 0.0;
    for (int i = 0; i < 3; ++i) {
        const VectorField& f = t.slot(i);
        const double scale = l2_norm(f);
        if (scale == 0.0) continue;
        // ||div f|| carries one extra xi factor; normalize by xi_max ||f||.
        const double div_norm = l2_norm(divergence(f));
        worst = std::max(worst, div_norm / (f.grid.xi_max() * scale));
    }
    return worst;
}

double mean_defect(const ExtendedState& t) {
    double worst = 0.0;
    for (int i = 0; i < 3; ++i)
        for (const auto& comp : t.slot(i).coeffs)
            worst = std::max(worst, std::abs(comp[0]));
    return worst;
}

void check_state_invariants(const ExtendedState& t, double tol) {
    if (t.u.grid != t.b.grid || t.u.grid != t.j.grid)
        throw IntegrityError("extended state: slots live on different grids");
    if (divergence_defect(t) > tol)
        throw IntegrityError("extended state: divergence defect above tolerance");
    double scale = 0.0;
    for (int i = 0; i < 3; ++i) scale = std::max(scale, linf_coeff(t.slot(i)));
    if (mean_defect(t) > tol * std::max(scale, 1e-300))
        throw IntegrityError("extended state: nonzero mean mode");
}

}  // namespace hallmhd
