#pragma once

#include "hallmhd/field.hpp"
#include "hallmhd/operators.hpp"

namespace hallmhd {

// Fluid viscosity mu, magnetic resistivity nu, Hall intensity h.
struct PhysicalParams {
    double mu = 1.0;
    double nu = 1.0;
    double h = 1.0;

    void validate() const {
        if (!(mu > 0.0 && nu > 0.0 && h > 0.0))
            throw DomainError("physical params must be strictly positive");
    }
};

// The extended-system unknown: velocity u, magnetic field b, current j,
// all divergence-free and mean-free.
struct ExtendedState {
    VectorField u;
    VectorField b;
    VectorField j;

    ExtendedState() = default;
    explicit ExtendedState(const GridSpec& g) : u(g), b(g), j(g) {}

    const GridSpec& grid() const { return u.grid; }

    VectorField& slot(int i) { return i == 0 ? u : (i == 1 ? b : j); }
    const VectorField& slot(int i) const { return i == 0 ? u : (i == 1 ? b : j); }
};

void axpy(double a, const ExtendedState& x, ExtendedState& y);
ExtendedState operator+(const ExtendedState& a, const ExtendedState& b);
ExtendedState operator-(const ExtendedState& a, const ExtendedState& b);
ExtendedState operator*(double s, const ExtendedState& t);

// Worst relative divergence defect over the three slots (L2, scale-relative).
double divergence_defect(const ExtendedState& t);
// Largest |mean mode| over slots and components.
double mean_defect(const ExtendedState& t);

// Throws IntegrityError when div or mean defects exceed tolerance.
void check_state_invariants(const ExtendedState& t, double tol = 1e-10);

}  // namespace hallmhd
