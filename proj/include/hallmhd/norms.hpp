#pragma once

#include <limits>
#include <vector>

#include "hallmhd/field.hpp"
#include "hallmhd/littlewood_paley.hpp"

namespace hallmhd {

// Discrete Morrey supremum policy: centers on a strided subgrid, balls are
// periodic half-open cubes with per-axis offsets in (-R, R] so the cell count
// is exactly (2R/h)^3. Dyadic half-widths run from min_halfwidth_cells * h up
// to L/2 (the largest cube is the full torus).
struct MorreyPolicy {
    int center_stride = 2;
    int min_halfwidth_cells = 2;
};

// Besov-Morrey index tuple (s, p, q, r). r is 1 or infinity.
struct NormSpec {
    double s = 0.0;
    double p = 3.0;
    double q = 2.0;
    double r = 1.0;
    MorreyPolicy policy;

    void validate() const;
    NormSpec with_s(double new_s) const {
        NormSpec out = *this;
        out.s = new_s;
        return out;
    }
    static constexpr double r_infinity() { return std::numeric_limits<double>::infinity(); }
};

// max over centers x0 and dyadic half-widths R of
//   (2R)^(3/p - 3/q) * ( sum_{|x - x0| in (-R,R]^3} |u(x)|^q h^3 )^(1/q).
// The (2R)-based prefactor makes the q = p case collapse to the discrete L^p
// norm exactly and gives constant-1 monotonicity in q (Jensen on the
// normalized cube average).
double morrey_norm(const SampleArray& samples, const GridSpec& grid, double p, double q,
                   const MorreyPolicy& policy);
double morrey_norm(const ScalarField& u, double p, double q, const MorreyPolicy& policy);
// Vector fields: max over components.
double morrey_norm(const VectorField& u, double p, double q, const MorreyPolicy& policy);

// Per-band Morrey norms of the Littlewood-Paley blocks (component max for
// vector fields). One profile serves every regularity index s, since
// ||u||_{N^s} = || {2^{sj} profile_j} ||_{l^r}.
std::vector<double> band_morrey_profile(const VectorField& u, const LPPartition& part,
                                        const NormSpec& spec);
std::vector<double> band_morrey_profile(const ScalarField& u, const LPPartition& part,
                                        const NormSpec& spec);

double combine_profile(const std::vector<double>& profile, const LPPartition& part, double s,
                       double r);

double besov_morrey_norm(const VectorField& u, const NormSpec& spec, const LPPartition& part);
double besov_morrey_norm(const ScalarField& u, const NormSpec& spec, const LPPartition& part);

}  // namespace hallmhd
