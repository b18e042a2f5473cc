#pragma once

#include <memory>
#include <vector>

#include "hallmhd/field.hpp"

namespace hallmhd {

// Dyadic annular partition of unity on the resolvable frequency range.
//
// Built by telescoping a single smooth radial cutoff theta (1 on the ball of
// radius 3/4, 0 outside the ball of radius 4/3):
//
//   phi(xi)  = theta(xi/2) - theta(xi),   supp phi  in {3/4 <= |xi| <= 8/3}
//   phi_j    = phi(2^-j xi)
//   psi      = theta,                     supp psi  in B_{4/3}
//
// so that sum_j phi_j = 1 away from 0 and psi + sum_{j>=0} phi_j = 1 hold to
// machine precision on every grid frequency once [j_min, j_max] brackets the
// resolvable annulus.
struct LPPartition {
    int j_min = 0;
    int j_max = 0;

    static double theta(double rho);
    double phi(int j, double xi_abs) const;
    double psi(double xi_abs) const;

    int band_count() const { return j_max - j_min + 1; }
    bool in_range(int j) const { return j >= j_min && j <= j_max; }
};

LPPartition build_partition(const GridSpec& grid);

// F^-1[phi_j F[u]]: spectral multiplication by phi(2^-j xi).
VectorField lp_block(const VectorField& u, int j, const LPPartition& part);
ScalarField lp_block(const ScalarField& u, int j, const LPPartition& part);

struct BlockDecomposition {
    int j_min = 0;
    int j_max = 0;
    std::vector<VectorField> blocks;  // blocks[j - j_min]
};

BlockDecomposition decompose(const VectorField& u, const LPPartition& part);

// Precomputed per-band multiplier weights, sparse over the band's annulus.
// Shared by block extraction and the norm evaluators; cached per grid.
struct BandWeights {
    std::vector<std::vector<std::pair<std::size_t, double>>> nonzero;  // per band
};

std::shared_ptr<const BandWeights> band_weights(const GridSpec& grid, const LPPartition& part);

// Scatters band j of u into a dense spectral array (zeroed first).
void extract_band(const SpectralArray& u, const BandWeights& w, int band_index, SpectralArray& out);

}  // namespace hallmhd
