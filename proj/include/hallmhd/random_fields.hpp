#pragma once

#include <cstdint>
#include <string>

#include "hallmhd/state.hpp"

namespace hallmhd {

// Seeded smooth random fields: i.i.d. complex Gaussian coefficients with
// |k|^-decay amplitude over the spherical shell |k| <= kmax, Hermitian pairs
// assigned per canonical mode in a grid-independent order, then Leray
// projected and mean-stripped. Identical (seed, kmax, decay) draws produce
// the same coefficients on every grid that can represent the shell, which is
// what makes refinement studies apples-to-apples. Quadratic products of a
// field with kmax <= dealias_radius/2 pass the dealias mask untouched.
struct RandomFieldSpec {
    std::uint64_t seed = 0;
    double amplitude = 1.0;
    double decay = 2.0;
    int kmax = 0;  // 0: widest shell inside the grid's dealias radius

    RandomFieldSpec() = default;
    RandomFieldSpec(std::uint64_t sd, double amp, double dec = 2.0, int km = 0)
        : seed(sd), amplitude(amp), decay(dec), kmax(km) {}
};

VectorField random_divfree_field(const GridSpec& grid, const RandomFieldSpec& spec);
ScalarField random_scalar_field(const GridSpec& grid, const RandomFieldSpec& spec);

// Initial-data presets for experiments. Every generated state has J = curl B
// exactly, divergence-free slots and zero means.
enum class Preset { random, taylor_green, orszag_tang };

Preset preset_from_string(const std::string& name);
std::string to_string(Preset p);

struct InitialDataSpec {
    Preset preset = Preset::random;
    std::uint64_t seed = 0;
    double amplitude = 1.0;
    double decay = 2.0;
    int kmax = 0;
};

ExtendedState generate_initial_data(const GridSpec& grid, const InitialDataSpec& spec);

}  // namespace hallmhd
