#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hallmhd/state.hpp"

namespace hallmhd {

// Flat binary field container:
//   magic "HMHD" | u32 version | u32 n_per_axis | f64 box_length | u32 n_components
// followed by little-endian f64 physical-space samples per component in
// row-major (x, y, z) order. A JSON sidecar (<path>.json) carries the grid
// metadata for tooling that does not parse the header.

inline constexpr std::uint32_t kFieldContainerVersion = 1;

struct FieldContainer {
    GridSpec grid;
    std::vector<SampleArray> components;
};

void write_field_container(const std::string& path, const GridSpec& grid,
                           const std::vector<SampleArray>& components);
FieldContainer read_field_container(const std::string& path);

void write_vector_field(const std::string& path, const VectorField& f);
VectorField read_vector_field(const std::string& path);

// FNV-1a over raw bytes; used for input fingerprints in run manifests.
std::uint64_t fnv1a(const void* data, std::size_t len);
std::uint64_t state_hash(const ExtendedState& s);

// Deterministic shortest-precision-stable formatting for CSV/report output.
std::string format_double(double v);

class CsvWriter {
  public:
    explicit CsvWriter(const std::string& path);
    ~CsvWriter();
    void header(const std::vector<std::string>& names);
    void row(const std::vector<double>& values);
    void raw_row(const std::vector<std::string>& cells);
    void close();  // writes the buffered table; IoError on failure

  private:
    std::string path_;
    std::string buffer_;
    bool closed_ = false;
};

}  // namespace hallmhd
