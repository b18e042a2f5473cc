#include "hallmhd/io.hpp"

#include <bit>
#include <cstdio>
#include <cstring>
#include <fstream>

#include "json.hpp"

namespace hallmhd {

static_assert(std::endian::native == std::endian::little,
              "field container assumes a little-endian host");

namespace {

void write_bytes(std::ofstream& out, const void* data, std::size_t len) {
    out.write(reinterpret_cast<const char*>(data), static_cast<std::streamsize>(len));
}

template <typename T>
T read_value(std::ifstream& in) {
    T v{};
    in.read(reinterpret_cast<char*>(&v), sizeof(T));
    if (!in) throw IoError("field container: truncated read");
    return v;
}

}  // namespace

void write_field_container(const std::string& path, const GridSpec& grid,
                           const std::vector<SampleArray>& components) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open for write: " + path);

    const char magic[4] = {'H', 'M', 'H', 'D'};
    const std::uint32_t version = kFieldContainerVersion;
    const std::uint32_t n = static_cast<std::uint32_t>(grid.n);
    const double box = grid.box_length;
    const std::uint32_t ncomp = static_cast<std::uint32_t>(components.size());

    write_bytes(out, magic, 4);
    write_bytes(out, &version, sizeof(version));
    write_bytes(out, &n, sizeof(n));
    write_bytes(out, &box, sizeof(box));
    write_bytes(out, &ncomp, sizeof(ncomp));
    for (const auto& c : components) {
        if (c.size() != grid.size())
            throw IntegrityError("field container: component size mismatch");
        write_bytes(out, c.data(), c.size() * sizeof(double));
    }
    if (!out) throw IoError("write failed: " + path);

    nlohmann::ordered_json sidecar;
    sidecar["n_per_axis"] = grid.n;
    sidecar["box_length"] = grid.box_length;
    sidecar["dealias_fraction"] = grid.dealias_fraction;
    sidecar["components"] = components.size();
    sidecar["layout"] = "row-major (x,y,z), little-endian f64";
    std::ofstream side(path + ".json", std::ios::trunc);
    if (!side) throw IoError("cannot open for write: " + path + ".json");
    side << sidecar.dump(2) << "\n";
}

FieldContainer read_field_container(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open for read: " + path);

    char magic[4];
    in.read(magic, 4);
    if (!in || std::memcmp(magic, "HMHD", 4) != 0)
        throw IoError("field container: bad magic in " + path);
    const auto version = read_value<std::uint32_t>(in);
    if (version != kFieldContainerVersion)
        throw IoError("field container: unsupported version");
    const auto n = read_value<std::uint32_t>(in);
    const auto box = read_value<double>(in);
    const auto ncomp = read_value<std::uint32_t>(in);

    FieldContainer fc;
    fc.grid = GridSpec(static_cast<int>(n), box);
    fc.components.resize(ncomp);
    for (auto& c : fc.components) {
        c.resize(fc.grid.size());
        in.read(reinterpret_cast<char*>(c.data()),
                static_cast<std::streamsize>(c.size() * sizeof(double)));
        if (!in) throw IoError("field container: truncated samples in " + path);
    }
    return fc;
}

void write_vector_field(const std::string& path, const VectorField& f) {
    const auto phys = to_physical(f);
    write_field_container(path, f.grid, {phys[0], phys[1], phys[2]});
}

VectorField read_vector_field(const std::string& path) {
    FieldContainer fc = read_field_container(path);
    if (fc.components.size() != 3)
        throw IoError("vector field container must have 3 components: " + path);
    return to_spectral({fc.components[0], fc.components[1], fc.components[2]}, fc.grid);
}

std::uint64_t fnv1a(const void* data, std::size_t len) {
    const auto* p = static_cast<const unsigned char*>(data);
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (std::size_t i = 0; i < len; ++i) {
        h ^= p[i];
        h *= 0x100000001b3ull;
    }
    return h;
}

std::uint64_t state_hash(const ExtendedState& s) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    auto mix = [&h](const SpectralArray& a) {
        const std::uint64_t part = fnv1a(a.data(), a.size() * sizeof(cplx));
        h ^= part;
        h *= 0x100000001b3ull;
    };
    for (int i = 0; i < 3; ++i)
        for (int d = 0; d < 3; ++d) mix(s.slot(i).coeffs[static_cast<std::size_t>(d)]);
    return h;
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

CsvWriter::CsvWriter(const std::string& path) : path_(path) {}

void CsvWriter::header(const std::vector<std::string>& names) { raw_row(names); }

void CsvWriter::row(const std::vector<double>& values) {
    std::vector<std::string> cells;
    cells.reserve(values.size());
    for (double v : values) cells.push_back(format_double(v));
    raw_row(cells);
}

void CsvWriter::raw_row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) buffer_ += ',';
        buffer_ += cells[i];
    }
    buffer_ += '\n';
}

void CsvWriter::close() {
    if (closed_) return;
    std::ofstream out(path_, std::ios::trunc);
    if (!out) throw IoError("cannot open for write: " + path_);
    out << buffer_;
    if (!out) throw IoError("write failed: " + path_);
    closed_ = true;
}

CsvWriter::~CsvWriter() {
    try {
        close();
    } catch (...) {
        // destructor must not throw; a failed close surfaces via the missing file
    }
}

}  // namespace hallmhd
