#include "mpe/snapshot.hpp"

#include <bit>
#include <cstdio>
#include <cstring>
#include <memory>
#include <vector>

#include "mpe/errors.hpp"

namespace mpe {

namespace {

struct FileCloser {
    void operator()(std::FILE* f) const {
        if (f) std::fclose(f);
    }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

std::uint64_t to_le(double v) {
    std::uint64_t bits;
    std::memcpy(&bits, &v, sizeof bits);
    if constexpr (std::endian::native == std::endian::big) {
        std::uint64_t r = 0;
        for (int i = 0; i < 8; ++i) r = (r << 8) | ((bits >> (8 * i)) & 0xffu);
        bits = r;
    }
    return bits;
}

double from_le(std::uint64_t bits) {
    if constexpr (std::endian::native == std::endian::big) {
        std::uint64_t r = 0;
        for (int i = 0; i < 8; ++i) r = (r << 8) | ((bits >> (8 * i)) & 0xffu);
        bits = r;
    }
    double v;
    std::memcpy(&v, &bits, sizeof v);
    return v;
}

void write_field(std::FILE* f, const Field3D& x, const Grid& g,
                 const std::string& path) {
    std::vector<std::uint64_t> row(static_cast<size_t>(g.npx()));
    for (int k = 0; k <= g.nz; ++k)
        for (int j = 0; j <= g.ny; ++j) {
            for (int i = 0; i <= g.nx; ++i) row[i] = to_le(x(i, j, k));
            if (std::fwrite(row.data(), sizeof(std::uint64_t), row.size(), f) !=
                row.size())
                throw IoError("short write to " + path);
        }
}

void read_field(std::FILE* f, Field3D& x, const Grid& g, const std::string& path) {
    std::vector<std::uint64_t> row(static_cast<size_t>(g.npx()));
    for (int k = 0; k <= g.nz; ++k)
        for (int j = 0; j <= g.ny; ++j) {
            if (std::fread(row.data(), sizeof(std::uint64_t), row.size(), f) !=
                row.size())
                throw IoError("truncated snapshot " + path);
            for (int i = 0; i <= g.nx; ++i) x(i, j, k) = from_le(row[i]);
        }
}

std::string read_line(std::FILE* f, const std::string& path) {
    std::string out;
    int c;
    while ((c = std::fgetc(f)) != EOF && c != '\n') out.push_back(static_cast<char>(c));
    if (c == EOF && out.empty()) throw IoError("truncated snapshot " + path);
    return out;
}

} // namespace

void save_snapshot(const State& s, const Grid& g, const std::string& path) {
    FilePtr f(std::fopen(path.c_str(), "wb"));
    if (!f) throw IoError("cannot open " + path + " for writing");

    char head[256];
    const int n = std::snprintf(head, sizeof(head),
                                "MPE1\nversion 1\ndims %d %d %d\n"
                                "extents %.17g %.17g\ntime %.17g\n"
                                "fields 4 v1 v2 T q\n",
                                g.nx, g.ny, g.nz, g.lx, g.ly, s.time);
    if (n <= 0 || std::fwrite(head, 1, static_cast<size_t>(n), f.get()) !=
                      static_cast<size_t>(n))
        throw IoError("short write to " + path);

    write_field(f.get(), s.v1, g, path);
    write_field(f.get(), s.v2, g, path);
    write_field(f.get(), s.T, g, path);
    write_field(f.get(), s.q, g, path);
    if (std::fflush(f.get()) != 0) throw IoError("flush failed for " + path);
}

std::pair<State, Grid> load_snapshot(const std::string& path) {
    FilePtr f(std::fopen(path.c_str(), "rb"));
    if (!f) throw IoError("cannot open " + path);

    if (read_line(f.get(), path) != "MPE1")
        throw VersionError("not a snapshot file (bad magic): " + path);
    int version = 0;
    if (std::sscanf(read_line(f.get(), path).c_str(), "version %d", &version) != 1 ||
        version != 1)
        throw VersionError("unsupported snapshot version in " + path);

    int nx = 0, ny = 0, nz = 0;
    if (std::sscanf(read_line(f.get(), path).c_str(), "dims %d %d %d", &nx, &ny, &nz) !=
        3)
        throw IoError("bad dims line in " + path);
    double lx = 0.0, ly = 0.0;
    if (std::sscanf(read_line(f.get(), path).c_str(), "extents %lg %lg", &lx, &ly) != 2)
        throw IoError("bad extents line in " + path);
    double time = 0.0;
    if (std::sscanf(read_line(f.get(), path).c_str(), "time %lg", &time) != 1)
        throw IoError("bad time line in " + path);
    int nfields = 0;
    char names[128] = {0};
    if (std::sscanf(read_line(f.get(), path).c_str(), "fields %d %127[^\n]", &nfields,
                    names) != 2 ||
        nfields != 4 || std::string(names) != "v1 v2 T q")
        throw IoError("unexpected field list in " + path);

    Grid g;
    try {
        g = Grid::make(nx, ny, nz, lx, ly);
    } catch (const std::invalid_argument& e) {
        throw IoError(std::string("bad grid in ") + path + ": " + e.what());
    }

    State s(g);
    read_field(f.get(), s.v1, g, path);
    read_field(f.get(), s.v2, g, path);
    read_field(f.get(), s.T, g, path);
    read_field(f.get(), s.q, g, path);
    s.time = time;
    return {std::move(s), g};
}

} // namespace mpe
