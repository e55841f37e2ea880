#pragma once

// Flat binary serialization for GridFunction: a 64-byte header
// (magic "ANISOGRD", u32 d, u32 d_s, u32 N, zero padding, f64 L, f64 K_rad,
// zero fill) followed by little-endian f64 (re, im) pairs in row-major
// lattice order. Used by the CLI corpus cache.

#include <bit>
#include <cstring>
#include <fstream>

#include "aniso/grid.hpp"

namespace aniso {

inline constexpr char kGridMagic[8] = {'A', 'N', 'I', 'S', 'O', 'G', 'R', 'D'};
inline constexpr std::size_t kGridHeaderBytes = 64;

static_assert(std::endian::native == std::endian::little,
              "grid_io assumes a little-endian host");

inline void write_grid_function(std::ostream& os, const GridFunction& f) {
    char header[kGridHeaderBytes] = {};
    std::memcpy(header, kGridMagic, 8);
    const std::uint32_t d = static_cast<std::uint32_t>(f.spec.d);
    const std::uint32_t ds = static_cast<std::uint32_t>(f.spec.d_s);
    const std::uint32_t n = static_cast<std::uint32_t>(f.spec.N);
    std::memcpy(header + 8, &d, 4);
    std::memcpy(header + 12, &ds, 4);
    std::memcpy(header + 16, &n, 4);
    std::memcpy(header + 24, &f.spec.L, 8);
    std::memcpy(header + 32, &f.spec.K_rad, 8);
    os.write(header, kGridHeaderBytes);
    for (const cplx& v : f.values) {
        const double re = v.real(), im = v.imag();
        os.write(reinterpret_cast<const char*>(&re), 8);
        os.write(reinterpret_cast<const char*>(&im), 8);
    }
}

inline void write_grid_function(const std::string& path, const GridFunction& f) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("write_grid_function: cannot open " + path);
    write_grid_function(os, f);
    if (!os) throw std::runtime_error("write_grid_function: write failed for " + path);
}

inline GridFunction read_grid_function(std::istream& is) {
    char header[kGridHeaderBytes];
    is.read(header, kGridHeaderBytes);
    if (!is || std::memcmp(header, kGridMagic, 8) != 0)
        throw std::runtime_error("read_grid_function: bad magic");
    std::uint32_t d, ds, n;
    double L, K;
    std::memcpy(&d, header + 8, 4);
    std::memcpy(&ds, header + 12, 4);
    std::memcpy(&n, header + 16, 4);
    std::memcpy(&L, header + 24, 8);
    std::memcpy(&K, header + 32, 8);
    GridSpec spec = make_grid(static_cast<int>(d), static_cast<int>(ds), static_cast<int>(n), L, K);
    GridFunction f(spec);
    for (cplx& v : f.values) {
        double re, im;
        is.read(reinterpret_cast<char*>(&re), 8);
        is.read(reinterpret_cast<char*>(&im), 8);
        v = {re, im};
    }
    if (!is) throw std::runtime_error("read_grid_function: truncated payload");
    return f;
}

inline GridFunction read_grid_function(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("read_grid_function: cannot open " + path);
    return read_grid_function(is);
}

}  // namespace aniso
