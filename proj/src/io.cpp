#include "gwf/io.hpp"

#include "gwf/errors.hpp"
#include "gwf/stft.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>

namespace gwf {

std::string fmt_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

template <class T> void put(std::ofstream& os, T v) {
    os.write(reinterpret_cast<const char*>(&v), sizeof v);
}

template <class T> T get(std::ifstream& is) {
    T v{};
    is.read(reinterpret_cast<char*>(&v), sizeof v);
    if (!is) throw io_error("unexpected end of file");
    return v;
}

std::ofstream open_out(const std::string& path, bool binary) {
    std::ofstream os(path, binary ? std::ios::binary : std::ios::out);
    if (!os) throw io_error("cannot open for writing: " + path);
    return os;
}

std::ifstream open_in(const std::string& path, bool binary) {
    std::ifstream is(path, binary ? std::ios::binary : std::ios::in);
    if (!is) throw io_error("cannot open for reading: " + path);
    return is;
}

} // namespace

void write_signal_bin(const std::string& path, const SampledSignal& s) {
    auto os = open_out(path, true);
    put<std::uint32_t>(os, std::uint32_t(s.grid.d));
    put<std::uint32_t>(os, std::uint32_t(s.grid.n));
    put<double>(os, s.grid.half_extent);
    for (const cplx& v : s.values) {
        put<double>(os, v.real());
        put<double>(os, v.imag());
    }
}

SampledSignal read_signal_bin(const std::string& path) {
    auto is = open_in(path, true);
    const auto d = get<std::uint32_t>(is);
    const auto n = get<std::uint32_t>(is);
    const auto L = get<double>(is);
    SampledSignal s{UniformGrid(int(d), n, L)};
    for (cplx& v : s.values) {
        const double re = get<double>(is);
        const double im = get<double>(is);
        v = cplx(re, im);
    }
    return s;
}

void write_signal_csv(const std::string& path, const SampledSignal& s) {
    auto os = open_out(path, false);
    if (s.grid.d == 1) {
        os << "x,re,im\n";
        for (std::size_t j = 0; j < s.grid.n; ++j)
            os << fmt_g17(s.grid.node(j)) << ',' << fmt_g17(s.values[j].real()) << ','
               << fmt_g17(s.values[j].imag()) << '\n';
    } else {
        os << "x1,x2,re,im\n";
        const std::size_t n = s.grid.n;
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b) {
                const cplx v = s.values[a * n + b];
                os << fmt_g17(s.grid.node(a)) << ',' << fmt_g17(s.grid.node(b)) << ','
                   << fmt_g17(v.real()) << ',' << fmt_g17(v.imag()) << '\n';
            }
    }
}

void write_stft_bin(const std::string& path, const StftMatrix& m) {
    auto os = open_out(path, true);
    put<std::uint32_t>(os, 1u);
    put<std::uint32_t>(os, std::uint32_t(m.pg.nx));
    put<double>(os, m.pg.x0);
    put<double>(os, m.pg.dx);
    put<std::uint32_t>(os, std::uint32_t(m.pg.nxi));
    put<double>(os, m.pg.xi0);
    put<double>(os, m.pg.dxi);
    put<double>(os, m.quad_dx);
    for (const cplx& v : m.values) {
        put<double>(os, v.real());
        put<double>(os, v.imag());
    }
}

StftMatrix read_stft_bin(const std::string& path) {
    auto is = open_in(path, true);
    const auto d = get<std::uint32_t>(is);
    if (d != 1) throw io_error("stft binary: only d = 1 supported");
    StftMatrix m;
    m.pg.nx = get<std::uint32_t>(is);
    m.pg.x0 = get<double>(is);
    m.pg.dx = get<double>(is);
    m.pg.nxi = get<std::uint32_t>(is);
    m.pg.xi0 = get<double>(is);
    m.pg.dxi = get<double>(is);
    m.quad_dx = get<double>(is);
    m.values.resize(m.pg.nx * m.pg.nxi);
    for (cplx& v : m.values) {
        const double re = get<double>(is);
        const double im = get<double>(is);
        v = cplx(re, im);
    }
    return m;
}

void write_stft_csv(const std::string& path, const StftMatrix& m) {
    auto os = open_out(path, false);
    os << "x,xi,re,im\n";
    for (std::size_t j = 0; j < m.pg.nx; ++j)
        for (std::size_t k = 0; k < m.pg.nxi; ++k) {
            const cplx v = m.at(j, k);
            os << fmt_g17(m.pg.x(j)) << ',' << fmt_g17(m.pg.xi(k)) << ',' << fmt_g17(v.real())
               << ',' << fmt_g17(v.imag()) << '\n';
        }
}

void write_stft_heatmap_pgm(const std::string& path, const StftMatrix& m, double floor_linear) {
    auto os = open_out(path, true);
    const double lo = std::log10(std::max(floor_linear, 1e-300));
    double hi = lo;
    for (const cplx& v : m.values) {
        const double a = std::abs(v);
        if (a > 0.0) hi = std::max(hi, std::log10(a));
    }
    if (hi <= lo) hi = lo + 1.0;
    os << "P5\n" << m.pg.nx << " " << m.pg.nxi << "\n255\n";
    // rows: frequencies from high to low; columns: shifts left to right
    for (std::size_t k = m.pg.nxi; k-- > 0;) {
        for (std::size_t j = 0; j < m.pg.nx; ++j) {
            const double a = std::abs(m.at(j, k));
            const double l = a > 0.0 ? std::clamp(std::log10(a), lo, hi) : lo;
            const auto px = static_cast<unsigned char>(std::lround(255.0 * (l - lo) / (hi - lo)));
            os.write(reinterpret_cast<const char*>(&px), 1);
        }
    }
}

void write_stft_logmod_csv(const std::string& path, const StftMatrix& m, double floor_linear) {
    auto os = open_out(path, false);
    const double lo = std::log10(std::max(floor_linear, 1e-300));
    os << "x,xi,log10mod\n";
    for (std::size_t j = 0; j < m.pg.nx; ++j)
        for (std::size_t k = 0; k < m.pg.nxi; ++k) {
            const double a = std::abs(m.at(j, k));
            const double l = a > 0.0 ? std::max(std::log10(a), lo) : lo;
            os << fmt_g17(m.pg.x(j)) << ',' << fmt_g17(m.pg.xi(k)) << ',' << fmt_g17(l) << '\n';
        }
}

} // namespace gwf
