#include "gwf/grid.hpp"

#include "gwf/errors.hpp"

#include <cmath>
#include <sstream>

namespace gwf {

UniformGrid::UniformGrid(int d_, std::size_t n_, double L) : d(d_), n(n_), half_extent(L) {
    if (d != 1 && d != 2) throw config_error("UniformGrid: d must be 1 or 2");
    if (!is_pow2(n)) throw config_error("UniformGrid: n must be a power of two");
    if (!(L > 0.0)) throw config_error("UniformGrid: half extent must be positive");
}

std::size_t UniformGrid::size() const {
    std::size_t s = n;
    for (int i = 1; i < d; ++i) s *= n;
    return s;
}

UniformGrid square_phase_grid(std::size_t n, int d) {
    return UniformGrid(d, n, std::sqrt(M_PI * double(n) / 2.0));
}

bool UniformGrid::compatible(const UniformGrid& o) const {
    return d == o.d && n == o.n &&
           std::abs(half_extent - o.half_extent) <= 1e-9 * std::max(half_extent, o.half_extent);
}

DistributionSpec DistributionSpec::delta(std::vector<double> center) {
    DistributionSpec s;
    s.kind = Kind::Delta;
    s.center = std::move(center);
    return s;
}

DistributionSpec DistributionSpec::constant() {
    DistributionSpec s;
    s.kind = Kind::Const;
    return s;
}

DistributionSpec DistributionSpec::plane_wave(std::vector<double> xi) {
    DistributionSpec s;
    s.kind = Kind::PlaneWave;
    s.xi = std::move(xi);
    return s;
}

DistributionSpec DistributionSpec::chirp(double c) {
    if (c == 0.0) throw config_error("Chirp requires c != 0");
    DistributionSpec s;
    s.kind = Kind::Chirp;
    s.chirp_c = c;
    return s;
}

DistributionSpec DistributionSpec::gaussian(std::vector<double> center, double width) {
    if (!(width > 0.0)) throw config_error("Gaussian requires positive width");
    DistributionSpec s;
    s.kind = Kind::Gaussian;
    s.center = std::move(center);
    s.width = width;
    return s;
}

DistributionSpec DistributionSpec::from_sampled(SampledSignal sig) {
    DistributionSpec s;
    s.kind = Kind::Sampled;
    s.sampled = std::move(sig);
    return s;
}

std::string DistributionSpec::id() const {
    std::ostringstream os;
    switch (kind) {
    case Kind::Delta:
        os << "delta";
        if (!center.empty()) os << "@" << center[0];
        break;
    case Kind::Const:
        os << "const";
        break;
    case Kind::PlaneWave:
        os << "planewave";
        if (!xi.empty()) os << "@" << xi[0];
        break;
    case Kind::Chirp:
        os << "chirp(" << chirp_c << ")";
        break;
    case Kind::Gaussian:
        os << "gaussian(w=" << width << ")";
        break;
    case Kind::Sampled:
        os << "sampled[" << sampled.values.size() << "]";
        break;
    }
    return os.str();
}

namespace {

double coord(const std::vector<double>& v, std::size_t i) { return i < v.size() ? v[i] : 0.0; }

} // namespace

SampledSignal sample(const DistributionSpec& spec, const UniformGrid& grid) {
    if (spec.kind == DistributionSpec::Kind::Delta)
        throw numeric_error("Delta is not sampleable; use the analytic STFT path");
    if (spec.kind == DistributionSpec::Kind::Sampled) {
        if (!spec.sampled.grid.compatible(grid))
            throw config_error("sample: stored signal lives on a different grid");
        return spec.sampled;
    }
    if (spec.kind == DistributionSpec::Kind::Chirp) {
        if (grid.d != 1) throw config_error("Chirp requires d = 1");
        const double L = grid.half_extent;
        if (std::abs(spec.chirp_c) * L >= grid.freq_half_extent())
            throw numeric_error("chirp aliasing guard: require |c|*L < pi*n/(2L)");
    }

    SampledSignal out(grid);
    const std::size_t n = grid.n;
    const std::size_t total = grid.size();
    for (std::size_t idx = 0; idx < total; ++idx) {
        double x[2] = {0.0, 0.0};
        if (grid.d == 1) {
            x[0] = grid.node(idx);
        } else {
            x[0] = grid.node(idx / n);
            x[1] = grid.node(idx % n);
        }
        cplx v(0.0);
        switch (spec.kind) {
        case DistributionSpec::Kind::Const:
            v = 1.0;
            break;
        case DistributionSpec::Kind::PlaneWave: {
            double ph = 0.0;
            for (int a = 0; a < grid.d; ++a) ph += x[a] * coord(spec.xi, a);
            v = std::polar(1.0, ph);
            break;
        }
        case DistributionSpec::Kind::Chirp:
            v = std::polar(1.0, 0.5 * spec.chirp_c * x[0] * x[0]);
            break;
        case DistributionSpec::Kind::Gaussian: {
            double q = 0.0;
            for (int a = 0; a < grid.d; ++a) {
                const double t = x[a] - coord(spec.center, a);
                q += t * t;
            }
            v = std::exp(-q / (2.0 * spec.width * spec.width));
            break;
        }
        default:
            break;
        }
        out.values[idx] = v;
    }
    return out;
}

namespace {

// 1-d pass of the symmetric-grid transform along the given axis.
// forward: out[j] = dx * (-1)^k * DFT[in]_k with k = j - n/2
// inverse: out[m] = dxi/(2pi) * sum_k in[k] (-1)^k e^{+2pi i m k/n}
void axis_transform(std::vector<cplx>& v, const UniformGrid& g, int axis, bool forward) {
    const std::size_t n = g.n;
    const std::size_t stride = (g.d == 2 && axis == 0) ? n : 1;
    const std::size_t nlines = g.size() / n;
    // g is the input grid; on the inverse path its spacing is already dxi.
    const double scale = forward ? g.dx() : g.dx() / (2.0 * M_PI);

    std::vector<cplx> line(n);
    for (std::size_t l = 0; l < nlines; ++l) {
        // base offset of this line
        std::size_t base;
        if (g.d == 1)
            base = 0;
        else if (axis == 0)
            base = l;  // stride n over rows, lines indexed by column
        else
            base = l * n;

        for (std::size_t j = 0; j < n; ++j) line[j] = v[base + j * stride];

        if (forward) {
            fft_pow2(line, -1);
            // reorder DFT index k (mod n) to symmetric index j = k + n/2
            std::vector<cplx> out(n);
            for (std::size_t j = 0; j < n; ++j) {
                const long k = long(j) - long(n / 2);
                const std::size_t src = std::size_t((k + long(n)) % long(n));
                const double sgn = (k & 1L) ? -1.0 : 1.0;
                out[j] = scale * sgn * line[src];
            }
            line.swap(out);
        } else {
            // scatter symmetric index to DFT layout with the phase factor
            std::vector<cplx> tmp(n);
            for (std::size_t j = 0; j < n; ++j) {
                const long k = long(j) - long(n / 2);
                const std::size_t dst = std::size_t((k + long(n)) % long(n));
                const double sgn = (k & 1L) ? -1.0 : 1.0;
                tmp[dst] = sgn * line[j];
            }
            fft_pow2(tmp, +1);
            for (std::size_t j = 0; j < n; ++j) line[j] = scale * tmp[j];
            // inverse output is indexed by m directly (x_m = -L + m dx)
        }

        for (std::size_t j = 0; j < n; ++j) v[base + j * stride] = line[j];
    }
}

} // namespace

SampledSignal fourier(const SampledSignal& f) {
    SampledSignal out = f;
    for (int axis = 0; axis < f.grid.d; ++axis) axis_transform(out.values, f.grid, axis, true);
    out.grid = f.grid.dual();
    return out;
}

SampledSignal inverse_fourier(const SampledSignal& fhat) {
    SampledSignal out = fhat;
    // the primal grid of a dual grid: L = pi*n/(2*Xi)
    const UniformGrid primal = fhat.grid.dual();
    for (int axis = 0; axis < fhat.grid.d; ++axis)
        axis_transform(out.values, fhat.grid, axis, false);
    out.grid = primal;
    return out;
}

cplx quadrature_inner(const SampledSignal& f, const SampledSignal& g) {
    if (!f.grid.compatible(g.grid)) throw config_error("quadrature_inner: grid mismatch");
    cplx s(0.0);
    for (std::size_t i = 0; i < f.values.size(); ++i) s += f.values[i] * std::conj(g.values[i]);
    double w = 1.0;
    for (int a = 0; a < f.grid.d; ++a) w *= f.grid.dx();
    return s * w;
}

double quadrature_norm(const SampledSignal& f) {
    double s = 0.0;
    for (const cplx& v : f.values) s += std::norm(v);
    double w = 1.0;
    for (int a = 0; a < f.grid.d; ++a) w *= f.grid.dx();
    return std::sqrt(s * w);
}

} // namespace gwf
