#include "gwf/stft.hpp"

#include "gwf/errors.hpp"
#include "gwf/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace gwf {

double GaussianWindow::eval(double t) const {
    const double u = (t - center) / width;
    return amplitude * std::exp(-0.5 * u * u);
}

double GaussianWindow::hat(double xi) const {
    return amplitude * width * std::sqrt(2.0 * M_PI) * std::exp(-0.5 * width * width * xi * xi);
}

double GaussianWindow::l2_norm_sq() const {
    return amplitude * amplitude * width * std::sqrt(M_PI);
}

GaussianWindow GaussianWindow::l2_normalized(double width) {
    GaussianWindow w;
    w.width = width;
    w.amplitude = 1.0 / std::sqrt(width * std::sqrt(M_PI));
    return w;
}

std::string GaussianWindow::id() const {
    std::ostringstream os;
    os << "gauss(s=" << width;
    if (center != 0.0) os << ",c=" << center;
    if (amplitude != 1.0) os << ",A=" << amplitude;
    os << ")";
    return os.str();
}

std::string window_id(const Window& w) {
    if (std::holds_alternative<GaussianWindow>(w)) return std::get<GaussianWindow>(w).id();
    return "sampled-window[" + std::to_string(std::get<SampledSignal>(w).values.size()) + "]";
}

SampledSignal window_signal(const Window& w, const UniformGrid& g) {
    if (std::holds_alternative<SampledSignal>(w)) {
        const SampledSignal& s = std::get<SampledSignal>(w);
        if (!s.grid.compatible(g)) throw config_error("window_signal: window grid mismatch");
        return s;
    }
    const GaussianWindow& gw = std::get<GaussianWindow>(w);
    SampledSignal out(g);
    for (std::size_t j = 0; j < g.n; ++j) out.values[j] = gw.eval(g.node(j));
    return out;
}

PhaseGrid PhaseGrid::from_grid(const UniformGrid& g) {
    PhaseGrid pg;
    pg.nx = g.n;
    pg.x0 = -g.half_extent;
    pg.dx = g.dx();
    pg.nxi = g.n;
    pg.xi0 = -g.freq_half_extent();
    pg.dxi = g.dxi();
    return pg;
}

double StftMatrix::max_abs() const {
    double m = 0.0;
    for (const cplx& v : values) m = std::max(m, std::abs(v));
    return m;
}

SampledSignal phase_shift(const SampledSignal& phi, const PhasePoint& z) {
    if (phi.grid.d != 1) throw config_error("phase_shift: d = 1 only");
    const UniformGrid& g = phi.grid;
    const double x = z.x.empty() ? 0.0 : z.x[0];
    const double xi = z.xi.empty() ? 0.0 : z.xi[0];

    const long jshift = std::lround(x / g.dx());
    SampledSignal out(g);
    bool truncated = false;
    for (std::size_t j = 0; j < g.n; ++j) {
        const long src = long(j) - jshift;
        if (src < 0 || src >= long(g.n)) {
            out.values[j] = 0.0;
            continue;
        }
        out.values[j] = phi.values[std::size_t(src)];
    }
    // anything nonzero pushed off the grid?
    for (std::size_t j = 0; j < g.n; ++j) {
        const long dst = long(j) + jshift;
        if ((dst < 0 || dst >= long(g.n)) && std::abs(phi.values[j]) > 1e-300) {
            truncated = true;
            break;
        }
    }
    for (std::size_t j = 0; j < g.n; ++j)
        out.values[j] *= std::polar(1.0, g.node(j) * xi);
    out.truncation_warning = phi.truncation_warning || truncated;
    return out;
}

void stft_column(const SampledSignal& u, const SampledSignal& window_vec, std::size_t shift_index,
                 std::vector<cplx>& out) {
    const UniformGrid& g = u.grid;
    const std::size_t n = g.n;
    out.assign(n, cplx(0.0));

    // h(y) = u(y) conj(phi(y - x_shift)), translation by index
    const long js = long(shift_index) - long(n / 2);  // node index offset from center
    std::vector<cplx> h(n, cplx(0.0));
    for (std::size_t j = 0; j < n; ++j) {
        const long src = long(j) - js;
        if (src < 0 || src >= long(n)) continue;
        h[j] = u.values[j] * std::conj(window_vec.values[std::size_t(src)]);
    }
    fft_pow2(h, -1);
    const double dx = g.dx();
    for (std::size_t j = 0; j < n; ++j) {
        const long k = long(j) - long(n / 2);
        const std::size_t src = std::size_t((k + long(n)) % long(n));
        const double sgn = (k & 1L) ? -1.0 : 1.0;
        out[j] = dx * sgn * h[src];
    }
}

namespace {

bool near_integer(double v, double tol, long& out) {
    const double r = std::round(v);
    if (std::abs(v - r) <= tol) {
        out = long(r);
        return true;
    }
    return false;
}

// numeric path: windowed FFT per shift; Gaussian windows are evaluated
// analytically at shifted nodes so arbitrary node-aligned shifts are exact
void stft_numeric(const DistributionSpec& u, const Window& w, const UniformGrid& g,
                  const PhaseGrid& pg, StftMatrix& out) {
    if (g.d != 1) throw config_error("stft: numeric path implemented for d = 1");
    const SampledSignal us = sample(u, g);
    const std::size_t n = g.n;
    const double dx = g.dx(), dxi = g.dxi();
    const double Xi = g.freq_half_extent();

    // frequency axis must sit on the dual grid for the FFT column
    long m = 0, k0 = 0;
    const bool aligned = near_integer(pg.dxi / dxi, 1e-9, m) && m >= 1 &&
                         near_integer((pg.xi0 + Xi) / dxi, 1e-6, k0) && k0 >= 0 &&
                         k0 + long(pg.nxi - 1) * m < long(n);
    if (!aligned)
        throw config_error("stft: phase-grid frequencies must align with the dual grid");

    const bool gaussian = std::holds_alternative<GaussianWindow>(w);
    const SampledSignal wv = gaussian ? SampledSignal() : std::get<SampledSignal>(w);
    const GaussianWindow gw = gaussian ? std::get<GaussianWindow>(w) : GaussianWindow{};
    if (!gaussian && !wv.grid.compatible(g))
        throw config_error("stft: sampled window grid mismatch");

    parallel_for(pg.nx, [&](std::size_t j) {
        const double xj = pg.x(j);
        std::vector<cplx> h(n, cplx(0.0));
        if (gaussian) {
            // only evaluate where the window has mass
            const double reach = 42.0 * gw.width;
            const double clo = xj + gw.center - reach, chi = xj + gw.center + reach;
            std::size_t jlo = 0, jhi = n;
            if (clo > -g.half_extent) jlo = std::size_t(std::max(0.0, (clo + g.half_extent) / dx));
            if (chi < g.half_extent)
                jhi = std::min(n, std::size_t((chi + g.half_extent) / dx) + 2);
            for (std::size_t i = jlo; i < jhi; ++i)
                h[i] = us.values[i] * gw.eval(g.node(i) - xj);
        } else {
            const long js = std::lround(xj / dx);
            for (std::size_t i = 0; i < n; ++i) {
                const long src = long(i) - js;
                if (src < 0 || src >= long(n)) continue;
                h[i] = us.values[i] * std::conj(wv.values[std::size_t(src)]);
            }
        }
        fft_pow2(h, -1);
        for (std::size_t kk = 0; kk < pg.nxi; ++kk) {
            const long k = k0 + long(kk) * m - long(n / 2);
            const std::size_t src = std::size_t((k + long(n)) % long(n));
            const double sgn = (k & 1L) ? -1.0 : 1.0;
            out.at(j, kk) = dx * sgn * h[src];
        }
    });
}

} // namespace

StftMatrix stft(const DistributionSpec& u, const Window& w, const UniformGrid& g,
                const PhaseGrid& pg, StftPath path) {
    StftMatrix out;
    out.pg = pg;
    out.values.assign(pg.nx * pg.nxi, cplx(0.0));
    out.quad_dx = g.dx();
    out.window_id = window_id(w);

    const bool catalog = u.kind != DistributionSpec::Kind::Sampled;
    const bool gaussian_window = std::holds_alternative<GaussianWindow>(w);

    StftPath chosen = path;
    if (chosen == StftPath::Auto) {
        if (u.sampleable())
            chosen = StftPath::Numeric;
        else if (catalog && gaussian_window)
            chosen = StftPath::Analytic;
        else
            throw config_error("stft: no applicable path for this input");
    }

    if (chosen == StftPath::Analytic) {
        if (!catalog || !gaussian_window)
            throw config_error("stft: analytic path needs a catalog distribution and a Gaussian window");
        AnalyticStftEvaluator ev(u, std::get<GaussianWindow>(w));
        parallel_for(pg.nx, [&](std::size_t j) {
            const double xj = pg.x(j);
            for (std::size_t k = 0; k < pg.nxi; ++k) out.at(j, k) = ev.eval(xj, pg.xi(k));
        });
        return out;
    }

    if (u.kind == DistributionSpec::Kind::Delta)
        throw numeric_error("stft: Delta on the numeric path; use the analytic path");
    stft_numeric(u, w, g, pg, out);
    return out;
}

StftMatrix stft(const DistributionSpec& u, const Window& w, const UniformGrid& g, StftPath path) {
    return stft(u, w, g, PhaseGrid::from_grid(g), path);
}

SampledSignal stft_adjoint(const StftMatrix& F, const Window& w, const UniformGrid& g) {
    if (g.d != 1) throw config_error("stft_adjoint: d = 1 only");
    const std::size_t n = g.n;
    const PhaseGrid& pg = F.pg;
    const double cell = pg.dx * pg.dxi;

    const bool gaussian = std::holds_alternative<GaussianWindow>(w);
    const SampledSignal wv = gaussian ? SampledSignal() : std::get<SampledSignal>(w);
    const GaussianWindow gw = gaussian ? std::get<GaussianWindow>(w) : GaussianWindow{};

    // fast path: pg is exactly the default grid x dual-grid sampling
    const PhaseGrid def = PhaseGrid::from_grid(g);
    const bool is_default = pg.nx == def.nx && pg.nxi == def.nxi &&
                            std::abs(pg.dx - def.dx) < 1e-12 && std::abs(pg.dxi - def.dxi) < 1e-12 &&
                            std::abs(pg.x0 - def.x0) < 1e-9 && std::abs(pg.xi0 - def.xi0) < 1e-9;

    SampledSignal out(g);
    if (is_default) {
        // e^{i t_m xi_k} = (-1)^kappa e^{2pi i m kappa / n}, kappa = k - n/2,
        // so each shift contributes one unnormalized inverse FFT
        for (std::size_t j = 0; j < pg.nx; ++j) {
            std::vector<cplx> tmp(n, cplx(0.0));
            for (std::size_t k = 0; k < n; ++k) {
                const long kap = long(k) - long(n / 2);
                const std::size_t dst = std::size_t((kap + long(n)) % long(n));
                const double sgn = (kap & 1L) ? -1.0 : 1.0;
                tmp[dst] = sgn * F.at(j, k);
            }
            fft_pow2(tmp, +1);
            const double xj = pg.x(j);
            const long js = std::lround(xj / g.dx());
            for (std::size_t mm = 0; mm < n; ++mm) {
                cplx wc;
                if (gaussian) {
                    wc = gw.eval(g.node(mm) - xj);
                } else {
                    const long src = long(mm) - js;
                    wc = (src >= 0 && src < long(n)) ? wv.values[std::size_t(src)] : cplx(0.0);
                }
                out.values[mm] += tmp[mm] * wc * cell;
            }
        }
        return out;
    }

    // general path: direct sums with a phase recurrence over frequencies
    parallel_for(n, [&](std::size_t mm) {
        const double t = g.node(mm);
        cplx acc(0.0);
        for (std::size_t j = 0; j < pg.nx; ++j) {
            const double xj = pg.x(j);
            cplx wc;
            if (gaussian) {
                wc = gw.eval(t - xj);
            } else {
                const long src = long(mm) - std::lround(xj / g.dx());
                wc = (src >= 0 && src < long(n)) ? wv.values[std::size_t(src)] : cplx(0.0);
            }
            if (std::abs(wc) < 1e-300) continue;
            const cplx step = std::polar(1.0, t * pg.dxi);
            cplx ph = std::polar(1.0, t * pg.xi0);
            cplx inner(0.0);
            for (std::size_t k = 0; k < pg.nxi; ++k) {
                inner += F.at(j, k) * ph;
                ph *= step;
            }
            acc += inner * wc;
        }
        out.values[mm] = acc * cell;
    });
    return out;
}

namespace {

// forward symmetric-grid DFT along one axis of a phase matrix
void phase_axis_fft(std::vector<cplx>& v, std::size_t nrow, std::size_t ncol, bool along_rows,
                    double spacing) {
    const std::size_t n = along_rows ? ncol : nrow;
    const std::size_t nlines = along_rows ? nrow : ncol;
    std::vector<cplx> line(n);
    for (std::size_t l = 0; l < nlines; ++l) {
        for (std::size_t j = 0; j < n; ++j)
            line[j] = along_rows ? v[l * ncol + j] : v[j * ncol + l];
        fft_pow2(line, -1);
        std::vector<cplx> outl(n);
        for (std::size_t j = 0; j < n; ++j) {
            const long k = long(j) - long(n / 2);
            const std::size_t src = std::size_t((k + long(n)) % long(n));
            const double sgn = (k & 1L) ? -1.0 : 1.0;
            outl[j] = spacing * sgn * line[src];
        }
        for (std::size_t j = 0; j < n; ++j)
            (along_rows ? v[l * ncol + j] : v[j * ncol + l]) = outl[j];
    }
}

} // namespace

double stft_fourier_identity_check(const DistributionSpec& f, const Window& w,
                                   const UniformGrid& g) {
    const StftMatrix V = stft(f, w, g, StftPath::Numeric);
    const std::size_t n = g.n;

    // 2-d transform of V(x, xi) with e^{-i(x eta + xi y)}; eta lands on the
    // dual-of-x grid (= the xi grid), y on the dual-of-xi grid (= the x grid)
    std::vector<cplx> T = V.values;
    phase_axis_fft(T, n, n, false, V.pg.dx);   // along x (rows index x)
    phase_axis_fft(T, n, n, true, V.pg.dxi);   // along xi

    const SampledSignal fs = sample(f, g);
    const SampledSignal wvec = window_signal(w, g);
    const SampledSignal what = fourier(wvec);

    double dev = 0.0;
    for (std::size_t a = 0; a < n; ++a) {        // eta index
        const double eta = V.pg.xi(a);
        const cplx whc = std::conj(what.values[a]);
        for (std::size_t b = 0; b < n; ++b) {    // y index
            const double y = V.pg.x(b);
            // f(-y): reflect the index; -y_b = y_{n-b} for b >= 1
            cplx fm(0.0);
            if (b >= 1) fm = fs.values[n - b];
            const cplx rhs =
                std::pow(2.0 * M_PI, g.d) * std::polar(1.0, eta * y) * fm * whc;
            dev = std::max(dev, std::abs(T[a * n + b] - rhs));
        }
    }
    return dev;
}

WindowChangeBound window_change_bound_check(const DistributionSpec& f, const Window& phi,
                                            const Window& psi, const Window& gamma,
                                            const UniformGrid& g, double tol) {
    const SampledSignal gs = window_signal(gamma, g);
    const SampledSignal ps = window_signal(psi, g);
    const cplx ip = quadrature_inner(gs, ps);
    if (std::abs(ip) < 1e-8 * quadrature_norm(gs) * quadrature_norm(ps))
        throw numeric_error("window_change_bound_check: <gamma,psi> too close to zero");

    const StftMatrix Vphi_f = stft(f, phi, g);
    const StftMatrix Vpsi_f = stft(f, psi, g);
    const StftMatrix Vphi_g =
        stft(DistributionSpec::from_sampled(gs), phi, g, StftPath::Numeric);

    // linear 2-d convolution of |Vpsi_f| and |Vphi_g| by zero-padded FFT
    const std::size_t n = g.n, N = 2 * n;
    std::vector<cplx> A(N * N, cplx(0.0)), B(N * N, cplx(0.0));
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) {
            A[j * N + k] = std::abs(Vpsi_f.at(j, k));
            B[j * N + k] = std::abs(Vphi_g.at(j, k));
        }
    auto fft2 = [N](std::vector<cplx>& M, int sign) {
        std::vector<cplx> line(N);
        for (std::size_t r = 0; r < N; ++r) fft_pow2(&M[r * N], N, sign);
        for (std::size_t c = 0; c < N; ++c) {
            for (std::size_t r = 0; r < N; ++r) line[r] = M[r * N + c];
            fft_pow2(line, sign);
            for (std::size_t r = 0; r < N; ++r) M[r * N + c] = line[r];
        }
    };
    fft2(A, -1);
    fft2(B, -1);
    for (std::size_t i = 0; i < N * N; ++i) A[i] *= B[i];
    fft2(A, +1);
    const double inv = 1.0 / double(N * N);
    const double cellw = Vphi_f.pg.dx * Vphi_f.pg.dxi;
    const double cst = cellw * inv / (std::pow(2.0 * M_PI, g.d) * std::abs(ip));

    WindowChangeBound res;
    // conv index (j+j', k+k'); our node (j,k) corresponds to offsets j+n/2 in
    // the padded array (x = -L + j dx = sum of two axis origins + (j + n/2) dx)
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) {
            const double lhs = std::abs(Vphi_f.at(j, k));
            const double rhs = cst * std::real(A[(j + n / 2) * N + (k + n / 2)]);
            res.max_lhs = std::max(res.max_lhs, lhs);
            res.max_rhs = std::max(res.max_rhs, rhs);
            res.max_violation = std::max(res.max_violation, lhs - rhs);
        }
    res.pass = res.max_violation <= tol * res.max_rhs;
    return res;
}

// ---------------------------------------------------------------------------
// evaluators

AnalyticStftEvaluator::AnalyticStftEvaluator(DistributionSpec u, GaussianWindow w)
    : u_(std::move(u)), w_(w) {
    if (u_.kind == DistributionSpec::Kind::Sampled)
        throw config_error("AnalyticStftEvaluator: sampled signals need the quadrature evaluator");
    if (u_.kind == DistributionSpec::Kind::Chirp && u_.chirp_c == 0.0)
        throw config_error("AnalyticStftEvaluator: chirp with c = 0");
}

namespace {

struct Quad {  // integrand exp(-a y^2 + b y + c), Re a > 0
    cplx a, b, c;
};

// closed form: A * sqrt(pi/a) * exp(b^2/(4a) + c)
cplx quad_integral(const Quad& q, double amplitude) {
    const cplx e = q.b * q.b / (4.0 * q.a) + q.c;
    return amplitude * std::sqrt(M_PI / q.a) * std::exp(e);
}

double quad_log_abs(const Quad& q, double amplitude) {
    const cplx e = q.b * q.b / (4.0 * q.a) + q.c;
    return std::log(amplitude) + 0.5 * std::log(std::abs(M_PI / q.a)) + e.real();
}

} // namespace

cplx AnalyticStftEvaluator::eval(double x, double xi) const {
    const double s = w_.width, cw = w_.center, A = w_.amplitude;
    const double X = x + cw;
    switch (u_.kind) {
    case DistributionSpec::Kind::Delta: {
        const double xb = u_.center.empty() ? 0.0 : u_.center[0];
        return std::polar(A * std::exp(-0.5 * (xb - X) * (xb - X) / (s * s)), -xb * xi);
    }
    case DistributionSpec::Kind::Const: {
        Quad q{cplx(1.0 / (2 * s * s)), cplx(X / (s * s), -xi), cplx(-X * X / (2 * s * s))};
        return quad_integral(q, A);
    }
    case DistributionSpec::Kind::PlaneWave: {
        const double xb = u_.xi.empty() ? 0.0 : u_.xi[0];
        Quad q{cplx(1.0 / (2 * s * s)), cplx(X / (s * s), xb - xi), cplx(-X * X / (2 * s * s))};
        return quad_integral(q, A);
    }
    case DistributionSpec::Kind::Gaussian: {
        const double cu = u_.center.empty() ? 0.0 : u_.center[0];
        const double ww = u_.width;
        Quad q{cplx(1.0 / (2 * ww * ww) + 1.0 / (2 * s * s)),
               cplx(cu / (ww * ww) + X / (s * s), -xi),
               cplx(-cu * cu / (2 * ww * ww) - X * X / (2 * s * s))};
        return quad_integral(q, A);
    }
    case DistributionSpec::Kind::Chirp: {
        Quad q{cplx(1.0 / (2 * s * s), -0.5 * u_.chirp_c), cplx(X / (s * s), -xi),
               cplx(-X * X / (2 * s * s))};
        return quad_integral(q, A);
    }
    default:
        throw config_error("AnalyticStftEvaluator: unsupported kind");
    }
}

double AnalyticStftEvaluator::log_abs(double x, double xi) const {
    const double s = w_.width, cw = w_.center, A = w_.amplitude;
    const double X = x + cw;
    switch (u_.kind) {
    case DistributionSpec::Kind::Delta: {
        const double xb = u_.center.empty() ? 0.0 : u_.center[0];
        return std::log(A) - 0.5 * (xb - X) * (xb - X) / (s * s);
    }
    case DistributionSpec::Kind::Const: {
        Quad q{cplx(1.0 / (2 * s * s)), cplx(X / (s * s), -xi), cplx(-X * X / (2 * s * s))};
        return quad_log_abs(q, A);
    }
    case DistributionSpec::Kind::PlaneWave: {
        const double xb = u_.xi.empty() ? 0.0 : u_.xi[0];
        Quad q{cplx(1.0 / (2 * s * s)), cplx(X / (s * s), xb - xi), cplx(-X * X / (2 * s * s))};
        return quad_log_abs(q, A);
    }
    case DistributionSpec::Kind::Gaussian: {
        const double cu = u_.center.empty() ? 0.0 : u_.center[0];
        const double ww = u_.width;
        Quad q{cplx(1.0 / (2 * ww * ww) + 1.0 / (2 * s * s)),
               cplx(cu / (ww * ww) + X / (s * s), -xi),
               cplx(-cu * cu / (2 * ww * ww) - X * X / (2 * s * s))};
        return quad_log_abs(q, A);
    }
    case DistributionSpec::Kind::Chirp: {
        Quad q{cplx(1.0 / (2 * s * s), -0.5 * u_.chirp_c), cplx(X / (s * s), -xi),
               cplx(-X * X / (2 * s * s))};
        return quad_log_abs(q, A);
    }
    default:
        throw config_error("AnalyticStftEvaluator: unsupported kind");
    }
}

std::string AnalyticStftEvaluator::id() const { return "analytic:" + u_.id() + "/" + w_.id(); }

QuadratureStftEvaluator::QuadratureStftEvaluator(SampledSignal u, GaussianWindow w,
                                                 double support_eps)
    : u_(std::move(u)), w_(w) {
    if (u_.grid.d != 1) throw config_error("QuadratureStftEvaluator: d = 1 only");
    const std::size_t n = u_.grid.n;
    lo_ = n;
    hi_ = 0;
    for (std::size_t j = 0; j < n; ++j) {
        if (std::abs(u_.values[j]) > support_eps) {
            lo_ = std::min(lo_, j);
            hi_ = std::max(hi_, j + 1);
        }
    }
    if (lo_ >= hi_) {
        lo_ = 0;
        hi_ = 0;
    }
}

cplx QuadratureStftEvaluator::eval(double x, double xi) const {
    const double dx = u_.grid.dx();
    cplx acc(0.0);
    for (std::size_t j = lo_; j < hi_; ++j) {
        const double y = u_.grid.node(j);
        const double wval = w_.eval(y - x);
        if (wval == 0.0) continue;
        acc += u_.values[j] * wval * std::polar(1.0, -y * xi);
    }
    return acc * dx;
}

double QuadratureStftEvaluator::log_abs(double x, double xi) const {
    const double m = std::abs(eval(x, xi));
    return m > 0.0 ? std::log(m) : -1e300;
}

std::string QuadratureStftEvaluator::id() const {
    return "quadrature:sampled/" + w_.id();
}

std::unique_ptr<StftEvaluator> make_evaluator(const DistributionSpec& u, const GaussianWindow& w) {
    if (u.kind == DistributionSpec::Kind::Sampled)
        return std::make_unique<QuadratureStftEvaluator>(u.sampled, w);
    return std::make_unique<AnalyticStftEvaluator>(u, w);
}

} // namespace gwf
