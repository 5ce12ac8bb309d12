#include "gwf/frames.hpp"

#include "gwf/errors.hpp"
#include "gwf/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include <json.hpp>

namespace gwf {

Lattice::Lattice(double a0, double b0, long km, long nm)
    : alpha0(a0), beta0(b0), kmax(km), nmax(nm) {
    if (!(a0 > 0.0) || !(b0 > 0.0)) throw config_error("Lattice: alpha0, beta0 must be positive");
    if (km < 0 || nm < 0) throw config_error("Lattice: nonnegative truncation bounds required");
}

Lattice Lattice::for_grid(const UniformGrid& g, double a0, double b0, double margin_x,
                          double margin_xi) {
    const double Lx = g.half_extent - margin_x;
    const double Lxi = g.freq_half_extent() - margin_xi;
    if (Lx <= 0.0 || Lxi <= 0.0) throw config_error("Lattice::for_grid: margins exceed the grid");
    return Lattice(a0, b0, long(std::floor(Lx / a0)), long(std::floor(Lxi / b0)));
}

cplx& LatticeCoeffs::at(long k, long n) {
    return values[std::size_t(k + lattice.kmax) * lattice.count_n() + std::size_t(n + lattice.nmax)];
}

const cplx& LatticeCoeffs::at(long k, long n) const {
    return values[std::size_t(k + lattice.kmax) * lattice.count_n() + std::size_t(n + lattice.nmax)];
}

namespace {

// window translated by x as a grid vector; Gaussians are exact at any shift,
// sampled windows shift by whole nodes
std::vector<cplx> shifted_window(const Window& w, const UniformGrid& g, double xshift) {
    const std::size_t n = g.n;
    std::vector<cplx> out(n, cplx(0.0));
    if (std::holds_alternative<GaussianWindow>(w)) {
        const GaussianWindow& gw = std::get<GaussianWindow>(w);
        for (std::size_t j = 0; j < n; ++j) out[j] = gw.eval(g.node(j) - xshift);
        return out;
    }
    const SampledSignal& s = std::get<SampledSignal>(w);
    if (!s.grid.compatible(g)) throw config_error("gabor: sampled window grid mismatch");
    const double ratio = xshift / g.dx();
    const long js = std::lround(ratio);
    if (std::abs(ratio - double(js)) > 1e-9)
        throw config_error("gabor: lattice x-step must be a multiple of dx for sampled windows");
    for (std::size_t j = 0; j < n; ++j) {
        const long src = long(j) - js;
        if (src >= 0 && src < long(n)) out[j] = s.values[std::size_t(src)];
    }
    return out;
}

} // namespace

LatticeCoeffs analysis(const GaborSystem& g, const SampledSignal& f) {
    if (!f.grid.compatible(g.grid)) throw config_error("analysis: signal grid mismatch");
    const Lattice& lat = g.lattice;
    if (lat.alpha0 * double(lat.kmax) > g.grid.half_extent ||
        lat.beta0 * double(lat.nmax) > g.grid.freq_half_extent())
        throw config_error("analysis: lattice exceeds the grid");

    const std::size_t n = g.grid.n;
    const double dx = g.grid.dx();
    LatticeCoeffs c(lat);
    const std::size_t ncount = lat.count_n();

    parallel_for(lat.count_k(), [&](std::size_t ki) {
        const long k = long(ki) - lat.kmax;
        const std::vector<cplx> wv = shifted_window(g.window, g.grid, lat.x_of(k));
        // h(y) = f(y) conj(phi(y - alpha k)) dx, then c(n) = sum_y h e^{-i y beta n}
        std::vector<cplx> acc(ncount, cplx(0.0));
        for (std::size_t j = 0; j < n; ++j) {
            const cplx h = f.values[j] * std::conj(wv[j]) * dx;
            if (std::abs(h) < 1e-300) continue;
            const double y = g.grid.node(j);
            cplx ph = std::polar(1.0, y * lat.beta0 * double(lat.nmax));  // n = -nmax
            const cplx step = std::polar(1.0, -y * lat.beta0);
            for (std::size_t ni = 0; ni < ncount; ++ni) {
                acc[ni] += h * ph;
                ph *= step;
            }
        }
        for (std::size_t ni = 0; ni < ncount; ++ni)
            c.values[ki * ncount + ni] = acc[ni];
    });
    return c;
}

SampledSignal synthesis(const GaborSystem& g, const LatticeCoeffs& c) {
    const Lattice& lat = c.lattice;
    const std::size_t n = g.grid.n;
    SampledSignal out(g.grid);
    const std::size_t ncount = lat.count_n();

    for (std::size_t ki = 0; ki < lat.count_k(); ++ki) {
        const long k = long(ki) - lat.kmax;
        const std::vector<cplx> wv = shifted_window(g.window, g.grid, lat.x_of(k));
        for (std::size_t j = 0; j < n; ++j) {
            if (std::abs(wv[j]) < 1e-300) continue;
            const double y = g.grid.node(j);
            cplx ph = std::polar(1.0, -y * lat.beta0 * double(lat.nmax));
            const cplx step = std::polar(1.0, y * lat.beta0);
            cplx inner(0.0);
            for (std::size_t ni = 0; ni < ncount; ++ni) {
                inner += c.values[ki * ncount + ni] * ph;
                ph *= step;
            }
            out.values[j] += inner * wv[j];
        }
    }
    return out;
}

SampledSignal frame_operator(const GaborSystem& g, const SampledSignal& f) {
    return frame_operator(g, f, g.window);
}

SampledSignal frame_operator(const GaborSystem& g, const SampledSignal& f, const Window& psi) {
    const LatticeCoeffs c = analysis(g, f);
    GaborSystem synth = g;
    synth.window = psi;
    return synthesis(synth, c);
}

namespace {

cplx dot(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    cplx s(0.0);
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * std::conj(b[i]);
    return s;
}

double nrm(const std::vector<cplx>& a) { return std::sqrt(std::abs(dot(a, a))); }

using Op = std::function<void(const std::vector<cplx>&, std::vector<cplx>&)>;

// conjugate gradients for a Hermitian positive definite operator
struct CgResult {
    std::vector<cplx> x;
    std::vector<double> residuals;
    bool converged = false;
};

CgResult cg_solve(const Op& apply, const std::vector<cplx>& b, double tol, int max_iter) {
    const std::size_t n = b.size();
    CgResult res;
    res.x.assign(n, cplx(0.0));
    std::vector<cplx> r = b, p = b, Ap(n);
    const double bnorm = nrm(b);
    if (bnorm == 0.0) {
        res.converged = true;
        return res;
    }
    double rs = std::abs(dot(r, r));
    for (int it = 0; it < max_iter; ++it) {
        apply(p, Ap);
        const double pAp = std::real(dot(Ap, p));
        if (pAp <= 0.0) throw numeric_error("cg: operator lost positivity");
        const double alpha = rs / pAp;
        for (std::size_t i = 0; i < n; ++i) {
            res.x[i] += alpha * p[i];
            r[i] -= alpha * Ap[i];
        }
        const double rs_new = std::abs(dot(r, r));
        const double rel = std::sqrt(rs_new) / bnorm;
        res.residuals.push_back(rel);
        if (rel < tol) {
            res.converged = true;
            return res;
        }
        // stagnation: no progress across a window of iterations
        const std::size_t w = 60;
        if (res.residuals.size() > w &&
            rel > 0.5 * res.residuals[res.residuals.size() - 1 - w])
            break;
        const double beta = rs_new / rs;
        rs = rs_new;
        for (std::size_t i = 0; i < n; ++i) p[i] = r[i] + beta * p[i];
    }
    return res;
}

std::vector<cplx> seeded_vector(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g(0.0, 1.0);
    std::vector<cplx> v(n);
    for (cplx& c : v) c = cplx(g(rng), g(rng));
    return v;
}

} // namespace

FrameBounds frame_bounds(const GaborSystem& g, double inner_fraction, int max_iter, double tol) {
    const std::size_t n = g.grid.n;
    const double lim = inner_fraction * g.grid.half_extent;

    std::vector<bool> inner(n);
    for (std::size_t j = 0; j < n; ++j) inner[j] = std::abs(g.grid.node(j)) <= lim;

    const auto project = [&](std::vector<cplx>& v) {
        for (std::size_t j = 0; j < n; ++j)
            if (!inner[j]) v[j] = cplx(0.0);
    };

    const Op apply = [&](const std::vector<cplx>& in, std::vector<cplx>& out) {
        SampledSignal f(g.grid);
        f.values = in;
        project(f.values);
        const SampledSignal Sf = frame_operator(g, f);
        out = Sf.values;
        project(out);
    };

    FrameBounds fb;

    // largest eigenvalue: power iteration
    {
        std::vector<cplx> v = seeded_vector(n, 0x9e3779b97f4a7c15ull);
        project(v);
        const double nv = nrm(v);
        for (cplx& c : v) c /= nv;
        std::vector<cplx> w(n);
        double lam = 0.0, lam_prev = -1.0;
        int it = 0;
        for (; it < max_iter; ++it) {
            apply(v, w);
            lam = std::real(dot(w, v));
            double res = 0.0;
            for (std::size_t i = 0; i < n; ++i) res += std::norm(w[i] - lam * v[i]);
            fb.residual_B = std::sqrt(res) / std::max(lam, 1e-300);
            const double nw = nrm(w);
            for (std::size_t i = 0; i < n; ++i) v[i] = w[i] / nw;
            if (std::abs(lam - lam_prev) <= tol * std::abs(lam) && fb.residual_B < 1e-6) break;
            lam_prev = lam;
        }
        if (it == max_iter) throw numeric_error("frame_bounds: power iteration did not converge");
        fb.B = lam;
        fb.iterations_B = it;
    }

    // smallest eigenvalue: inverse power iteration with CG solves
    {
        std::vector<cplx> v = seeded_vector(n, 0xc2b2ae3d27d4eb4full);
        project(v);
        const double nv = nrm(v);
        for (cplx& c : v) c /= nv;
        double lam = 0.0, lam_prev = -1.0;
        int it = 0;
        for (; it < max_iter; ++it) {
            CgResult sol = cg_solve(apply, v, 1e-12, 4000);
            if (!sol.converged)
                throw numeric_error("frame_bounds: CG failed inside inverse power iteration");
            project(sol.x);
            const double nw = nrm(sol.x);
            for (std::size_t i = 0; i < n; ++i) v[i] = sol.x[i] / nw;
            std::vector<cplx> Av(n);
            apply(v, Av);
            lam = std::real(dot(Av, v));
            double res = 0.0;
            for (std::size_t i = 0; i < n; ++i) res += std::norm(Av[i] - lam * v[i]);
            fb.residual_A = std::sqrt(res) / std::max(lam, 1e-300);
            if (std::abs(lam - lam_prev) <= tol * std::abs(lam) && fb.residual_A < 1e-6) break;
            lam_prev = lam;
        }
        if (it == max_iter)
            throw numeric_error("frame_bounds: inverse power iteration did not converge");
        fb.A = lam;
        fb.iterations_A = it;
    }

    fb.is_frame = fb.A > 1e-10 * fb.B;
    return fb;
}

std::string FrameBounds::to_json() const {
    nlohmann::json j;
    j["A"] = A;
    j["B"] = B;
    j["ratio"] = (A > 0.0) ? B / A : 0.0;
    j["iterations"] = {{"B", iterations_B}, {"A", iterations_A}};
    j["residual"] = {{"B", residual_B}, {"A", residual_A}};
    j["is_frame"] = is_frame;
    return j.dump();
}

SampledSignal dual_window(const GaborSystem& g, double cg_tol, int max_iter) {
    if (g.bounds) {
        const auto [A, B] = *g.bounds;
        if (!(A > 0.0) || B / A >= 1e8)
            throw numeric_error("dual_window: frame bounds unusable (B/A too large)");
    }
    const SampledSignal phi = window_signal(g.window, g.grid);
    const Op apply = [&](const std::vector<cplx>& in, std::vector<cplx>& out) {
        SampledSignal f(g.grid);
        f.values = in;
        out = frame_operator(g, f).values;
    };
    CgResult sol = cg_solve(apply, phi.values, cg_tol, max_iter);
    if (!sol.converged) {
        std::ostringstream os;
        os << "dual_window: CG stagnated; residual history tail:";
        const std::size_t m = sol.residuals.size();
        for (std::size_t i = m >= 5 ? m - 5 : 0; i < m; ++i) os << " " << sol.residuals[i];
        throw numeric_error(os.str());
    }
    SampledSignal psi(g.grid);
    psi.values = std::move(sol.x);
    return psi;
}

ExpansionCheck expand_distribution(const DistributionSpec& u, const GaborSystem& g,
                                   const SampledSignal& dual,
                                   const std::vector<SampledSignal>& test_functions,
                                   double flag_tol) {
    if (!std::holds_alternative<GaussianWindow>(g.window))
        throw config_error("expand_distribution: analytic path needs a Gaussian window");
    const AnalyticStftEvaluator ev(u, std::get<GaussianWindow>(g.window));
    const Lattice& lat = g.lattice;
    const UniformGrid& grid = g.grid;
    const std::size_t n = grid.n;
    const double dx = grid.dx();

    ExpansionCheck out;
    out.coeffs = LatticeCoeffs(lat);
    for (long k = -lat.kmax; k <= lat.kmax; ++k)
        for (long m = -lat.nmax; m <= lat.nmax; ++m)
            out.coeffs.at(k, m) = ev.eval(lat.x_of(k), lat.xi_of(m));

    GaborSystem dual_system = g;
    dual_system.window = dual;

    for (const SampledSignal& theta : test_functions) {
        // <u, theta>
        cplx lhs(0.0);
        switch (u.kind) {
        case DistributionSpec::Kind::Delta: {
            const double xb = u.center.empty() ? 0.0 : u.center[0];
            const long j = std::lround((xb + grid.half_extent) / dx);
            if (j < 0 || j >= long(n)) throw config_error("expand_distribution: center off grid");
            lhs = std::conj(theta.values[std::size_t(j)]);
            break;
        }
        default: {
            const SampledSignal us = sample(u, grid);
            lhs = quadrature_inner(us, theta);
            break;
        }
        }

        // sum_sigma V_phi u(sigma) <Pi(sigma) psi, theta>; the dual-side
        // pairings are exactly the analysis coefficients of theta with psi
        const LatticeCoeffs ctheta = analysis(dual_system, theta);
        cplx rhs(0.0);
        double boundary = 0.0;
        for (long k = -lat.kmax; k <= lat.kmax; ++k)
            for (long m = -lat.nmax; m <= lat.nmax; ++m) {
                const cplx term = out.coeffs.at(k, m) * std::conj(ctheta.at(k, m));
                rhs += term;
                if (std::abs(k) == lat.kmax || std::abs(m) == lat.nmax)
                    boundary += std::abs(term);
            }
        out.max_deviation = std::max(out.max_deviation, std::abs(lhs - rhs));
        if (boundary > flag_tol) out.truncation_flag = true;
    }
    return out;
}

} // namespace gwf
