#include "gwf/modspace.hpp"

#include "gwf/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <json.hpp>

namespace gwf {

MixedNormSpec::MixedNormSpec(double p_, double q_, ExpWeight w) : p(p_), q(q_), weight(std::move(w)) {
    const auto ok = [](double e) { return e == kInf || e >= 1.0; };
    if (!ok(p) || !ok(q)) throw config_error("MixedNormSpec: p, q must lie in [1, inf]");
}

namespace {

double phase_radius(double x, double xi) { return std::hypot(x, xi); }

} // namespace

double lpq_norm(const StftMatrix& F, const MixedNormSpec& spec) {
    const PhaseGrid& pg = F.pg;
    const ExpWeight& m = spec.weight;
    const bool pinf = spec.p == kInf, qinf = spec.q == kInf;

    double outer = 0.0;
    for (std::size_t k = 0; k < pg.nxi; ++k) {
        const double xi = pg.xi(k);
        double inner = 0.0;
        for (std::size_t j = 0; j < pg.nx; ++j) {
            const double a = std::abs(F.at(j, k)) * m.m(phase_radius(pg.x(j), xi));
            if (pinf)
                inner = std::max(inner, a);
            else
                inner += std::pow(a, spec.p) * pg.dx;
        }
        const double ik = pinf ? inner : std::pow(inner, 1.0 / spec.p);
        if (qinf)
            outer = std::max(outer, ik);
        else
            outer += std::pow(ik, spec.q) * pg.dxi;
    }
    return qinf ? outer : std::pow(outer, 1.0 / spec.q);
}

double lpq_seq_norm(const LatticeCoeffs& c, const MixedNormSpec& spec) {
    const Lattice& l = c.lattice;
    const ExpWeight& m = spec.weight;
    const bool pinf = spec.p == kInf, qinf = spec.q == kInf;

    double outer = 0.0;
    for (long n = -l.nmax; n <= l.nmax; ++n) {
        double inner = 0.0;
        for (long k = -l.kmax; k <= l.kmax; ++k) {
            const double a = std::abs(c.at(k, n)) * m.m(phase_radius(l.x_of(k), l.xi_of(n)));
            if (pinf)
                inner = std::max(inner, a);
            else
                inner += std::pow(a, spec.p);
        }
        const double ik = pinf ? inner : std::pow(inner, 1.0 / spec.p);
        if (qinf)
            outer = std::max(outer, ik);
        else
            outer += std::pow(ik, spec.q);
    }
    return qinf ? outer : std::pow(outer, 1.0 / spec.q);
}

double amalgam_norm(const StftMatrix& F, const MixedNormSpec& spec) {
    const PhaseGrid& pg = F.pg;
    const auto divides_one = [](double step, long& per) {
        const double r = 1.0 / step;
        per = std::lround(r);
        return std::abs(r - double(per)) <= 1e-9 * r && per >= 1;
    };
    long perx = 0, perxi = 0;
    if (!divides_one(pg.dx, perx) || !divides_one(pg.dxi, perxi))
        throw config_error("amalgam_norm: grid spacing must divide the unit cube");

    const long k0 = long(std::floor(pg.x(0)));
    const long n0 = long(std::floor(pg.xi(0)));
    const long kcount = long(std::floor(pg.x(pg.nx - 1))) - k0 + 1;
    const long ncount = long(std::floor(pg.xi(pg.nxi - 1))) - n0 + 1;

    std::vector<double> cube(std::size_t(kcount * ncount), 0.0);
    for (std::size_t j = 0; j < pg.nx; ++j) {
        const long k = long(std::floor(pg.x(j))) - k0;
        for (std::size_t i = 0; i < pg.nxi; ++i) {
            const long n = long(std::floor(pg.xi(i))) - n0;
            double& slot = cube[std::size_t(k * ncount + n)];
            slot = std::max(slot, std::abs(F.at(j, i)));
        }
    }

    // sequence norm over the cube maxima with the integer-lattice weight
    const ExpWeight& m = spec.weight;
    const bool pinf = spec.p == kInf, qinf = spec.q == kInf;
    double outer = 0.0;
    for (long n = 0; n < ncount; ++n) {
        double inner = 0.0;
        for (long k = 0; k < kcount; ++k) {
            const double a =
                cube[std::size_t(k * ncount + n)] * m.m(phase_radius(double(k + k0), double(n + n0)));
            if (pinf)
                inner = std::max(inner, a);
            else
                inner += std::pow(a, spec.p);
        }
        const double ik = pinf ? inner : std::pow(inner, 1.0 / spec.p);
        if (qinf)
            outer = std::max(outer, ik);
        else
            outer += std::pow(ik, spec.q);
    }
    return qinf ? outer : std::pow(outer, 1.0 / spec.q);
}

YoungCheck young_check(const StftMatrix& F, const StftMatrix& G, const MixedNormSpec& spec) {
    const PhaseGrid& pg = F.pg;
    if (G.pg.nx != pg.nx || G.pg.nxi != pg.nxi || std::abs(G.pg.dx - pg.dx) > 1e-12 ||
        std::abs(G.pg.dxi - pg.dxi) > 1e-12)
        throw config_error("young_check: operands must share a phase grid");

    // linear convolution on the doubled box via FFT
    const std::size_t nx = pg.nx, nxi = pg.nxi;
    std::size_t Nx = 1, Ni = 1;
    while (Nx < 2 * nx) Nx <<= 1;
    while (Ni < 2 * nxi) Ni <<= 1;
    std::vector<cplx> A(Nx * Ni, cplx(0.0)), B(Nx * Ni, cplx(0.0));
    for (std::size_t j = 0; j < nx; ++j)
        for (std::size_t k = 0; k < nxi; ++k) {
            A[j * Ni + k] = F.at(j, k);
            B[j * Ni + k] = G.at(j, k);
        }
    auto fft2 = [Nx, Ni](std::vector<cplx>& M, int sign) {
        std::vector<cplx> line(Nx);
        for (std::size_t r = 0; r < Nx; ++r) fft_pow2(&M[r * Ni], Ni, sign);
        for (std::size_t c = 0; c < Ni; ++c) {
            for (std::size_t r = 0; r < Nx; ++r) line[r] = M[r * Ni + c];
            fft_pow2(line, sign);
            for (std::size_t r = 0; r < Nx; ++r) M[r * Ni + c] = line[r];
        }
    };
    fft2(A, -1);
    fft2(B, -1);
    for (std::size_t i = 0; i < A.size(); ++i) A[i] *= B[i];
    fft2(A, +1);
    const double scale = pg.dx * pg.dxi / double(Nx * Ni);

    StftMatrix conv;
    conv.pg.nx = 2 * nx - 1;
    conv.pg.nxi = 2 * nxi - 1;
    conv.pg.dx = pg.dx;
    conv.pg.dxi = pg.dxi;
    conv.pg.x0 = 2.0 * pg.x0;
    conv.pg.xi0 = 2.0 * pg.xi0;
    conv.values.assign(conv.pg.nx * conv.pg.nxi, cplx(0.0));
    for (std::size_t j = 0; j < conv.pg.nx; ++j)
        for (std::size_t k = 0; k < conv.pg.nxi; ++k)
            conv.at(j, k) = A[j * Ni + k] * scale;

    YoungCheck out;
    out.lhs = lpq_norm(conv, spec);
    out.norm_F = lpq_norm(F, spec);
    // ||G||_{L^1_{v_lambda}}
    double g1 = 0.0;
    for (std::size_t j = 0; j < nxi; ++j)
        for (std::size_t i = 0; i < nx; ++i)
            g1 += std::abs(G.at(i, j)) *
                  std::exp(spec.weight.log_v(phase_radius(pg.x(i), pg.xi(j)))) * pg.dx * pg.dxi;
    out.norm_G_l1v = g1;
    const double denom = out.norm_F * out.norm_G_l1v;
    out.fitted_C = denom > 0.0 ? out.lhs / denom : 0.0;
    out.pass = std::isfinite(out.fitted_C);
    return out;
}

double seminorm_q(const SampledSignal& f, double lambda, double mu, const WeightFunction& w,
                  int K) {
    if (f.grid.d != 1) throw config_error("seminorm_q: d = 1 only");
    if (K < 0 || K > 20) throw config_error("seminorm_q: K must lie in [0, 20]");
    if (!(lambda > 0.0) || !(mu > 0.0)) throw config_error("seminorm_q: lambda, mu must be > 0");

    const UniformGrid& g = f.grid;
    const SampledSignal fhat = fourier(f);
    double best = 0.0;
    SampledSignal dk = fhat;
    for (int alpha = 0; alpha <= K; ++alpha) {
        // D^alpha f = F^{-1}[ xi^alpha f_hat ]
        const SampledSignal da = inverse_fourier(dk);
        const double wfac = -lambda * w.young_conjugate(double(alpha) / lambda);
        for (std::size_t j = 0; j < g.n; ++j) {
            const double a = std::abs(da.values[j]);
            if (a == 0.0) continue;
            const double v = std::log(a) + wfac + mu * w.eval(std::abs(g.node(j)));
            best = std::max(best, v);
        }
        if (alpha < K)
            for (std::size_t j = 0; j < g.n; ++j) dk.values[j] *= dk.grid.node(j);
    }
    return std::exp(best);
}

double seminorm_stft(const DistributionSpec& f, const Window& phi, const UniformGrid& g,
                     double lambda, const WeightFunction& w) {
    const StftMatrix V = stft(f, phi, g);
    double best = -1e300;
    for (std::size_t j = 0; j < V.pg.nx; ++j)
        for (std::size_t k = 0; k < V.pg.nxi; ++k) {
            const double a = std::abs(V.at(j, k));
            if (a == 0.0) continue;
            best = std::max(best, std::log(a) + lambda * w.eval(phase_radius(V.pg.x(j), V.pg.xi(k))));
        }
    return best > -1e299 ? std::exp(best) : 0.0;
}

double modulation_norm(const DistributionSpec& f, const Window& phi, const UniformGrid& g,
                       const MixedNormSpec& spec) {
    const StftMatrix V = stft(f, phi, g);
    return lpq_norm(V, spec);
}

std::string norm_report_json(const std::string& name, double value, const MixedNormSpec& spec,
                             const UniformGrid& g) {
    nlohmann::json j;
    j["norm"] = name;
    j["value"] = value;
    j["p"] = spec.p == kInf ? nlohmann::json("inf") : nlohmann::json(spec.p);
    j["q"] = spec.q == kInf ? nlohmann::json("inf") : nlohmann::json(spec.q);
    j["lambda"] = spec.weight.lambda();
    j["weight"] = spec.weight.base().id();
    j["grid"] = {{"d", g.d}, {"n", g.n}, {"L", g.half_extent}};
    return j.dump();
}

} // namespace gwf
