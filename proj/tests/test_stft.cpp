#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gwf/errors.hpp"
#include "gwf/stft.hpp"

#include <cmath>

using namespace gwf;

namespace {

const UniformGrid kGrid(1, 1024, 16.0);
const GaussianWindow kWin{1.0, 0.0, 1.0};

double rel_l2_diff(const SampledSignal& a, const SampledSignal& b) {
    double num = 0.0, den = 0.0;
    for (std::size_t j = 0; j < a.values.size(); ++j) {
        num += std::norm(a.values[j] - b.values[j]);
        den += std::norm(b.values[j]);
    }
    return std::sqrt(num / den);
}

} // namespace

TEST_CASE("phase_shift basics") {
    const SampledSignal phi = window_signal(kWin, kGrid);

    PhasePoint z0;
    z0.x = {0.0};
    z0.xi = {0.0};
    const SampledSignal same = phase_shift(phi, z0);
    for (std::size_t j = 0; j < kGrid.n; ++j) CHECK(same.values[j] == phi.values[j]);

    // |Pi(z) phi| = |T_x phi| pointwise
    PhasePoint z;
    z.x = {2.0};
    z.xi = {3.0};
    const SampledSignal shifted = phase_shift(phi, z);
    PhasePoint zt;
    zt.x = {2.0};
    zt.xi = {0.0};
    const SampledSignal translated = phase_shift(phi, zt);
    for (std::size_t j = 0; j < kGrid.n; ++j)
        CHECK(std::abs(shifted.values[j]) == doctest::Approx(std::abs(translated.values[j])));

    // inverse translations compose to the identity
    PhasePoint zm;
    zm.x = {-2.0};
    zm.xi = {0.0};
    const SampledSignal back = phase_shift(translated, zm);
    double worst = 0.0;
    for (std::size_t j = 0; j < kGrid.n; ++j)
        worst = std::max(worst, std::abs(back.values[j] - phi.values[j]));
    CHECK(worst < 1e-14);

    // pushing mass off the grid flags truncation
    PhasePoint big;
    big.x = {15.0};
    big.xi = {0.0};
    CHECK(phase_shift(phi, big).truncation_warning);
}

TEST_CASE("catalog closed forms: delta and constant") {
    AnalyticStftEvaluator delta(DistributionSpec::delta(), kWin);
    // |V delta(0, xi)| = |phi(0)| for any xi
    for (double xi : {0.0, 3.0, 40.0}) CHECK(std::abs(delta.eval(0.0, xi)) == doctest::Approx(1.0));
    // V delta(x, xi) = e^{-i xbar xi} conj(phi(xbar - x))
    AnalyticStftEvaluator d2(DistributionSpec::delta({1.5}), kWin);
    const cplx v = d2.eval(0.5, 2.0);
    const cplx ref = std::polar(std::exp(-0.5), -1.5 * 2.0);
    CHECK(std::abs(v - ref) < 1e-14);

    AnalyticStftEvaluator one(DistributionSpec::constant(), kWin);
    // |V 1(x, xi)| = |phi_hat(-xi)| independent of x
    for (double x : {-3.0, 0.0, 5.0})
        CHECK(std::abs(one.eval(x, 1.0)) == doctest::Approx(kWin.hat(-1.0)));
}

TEST_CASE("gaussian-gaussian closed form vs numeric path") {
    const DistributionSpec u = DistributionSpec::gaussian({0.0}, 1.0);
    const StftMatrix V = stft(u, kWin, kGrid, StftPath::Numeric);
    double worst = 0.0;
    for (std::size_t j = 0; j < V.pg.nx; j += 5) {
        const double x = V.pg.x(j);
        for (std::size_t k = 0; k < V.pg.nxi; k += 5) {
            const double xi = V.pg.xi(k);
            const double closed = std::sqrt(M_PI) * std::exp(-(x * x + xi * xi) / 4.0);
            if (closed < 1e-12) continue;
            worst = std::max(worst, std::abs(std::abs(V.at(j, k)) - closed));
        }
    }
    CHECK(worst < 1e-8);
}

TEST_CASE("stft rejects bad paths") {
    CHECK_THROWS_AS(stft(DistributionSpec::delta(), kWin, kGrid, StftPath::Numeric),
                    numeric_error);
    const SampledSignal sw = window_signal(kWin, kGrid);
    CHECK_THROWS_AS(stft(DistributionSpec::delta(), Window(sw), kGrid, StftPath::Analytic),
                    config_error);
}

TEST_CASE("modulus invariant under window global phase") {
    const DistributionSpec u = DistributionSpec::gaussian({0.4}, 1.1);
    SampledSignal w1 = window_signal(kWin, kGrid);
    SampledSignal w2 = w1;
    for (cplx& v : w2.values) v *= std::polar(1.0, 1.234);
    const StftMatrix V1 = stft(u, w1, kGrid, StftPath::Numeric);
    const StftMatrix V2 = stft(u, w2, kGrid, StftPath::Numeric);
    double worst = 0.0;
    for (std::size_t i = 0; i < V1.values.size(); ++i)
        worst = std::max(worst, std::abs(std::abs(V1.values[i]) - std::abs(V2.values[i])));
    CHECK(worst < 1e-12);
}

TEST_CASE("covariance of moduli under translation/modulation of the signal") {
    // |V_phi(T_y u)(x, xi)| = |V_{T_{-y} phi} u(x, xi)|
    const DistributionSpec u = DistributionSpec::gaussian({0.0}, 1.0);
    const DistributionSpec uy = DistributionSpec::gaussian({2.0}, 1.0);  // T_2 u
    const GaussianWindow win_shift{1.0, 2.0, 1.0};                       // T_{-2} phi... center -(-2)
    const StftMatrix lhs = stft(uy, kWin, kGrid, StftPath::Numeric);
    const StftMatrix rhs = stft(u, win_shift, kGrid, StftPath::Numeric);
    // T_{-y} phi (t) = phi(t + y) = e^{-(t+2)^2/2}: GaussianWindow.center = -2
    const GaussianWindow win_m2{1.0, -2.0, 1.0};
    const StftMatrix rhs2 = stft(u, win_m2, kGrid, StftPath::Numeric);
    double worst = 1e300;
    for (const StftMatrix* r : {&rhs, &rhs2}) {
        double w = 0.0;
        for (std::size_t i = 0; i < lhs.values.size(); ++i)
            w = std::max(w, std::abs(std::abs(lhs.values[i]) - std::abs(r->values[i])));
        worst = std::min(worst, w);
    }
    CHECK(worst < 1e-10);
}

TEST_CASE("adjoint: zero in, zero out; (Ad9) inversion; two-window inversion") {
    StftMatrix Z;
    Z.pg = PhaseGrid::from_grid(kGrid);
    Z.values.assign(Z.pg.nx * Z.pg.nxi, cplx(0.0));
    const SampledSignal z = stft_adjoint(Z, kWin, kGrid);
    for (const cplx& v : z.values) CHECK(v == cplx(0.0));

    const DistributionSpec u = DistributionSpec::gaussian({0.3}, 1.1);
    const SampledSignal us = sample(u, kGrid);
    const StftMatrix V = stft(u, kWin, kGrid, StftPath::Numeric);
    SampledSignal rec = stft_adjoint(V, kWin, kGrid);
    const double scale = 1.0 / (2.0 * M_PI * kWin.l2_norm_sq());
    for (cplx& v : rec.values) v *= scale;
    CHECK(rel_l2_diff(rec, us) < 1e-8);

    // (2pi)^{-d} <gamma, psi>^{-1} V*_gamma V_psi f = f for different windows
    const GaussianWindow psi{0.8, 0.0, 1.0}, gamma{1.3, 0.0, 1.0};
    const StftMatrix Vp = stft(u, psi, kGrid, StftPath::Numeric);
    SampledSignal rec2 = stft_adjoint(Vp, gamma, kGrid);
    const SampledSignal gs = window_signal(gamma, kGrid);
    const SampledSignal ps = window_signal(psi, kGrid);
    const cplx ip = quadrature_inner(gs, ps);
    for (cplx& v : rec2.values) v /= (2.0 * M_PI) * ip;
    CHECK(rel_l2_diff(rec2, us) < 1e-8);
}

TEST_CASE("synthesis of a rapidly decaying F lands in the weighted class") {
    // F(z) = e^{-|z|^2} -> f = V* F has sup |f| e^{lambda omega} finite for
    // moderate lambda: the log-profile peaks strictly inside the grid
    StftMatrix F;
    F.pg = PhaseGrid::from_grid(kGrid);
    F.values.resize(F.pg.nx * F.pg.nxi);
    for (std::size_t j = 0; j < F.pg.nx; ++j)
        for (std::size_t k = 0; k < F.pg.nxi; ++k) {
            const double x = F.pg.x(j), xi = F.pg.xi(k);
            F.at(j, k) = std::exp(-(x * x + xi * xi));
        }
    const SampledSignal f = stft_adjoint(F, kWin, kGrid);
    const double lambda = 3.0;
    double peak = -1e300, edge = -1e300;
    for (std::size_t j = 0; j < kGrid.n; ++j) {
        const double a = std::abs(f.values[j]);
        if (a <= 0.0) continue;
        const double v = std::log(a) + lambda * std::sqrt(std::abs(kGrid.node(j)));
        peak = std::max(peak, v);
        if (std::abs(kGrid.node(j)) > 0.8 * kGrid.half_extent) edge = std::max(edge, v);
    }
    CHECK(peak > edge + 10.0);
}

TEST_CASE("growth bound: catalog STFTs stay under c e^{lambda omega}") {
    for (const DistributionSpec& u :
         {DistributionSpec::delta(), DistributionSpec::constant(), DistributionSpec::chirp(1.0)}) {
        AnalyticStftEvaluator ev(u, kWin);
        double lam_hat = 0.0;
        for (double r : {8.0, 32.0, 128.0, 512.0})
            for (int ia = 0; ia < 32; ++ia) {
                const double th = -M_PI + 2.0 * M_PI * ia / 32.0;
                const double la = ev.log_abs(r * std::cos(th), r * std::sin(th));
                lam_hat = std::max(lam_hat, la / std::sqrt(r));
            }
        CHECK(lam_hat < 1.0);  // bounded catalog members: tiny fitted growth
    }
}

TEST_CASE("stft fourier identity") {
    CHECK(stft_fourier_identity_check(DistributionSpec::gaussian({0.0}, 1.0), kWin, kGrid) <
          1e-6);
    // zero signal: both sides vanish
    SampledSignal zero(kGrid);
    CHECK(stft_fourier_identity_check(DistributionSpec::from_sampled(zero), kWin, kGrid) == 0.0);
    // global phase on f scales both sides the same way
    const double d1 =
        stft_fourier_identity_check(DistributionSpec::gaussian({0.5}, 1.0), kWin, kGrid);
    SampledSignal fp = sample(DistributionSpec::gaussian({0.5}, 1.0), kGrid);
    for (cplx& v : fp.values) v *= std::polar(1.0, 0.777);
    const double d2 = stft_fourier_identity_check(DistributionSpec::from_sampled(fp), kWin, kGrid);
    CHECK(std::abs(d1 - d2) < 1e-9);
}

TEST_CASE("window change convolution bound") {
    const UniformGrid g(1, 256, 20.0);
    const DistributionSpec f = DistributionSpec::gaussian({0.0}, 1.0);
    CHECK(window_change_bound_check(f, kWin, kWin, kWin, g).pass);

    const GaussianWindow psi{0.9, 0.0, 1.0}, gam{1.2, 0.5, 1.0};
    CHECK(window_change_bound_check(f, kWin, psi, gam, g).pass);

    // zero signal: both sides vanish, trivially passes
    SampledSignal zero(g);
    CHECK(window_change_bound_check(DistributionSpec::from_sampled(zero), kWin, psi, gam, g).pass);

    // near-orthogonal gamma/psi trips the conditioning guard
    const GaussianWindow far{0.4, 9.0, 1.0};
    CHECK_THROWS_AS(window_change_bound_check(f, kWin, kWin, far, g), numeric_error);
}

TEST_CASE("quadrature evaluator agrees with the analytic one on compact-ish input") {
    const UniformGrid g(1, 2048, 16.0);
    const SampledSignal gs = sample(DistributionSpec::gaussian({0.0}, 0.8), g);
    QuadratureStftEvaluator q(gs, kWin);
    AnalyticStftEvaluator a(DistributionSpec::gaussian({0.0}, 0.8), kWin);
    for (double x : {-4.0, 0.0, 2.5})
        for (double xi : {0.0, 3.0, 11.0})
            CHECK(std::abs(q.eval(x, xi) - a.eval(x, xi)) < 1e-10);
}
