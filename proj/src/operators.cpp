#include "gwf/operators.hpp"

#include "gwf/errors.hpp"
#include "gwf/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace gwf {

namespace {

// C-infinity profile: 1 at s = 0, support |s| < 1
double mollifier(double s) {
    const double q = s * s;
    if (q >= 1.0) return 0.0;
    return std::exp(1.0 - 1.0 / (1.0 - q));
}

// C-infinity monotone step: 0 for t <= 0, 1 for t >= 1
double smooth_step(double t) {
    if (t <= 0.0) return 0.0;
    if (t >= 1.0) return 1.0;
    const double g0 = std::exp(-1.0 / t);
    const double g1 = std::exp(-1.0 / (1.0 - t));
    return g0 / (g0 + g1);
}

} // namespace

SymbolSpec SymbolSpec::one() {
    SymbolSpec s;
    s.source = Source::Polynomial;
    s.poly = {PolyTerm{0, 0, cplx(1.0)}};
    s.order_m = 0.0;
    return s;
}

SymbolSpec SymbolSpec::polynomial(std::vector<PolyTerm> terms, double m) {
    SymbolSpec s;
    s.source = Source::Polynomial;
    s.poly = std::move(terms);
    s.order_m = m;
    for (const PolyTerm& t : s.poly)
        if (t.alpha < 0 || t.beta < 0 || t.alpha + t.beta > 6)
            throw config_error("SymbolSpec: polynomial total order must be <= 6");
    return s;
}

SymbolSpec SymbolSpec::bump(double cx, double cxi, double radius) {
    if (!(radius > 0.0)) throw config_error("SymbolSpec: bump radius must be positive");
    SymbolSpec s;
    s.source = Source::Bump;
    s.bump_cx = cx;
    s.bump_cxi = cxi;
    s.bump_radius = radius;
    return s;
}

SymbolSpec SymbolSpec::cone_cutoff(std::vector<double> angles, double half_width,
                                   double inner_radius, double smoothing, double m) {
    if (angles.empty()) throw config_error("SymbolSpec: cone cutoff needs directions");
    if (!(half_width > 0.0)) throw config_error("SymbolSpec: cone half width must be positive");
    SymbolSpec s;
    s.source = Source::ConeCutoff;
    s.cone_angles = std::move(angles);
    s.cone_half_width = half_width;
    s.inner_radius = inner_radius;
    s.smoothing = smoothing;
    s.order_m = m;
    return s;
}

SymbolSpec SymbolSpec::sampled(PhaseGrid pg, std::vector<cplx> values, double m) {
    if (values.size() != pg.nx * pg.nxi) throw config_error("SymbolSpec: sample count mismatch");
    SymbolSpec s;
    s.source = Source::Sampled;
    s.pg = pg;
    s.samples = std::move(values);
    s.order_m = m;
    return s;
}

cplx SymbolSpec::eval(double x, double xi) const {
    switch (source) {
    case Source::Polynomial: {
        cplx acc(0.0);
        for (const PolyTerm& t : poly)
            acc += t.coeff * std::pow(x, t.alpha) * std::pow(xi, t.beta);
        return acc;
    }
    case Source::Bump: {
        const double r = std::hypot(x - bump_cx, xi - bump_cxi);
        return mollifier(r / bump_radius);
    }
    case Source::ConeCutoff: {
        const double r = std::hypot(x, xi);
        const double ramp = smooth_step((r - inner_radius) / smoothing);
        if (ramp == 0.0) return 0.0;
        const double th = std::atan2(xi, x);
        double ang = 0.0;
        for (double a : cone_angles) {
            const double d = std::remainder(th - a, 2.0 * M_PI);
            ang = std::max(ang, mollifier(d / cone_half_width));
        }
        return ramp * ang;
    }
    case Source::Sampled: {
        // nearest node lookup; outside the stored box the symbol is 0
        const double jx = (x - pg.x0) / pg.dx;
        const double kx = (xi - pg.xi0) / pg.dxi;
        const long j = std::lround(jx), k = std::lround(kx);
        if (j < 0 || k < 0 || j >= long(pg.nx) || k >= long(pg.nxi)) return 0.0;
        return samples[std::size_t(j) * pg.nxi + std::size_t(k)];
    }
    }
    return 0.0;
}

std::string SymbolSpec::id() const {
    switch (source) {
    case Source::Polynomial: {
        std::ostringstream os;
        os << "poly[";
        for (const PolyTerm& t : poly) os << "(" << t.alpha << "," << t.beta << ")";
        os << "]";
        return os.str();
    }
    case Source::Bump:
        return "bump";
    case Source::ConeCutoff:
        return "conecutoff";
    case Source::Sampled:
        return "sampled";
    }
    return "?";
}

SampledSignal kn_apply(const SymbolSpec& a, const SampledSignal& f) {
    if (f.grid.d != 1) throw config_error("kn_apply: d = 1 only");
    const UniformGrid& g = f.grid;
    const std::size_t n = g.n;
    const SampledSignal fhat = fourier(f);
    const UniformGrid dual = g.dual();
    const double dxi = g.dxi();

    // symbol values must stay finite on the grid box
    {
        const double edge = std::abs(a.eval(g.half_extent, dual.half_extent));
        if (!std::isfinite(edge))
            throw numeric_error("kn_apply: symbol overflows at the grid edge; use a log-space path");
    }

    SampledSignal out(g);
    parallel_for(n, [&](std::size_t j) {
        const double x = g.node(j);
        const cplx step = std::polar(1.0, x * dxi);
        cplx ph = std::polar(1.0, x * dual.node(0));
        cplx acc(0.0);
        for (std::size_t k = 0; k < n; ++k) {
            const cplx av = a.eval(x, dual.node(k));
            acc += ph * av * fhat.values[k];
            ph *= step;
        }
        if (!std::isfinite(acc.real()) || !std::isfinite(acc.imag()))
            throw numeric_error("kn_apply: non-finite row; symbol too large for this grid");
        out.values[j] = acc * dxi / (2.0 * M_PI);
    });
    return out;
}

SymbolClassReport symbol_class_check(const SymbolSpec& a, double order_m, const WeightFunction& w,
                                     int K, double box, std::size_t npts) {
    if (K < 0 || K > 8) throw config_error("symbol_class_check: K in [0, 8]");
    if (npts < 32) throw config_error("symbol_class_check: need at least 32 sample points");

    // sample on a uniform box, centered differences up to total order K
    const double h = 2.0 * box / double(npts - 1);
    std::vector<cplx> grid0(npts * npts);
    for (std::size_t i = 0; i < npts; ++i)
        for (std::size_t j = 0; j < npts; ++j)
            grid0[i * npts + j] = a.eval(-box + double(i) * h, -box + double(j) * h);

    const auto dx = [&](const std::vector<cplx>& v) {
        std::vector<cplx> out(v.size(), cplx(0.0));
        for (std::size_t i = 1; i + 1 < npts; ++i)
            for (std::size_t j = 0; j < npts; ++j)
                out[i * npts + j] = (v[(i + 1) * npts + j] - v[(i - 1) * npts + j]) / (2.0 * h);
        return out;
    };
    const auto dxi = [&](const std::vector<cplx>& v) {
        std::vector<cplx> out(v.size(), cplx(0.0));
        for (std::size_t i = 0; i < npts; ++i)
            for (std::size_t j = 1; j + 1 < npts; ++j)
                out[i * npts + j] = (v[i * npts + j + 1] - v[i * npts + j - 1]) / (2.0 * h);
        return out;
    };

    SymbolClassReport rep;
    rep.lambdas = {0.5, 1.0, 2.0};
    rep.mus = {0.5, 1.0, 2.0};
    rep.constants.assign(9, 0.0);

    // derivatives reuse: d^alpha_x applied first, then d^beta_xi
    std::vector<std::vector<cplx>> xder(std::size_t(K) + 1);
    xder[0] = grid0;
    for (int al = 1; al <= K; ++al) xder[std::size_t(al)] = dx(xder[std::size_t(al - 1)]);

    const std::size_t margin = std::size_t(K) + 1;  // FD shrinks valid region
    for (int al = 0; al <= K; ++al) {
        std::vector<cplx> cur = xder[std::size_t(al)];
        for (int be = 0; al + be <= K; ++be) {
            if (be > 0) cur = dxi(cur);
            double mx[9] = {0};
            for (std::size_t i = margin; i + margin < npts; ++i)
                for (std::size_t j = margin; j + margin < npts; ++j) {
                    const double da = std::abs(cur[i * npts + j]);
                    if (da == 0.0) continue;
                    const double xiv = -box + double(j) * h;
                    const double base = std::log(da) - order_m * w.eval(std::abs(xiv));
                    for (int li = 0; li < 3; ++li)
                        for (int mi = 0; mi < 3; ++mi) {
                            const double l = rep.lambdas[std::size_t(li)], m = rep.mus[std::size_t(mi)];
                            const double denom = l * w.young_conjugate(double(al) / l) +
                                                 m * w.young_conjugate(double(be) / m);
                            mx[li * 3 + mi] = std::max(mx[li * 3 + mi], std::exp(base - denom));
                        }
                }
            for (int t = 0; t < 9; ++t)
                rep.constants[std::size_t(t)] = std::max(rep.constants[std::size_t(t)], mx[t]);
        }
    }
    rep.pass = true;
    for (double c : rep.constants)
        if (!std::isfinite(c)) rep.pass = false;
    return rep;
}

std::set<int> conesupp(const SymbolSpec& a, const ConePartition& part, double reach,
                       int radial_samples, int angle_samples) {
    // support threshold relative to the sampled maximum
    double amax = 0.0;
    const int nscan = 64;
    for (int i = 0; i < nscan; ++i)
        for (int j = 0; j < nscan; ++j) {
            const double x = -reach + 2.0 * reach * double(i) / double(nscan - 1);
            const double xi = -reach + 2.0 * reach * double(j) / double(nscan - 1);
            amax = std::max(amax, std::abs(a.eval(x, xi)));
        }
    const double eps = 1e-12 * amax;

    std::set<int> bins;
    const double h = part.half_aperture();
    for (int b = 0; b < part.nbins; ++b) {
        const double tc = part.center(b);
        bool hit = false;
        for (int ia = 0; ia < angle_samples && !hit; ++ia) {
            const double frac =
                angle_samples == 1 ? 0.0 : -1.0 + 2.0 * double(ia) / double(angle_samples - 1);
            const double th = tc + frac * h;
            for (int ir = 0; ir < radial_samples && !hit; ++ir) {
                // outermost annulus [0.9 reach, reach]
                const double r = reach * (0.9 + 0.1 * (double(ir) + 0.5) / double(radial_samples));
                if (std::abs(a.eval(r * std::cos(th), r * std::sin(th))) > eps) hit = true;
            }
        }
        if (hit) bins.insert(b);
    }
    return bins;
}

cplx& KernelTensor::at(std::size_t a, std::size_t b, std::size_t c, std::size_t d) {
    return values[((a * ny + b) * ny + c) * ny + d];
}

const cplx& KernelTensor::at(std::size_t a, std::size_t b, std::size_t c, std::size_t d) const {
    return values[((a * ny + b) * ny + c) * ny + d];
}

KernelTensor kn_kernel(const SymbolSpec& a, const GaussianWindow& phi, std::size_t coarse_n,
                       double coarse_box, const UniformGrid& fine) {
    if (coarse_n > 32) throw numeric_error("kn_kernel: refusing more than 32^4 output points");
    if (coarse_n < 4) throw config_error("kn_kernel: coarse_n too small");
    if (std::abs(phi.l2_norm_sq() - 1.0) > 1e-10)
        throw config_error("kn_kernel: window must be L2-normalized");

    const std::size_t nf = fine.n;
    const double Lf = fine.half_extent;
    const double dxf = fine.dx(), dxif = fine.dxi();
    const UniformGrid dual = fine.dual();

    KernelTensor K;
    K.ny = coarse_n;
    K.step = 2.0 * coarse_box / double(coarse_n - 1);
    K.lo = -coarse_box;
    K.values.assign(coarse_n * coarse_n * coarse_n * coarse_n, cplx(0.0));

    // coarse nodes snapped onto the fine grid so x - y lands on fine nodes
    std::vector<long> cidx(coarse_n);
    std::vector<double> cval(coarse_n);
    for (std::size_t i = 0; i < coarse_n; ++i) {
        const double y = K.lo + double(i) * K.step;
        long j = std::lround((y + Lf) / dxf);
        j = std::clamp(j, 0L, long(nf) - 1L);
        cidx[i] = j;
        cval[i] = fine.node(std::size_t(j));
    }

    const double wreach = 7.0 * phi.width;

    // J(x, t; eta) = int e^{i xi t} a(x, xi) phi_hat(xi - eta) dxi, one
    // inverse-type FFT per fine x; t lives on the fine x-grid
    std::vector<cplx> J(nf * nf);  // [x index][t index] for the current eta
    std::vector<cplx> line(nf);
    for (std::size_t ie = 0; ie < coarse_n; ++ie) {
        const double eta = cval[ie];
        for (std::size_t jx = 0; jx < nf; ++jx) {
            const double x = fine.node(jx);
            // skip x that no (y') window can reach
            if (x < K.lo - wreach || x > coarse_box + wreach) {
                std::fill(J.begin() + long(jx * nf), J.begin() + long((jx + 1) * nf), cplx(0.0));
                continue;
            }
            for (std::size_t k = 0; k < nf; ++k) {
                const double xi = dual.node(k);
                line[k] = a.eval(x, xi) * phi.hat(xi - eta);
            }
            // sum_k line_k e^{i xi_k t_m} dxi = dxi * scattered inverse FFT
            std::vector<cplx> tmp(nf, cplx(0.0));
            for (std::size_t k = 0; k < nf; ++k) {
                const long kap = long(k) - long(nf / 2);
                const std::size_t dst = std::size_t((kap + long(nf)) % long(nf));
                const double sgn = (kap & 1L) ? -1.0 : 1.0;
                tmp[dst] = sgn * line[k];
            }
            fft_pow2(tmp, +1);
            for (std::size_t m = 0; m < nf; ++m) J[jx * nf + m] = dxif * tmp[m];
        }

        parallel_for(coarse_n, [&](std::size_t iyp) {
            const double yp = cval[iyp];
            const long jlo = std::max(0L, std::lround((yp - wreach + Lf) / dxf));
            const long jhi = std::min(long(nf) - 1, std::lround((yp + wreach + Lf) / dxf));
            for (std::size_t iep = 0; iep < coarse_n; ++iep) {
                const double etap = cval[iep];
                for (std::size_t iy = 0; iy < coarse_n; ++iy) {
                    const long jy = cidx[iy];
                    cplx acc(0.0);
                    for (long jx = jlo; jx <= jhi; ++jx) {
                        const double x = fine.node(std::size_t(jx));
                        const long jt = jx - jy + long(nf / 2);
                        if (jt < 0 || jt >= long(nf)) continue;
                        acc += std::polar(phi.eval(x - yp), -x * etap) *
                               J[std::size_t(jx) * nf + std::size_t(jt)];
                    }
                    const double y = cval[iy];
                    K.at(iyp, iep, iy, ie) = acc * dxf * std::polar(1.0, y * eta) /
                                             std::pow(2.0 * M_PI, 2.0);
                }
            }
        });
    }
    return K;
}

DistributionSpec regularize_delta(const UniformGrid& g, double width_factor) {
    return DistributionSpec::gaussian({0.0}, width_factor * g.dx());
}

namespace {

ContainmentReport containment(const WfsEstimate& est, const std::set<int>& allowed,
                              const ConePartition& part, int dilation) {
    ContainmentReport rep;
    rep.singular_bins = est.singular_bins;
    rep.allowed_bins = allowed;
    rep.pass = true;
    for (int b : est.singular_bins) {
        bool ok = false;
        for (int al : allowed)
            if (part.circular_distance(b, al) <= dilation) {
                ok = true;
                break;
            }
        if (!ok) {
            rep.pass = false;
            rep.offending.push_back(b);
        }
    }
    return rep;
}

WfsEstimate wfs_of_signal(const SampledSignal& s, const GaussianWindow& phi,
                          const WeightFunction& w, const ConePartition& part,
                          const ProfileOptions& opt) {
    DecayProfile p = decay_profile_signal(s, phi, part, w, opt);
    const double lr = opt.kappa * p.lambda_max();
    WfsEstimate e = classify(p, lr, WfsEstimate::Method::Cone);
    e.weight_id = w.id();
    e.window_id = phi.id();
    return e;
}

} // namespace

ContainmentReport wf_containment_check(const SymbolSpec& a, const DistributionSpec& u,
                                       const GaussianWindow& phi, const WeightFunction& w,
                                       const ConePartition& part, const UniformGrid& g,
                                       const ProfileOptions& opt, int dilation) {
    const SampledSignal us = sample(u, g);
    const SampledSignal out = kn_apply(a, us);
    const WfsEstimate est = wfs_of_signal(out, phi, w, part, opt);
    const std::set<int> allowed = conesupp(a, part, std::max(64.0, opt.reach));
    return containment(est, allowed, part, dilation);
}

SampledSignal poly_apply(const std::vector<SymbolSpec::PolyTerm>& terms, const SampledSignal& u) {
    if (u.grid.d != 1) throw config_error("poly_apply: d = 1 only");
    for (const auto& t : terms)
        if (t.alpha + t.beta > 6)
            throw config_error("poly_apply: total order must be <= 6 (window derivative accuracy)");

    const UniformGrid& g = u.grid;
    const SampledSignal uhat = fourier(u);
    SampledSignal out(g);
    for (const auto& t : terms) {
        // D^beta u = F^{-1}[ xi^beta u_hat ]
        SampledSignal db = uhat;
        for (std::size_t k = 0; k < g.n; ++k)
            db.values[k] *= std::pow(db.grid.node(k), t.beta);
        const SampledSignal dbu = inverse_fourier(db);
        for (std::size_t j = 0; j < g.n; ++j)
            out.values[j] += t.coeff * std::pow(g.node(j), t.alpha) * dbu.values[j];
    }
    return out;
}

namespace {

long binom(int n, int k) {
    if (k < 0 || k > n) return 0;
    long r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

} // namespace

StftMatrix stft_poly_expand(const std::vector<SymbolSpec::PolyTerm>& terms,
                            const DistributionSpec& u, const Window& phi, const UniformGrid& g) {
    for (const auto& t : terms)
        if (t.alpha + t.beta > 6) throw config_error("stft_poly_expand: total order must be <= 6");

    const SampledSignal phi_vec = window_signal(phi, g);
    int amax = 0, bmax = 0;
    for (const auto& t : terms) {
        amax = std::max(amax, t.alpha);
        bmax = std::max(bmax, t.beta);
    }

    // derived windows D^mu phi_nu with phi_nu(x) = x^nu phi(x)
    std::vector<std::vector<SampledSignal>> dw(std::size_t(amax) + 1);
    for (int nu = 0; nu <= amax; ++nu) {
        SampledSignal pnu = phi_vec;
        for (std::size_t j = 0; j < g.n; ++j)
            pnu.values[j] *= std::pow(g.node(j), nu);
        SampledSignal ph = fourier(pnu);
        dw[std::size_t(nu)].reserve(std::size_t(bmax) + 1);
        for (int mu = 0; mu <= bmax; ++mu) {
            SampledSignal mh = ph;
            for (std::size_t k = 0; k < g.n; ++k)
                mh.values[k] *= std::pow(mh.grid.node(k), mu);
            dw[std::size_t(nu)].push_back(inverse_fourier(mh));
        }
    }

    StftMatrix out;
    out.pg = PhaseGrid::from_grid(g);
    out.values.assign(out.pg.nx * out.pg.nxi, cplx(0.0));
    out.quad_dx = g.dx();
    out.window_id = window_id(phi) + ":poly-expanded";

    for (int nu = 0; nu <= amax; ++nu)
        for (int mu = 0; mu <= bmax; ++mu) {
            // total coefficient of V_{D^mu phi_nu} u summed over (alpha, beta)
            bool used = false;
            for (const auto& t : terms)
                if (t.alpha >= nu && t.beta >= mu) used = true;
            if (!used) continue;
            const StftMatrix V =
                stft(u, dw[std::size_t(nu)][std::size_t(mu)], g, StftPath::Numeric);
            for (std::size_t j = 0; j < out.pg.nx; ++j) {
                const double y = out.pg.x(j);
                for (std::size_t k = 0; k < out.pg.nxi; ++k) {
                    const double eta = out.pg.xi(k);
                    cplx coef(0.0);
                    for (const auto& t : terms) {
                        if (t.alpha < nu || t.beta < mu) continue;
                        coef += t.coeff * double(binom(t.alpha, nu)) * double(binom(t.beta, mu)) *
                                std::pow(y, t.alpha - nu) * std::pow(eta, t.beta - mu);
                    }
                    out.at(j, k) += coef * V.at(j, k);
                }
            }
        }
    return out;
}

ContainmentReport poly_wf_check(const std::vector<SymbolSpec::PolyTerm>& terms,
                                const DistributionSpec& u, const GaussianWindow& phi,
                                const WeightFunction& w, const ConePartition& part,
                                const UniformGrid& g, const ProfileOptions& opt, int dilation) {
    const SampledSignal us = sample(u, g);
    const SampledSignal Au = poly_apply(terms, us);
    const WfsEstimate est_out = wfs_of_signal(Au, phi, w, part, opt);

    // reference set from the exact evaluator when available
    WfsEstimate est_in;
    if (u.kind != DistributionSpec::Kind::Sampled) {
        ProfileOptions o = opt;
        o.reach = std::max(opt.reach, 512.0);
        est_in = wfs_cone(u, phi, w, part, o);
    } else {
        est_in = wfs_of_signal(us, phi, w, part, opt);
    }
    return containment(est_out, est_in.singular_bins, part, dilation);
}

namespace {

double fitted_growth_tau(const SymbolSpec& a, const WeightFunction& w, const PhaseGrid& pg) {
    double tau = 0.0;
    for (std::size_t j = 0; j < pg.nx; j += 4)
        for (std::size_t k = 0; k < pg.nxi; k += 4) {
            const double x = pg.x(j), xi = pg.xi(k);
            const double r = std::hypot(x, xi);
            if (r < 1.0) continue;
            const double av = std::abs(a.eval(x, xi));
            if (av <= 1.0) continue;
            tau = std::max(tau, std::log(av) / w.eval(r));
        }
    return tau;
}

} // namespace

SampledSignal localization_apply(const SymbolSpec& a, const Window& psi, const Window& gamma,
                                 const SampledSignal& f, double tau, const WeightFunction& w) {
    const UniformGrid& g = f.grid;
    StftMatrix V = stft(DistributionSpec::from_sampled(f), psi, g, StftPath::Numeric);

    const double fitted = fitted_growth_tau(a, w, V.pg);
    if (fitted > tau) {
        std::ostringstream os;
        os << "localization_apply: symbol growth exceeds tau (fitted tau = " << fitted << ")";
        throw numeric_error(os.str());
    }

    for (std::size_t j = 0; j < V.pg.nx; ++j)
        for (std::size_t k = 0; k < V.pg.nxi; ++k)
            V.at(j, k) *= a.eval(V.pg.x(j), V.pg.xi(k));
    return stft_adjoint(V, gamma, g);
}

ContainmentReport localization_wf_check(const SymbolSpec& a, const Window& psi,
                                        const Window& gamma, const DistributionSpec& u,
                                        const GaussianWindow& phi, const WeightFunction& w,
                                        const ConePartition& part, const UniformGrid& g,
                                        const ProfileOptions& opt, double tau, int dilation) {
    const SampledSignal us = sample(u, g);
    const SampledSignal out = localization_apply(a, psi, gamma, us, tau, w);
    const WfsEstimate est_out = wfs_of_signal(out, phi, w, part, opt);

    WfsEstimate est_in;
    if (u.kind != DistributionSpec::Kind::Sampled) {
        ProfileOptions o = opt;
        o.reach = std::max(opt.reach, 512.0);
        est_in = wfs_cone(u, phi, w, part, o);
    } else {
        est_in = wfs_of_signal(us, phi, w, part, opt);
    }
    return containment(est_out, est_in.singular_bins, part, dilation);
}

void write_kernel_bin(const std::string& path, const KernelTensor& k) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw io_error("cannot open for writing: " + path);
    const std::uint32_t n = std::uint32_t(k.ny);
    os.write(reinterpret_cast<const char*>(&n), sizeof n);
    os.write(reinterpret_cast<const char*>(&k.lo), sizeof k.lo);
    os.write(reinterpret_cast<const char*>(&k.step), sizeof k.step);
    for (const cplx& v : k.values) {
        const double re = v.real(), im = v.imag();
        os.write(reinterpret_cast<const char*>(&re), sizeof re);
        os.write(reinterpret_cast<const char*>(&im), sizeof im);
    }
}

KernelTensor read_kernel_bin(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw io_error("cannot open for reading: " + path);
    std::uint32_t n = 0;
    is.read(reinterpret_cast<char*>(&n), sizeof n);
    KernelTensor k;
    k.ny = n;
    is.read(reinterpret_cast<char*>(&k.lo), sizeof k.lo);
    is.read(reinterpret_cast<char*>(&k.step), sizeof k.step);
    k.values.resize(std::size_t(n) * n * n * n);
    for (cplx& v : k.values) {
        double re = 0, im = 0;
        is.read(reinterpret_cast<char*>(&re), sizeof re);
        is.read(reinterpret_cast<char*>(&im), sizeof im);
        v = cplx(re, im);
    }
    if (!is) throw io_error("kernel binary truncated: " + path);
    return k;
}

} // namespace gwf
