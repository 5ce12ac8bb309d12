#include "gwf/wavefront.hpp"

#include "gwf/errors.hpp"
#include "gwf/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <json.hpp>

namespace gwf {

ConePartition::ConePartition(int d_, int nbins_, double overlap)
    : d(d_), nbins(nbins_), aperture_overlap(overlap) {
    if (d != 1) throw config_error("ConePartition: only d = 1 (phase space R^2) is supported");
    if (nbins < 8) throw config_error("ConePartition: need at least 8 bins");
    if (overlap < 0.0 || overlap > 1.0) throw config_error("ConePartition: overlap in [0,1]");
}

std::vector<int> ConePartition::bins_of(double theta) const {
    // wrap to [-pi, pi)
    double t = std::remainder(theta, 2.0 * M_PI);
    if (t >= M_PI) t -= 2.0 * M_PI;
    const double w = bin_width(), h = half_aperture();
    std::vector<int> out;
    const int b0 = int(std::lround((t + M_PI) / w));
    for (int off = -2; off <= 2; ++off) {
        const int b = ((b0 + off) % nbins + nbins) % nbins;
        double dist = std::remainder(t - center(b), 2.0 * M_PI);
        if (std::abs(dist) <= h) out.push_back(b);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

int ConePartition::circular_distance(int a, int b) const {
    int diff = std::abs(a - b) % nbins;
    return std::min(diff, nbins - diff);
}

namespace {

constexpr double kNoSample = -1e300;

std::vector<double> annulus_bounds(const ProfileOptions& opt) {
    if (!(opt.reach > opt.r_min))
        throw config_error("decay_profile: reach must exceed r_min");
    if (opt.annuli < 4) throw config_error("decay_profile: need at least 4 annuli");
    std::vector<double> r(std::size_t(opt.annuli) + 1);
    const double ratio = std::log(opt.reach / opt.r_min) / double(opt.annuli);
    for (int j = 0; j <= opt.annuli; ++j) r[std::size_t(j)] = opt.r_min * std::exp(ratio * j);
    return r;
}

DecayProfile make_profile(const ConePartition& part, const WeightFunction& w,
                          const ProfileOptions& opt) {
    DecayProfile p;
    p.part = part;
    p.radii = annulus_bounds(opt);
    p.r_rep.resize(std::size_t(opt.annuli));
    for (int j = 0; j < opt.annuli; ++j)
        p.r_rep[std::size_t(j)] = std::sqrt(p.radii[std::size_t(j)] * p.radii[std::size_t(j) + 1]);
    p.sup_log.assign(std::size_t(part.nbins * opt.annuli), kNoSample);
    p.sample_count.assign(std::size_t(part.nbins * opt.annuli), 0);
    p.omega_reach = w.eval(p.radii.back());
    return p;
}

// least-squares slope of y against x
double ls_slope(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = x.size();
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= double(n);
    my /= double(n);
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        num += (x[i] - mx) * (y[i] - my);
        den += (x[i] - mx) * (x[i] - mx);
    }
    if (den == 0.0) return 0.0;
    return num / den;
}

void finalize(DecayProfile& p, const WeightFunction& w, const ProfileOptions& opt) {
    const int nb = p.part.nbins, na = p.annuli();

    double gmax = kNoSample;
    for (double v : p.sup_log) gmax = std::max(gmax, v);
    p.global_max_log = gmax;

    double fl = std::log(opt.floor_abs);
    if (opt.floor_rel > 0.0 && gmax > kNoSample)
        fl = std::max(fl, gmax + std::log(opt.floor_rel));
    p.floor_log = fl;

    p.fitted_rate.assign(std::size_t(nb), 0.0);
    p.indeterminate.assign(std::size_t(nb), false);
    if (p.undersampled.size() != std::size_t(nb)) p.undersampled.assign(std::size_t(nb), false);

    std::vector<double> xs, ys;
    for (int b = 0; b < nb; ++b) {
        xs.clear();
        ys.clear();
        for (int j = 0; j < na; ++j) {
            const double v = p.sup_log[std::size_t(b * na + j)];
            if (v <= kNoSample || p.sample_count[std::size_t(b * na + j)] == 0) continue;
            if (v <= p.floor_log) continue;  // floored: excluded from the fit
            xs.push_back(w.eval(p.r_rep[std::size_t(j)]));
            ys.push_back(v);
        }
        if (xs.size() < 4) {
            // indeterminate-fast-decay: everything at the floor (or out of
            // coverage) counts as evidence of regularity
            p.indeterminate[std::size_t(b)] = true;
            p.fitted_rate[std::size_t(b)] = std::numeric_limits<double>::infinity();
            continue;
        }
        if (xs.size() > 6) {
            xs.erase(xs.begin(), xs.end() - 6);
            ys.erase(ys.begin(), ys.end() - 6);
        }
        p.fitted_rate[std::size_t(b)] = -ls_slope(xs, ys);
    }
}

} // namespace

double DecayProfile::lambda_max() const {
    if (global_max_log <= kNoSample || omega_reach <= 0.0) return 0.0;
    return (global_max_log - floor_log) / omega_reach;
}

DecayProfile decay_profile(const StftEvaluator& ev, const ConePartition& part,
                           const WeightFunction& w, const ProfileOptions& opt) {
    DecayProfile p = make_profile(part, w, opt);
    const int na = p.annuli();
    const double h = part.half_aperture();

    parallel_for(std::size_t(part.nbins), [&](std::size_t b) {
        const double tc = part.center(int(b));
        for (int j = 0; j < na; ++j) {
            double best = kNoSample;
            int cnt = 0;
            for (int ia = 0; ia < opt.angle_samples; ++ia) {
                const double frac = opt.angle_samples == 1
                                        ? 0.0
                                        : -1.0 + 2.0 * double(ia) / double(opt.angle_samples - 1);
                const double th = tc + frac * h;
                const double ct = std::cos(th), st = std::sin(th);
                for (int ir = 0; ir < opt.radial_samples; ++ir) {
                    const double rr =
                        p.radii[std::size_t(j)] *
                        std::pow(p.radii[std::size_t(j) + 1] / p.radii[std::size_t(j)],
                                 (double(ir) + 0.5) / double(opt.radial_samples));
                    best = std::max(best, ev.log_abs(rr * ct, rr * st));
                    ++cnt;
                }
            }
            p.sup_log[b * std::size_t(na) + std::size_t(j)] = best;
            p.sample_count[b * std::size_t(na) + std::size_t(j)] = cnt;
        }
    });
    finalize(p, w, opt);
    return p;
}

namespace {

void profile_point(DecayProfile& p, const ConePartition& part, double x, double xi,
                   double log_abs) {
    const double r = std::hypot(x, xi);
    if (r < p.radii.front() || r >= p.radii.back()) return;
    const int na = p.annuli();
    // geometric annulus index
    const double ratio = std::log(p.radii.back() / p.radii.front()) / double(na);
    int j = int(std::log(r / p.radii.front()) / ratio);
    j = std::clamp(j, 0, na - 1);
    const double theta = std::atan2(xi, x);
    for (int b : part.bins_of(theta)) {
        double& slot = p.sup_log[std::size_t(b * na + j)];
        slot = std::max(slot, log_abs);
        ++p.sample_count[std::size_t(b * na + j)];
    }
}

} // namespace

DecayProfile decay_profile(const StftMatrix& V, const ConePartition& part,
                           const WeightFunction& w, const ProfileOptions& opt) {
    ProfileOptions o = opt;
    if (o.floor_rel == 0.0) o.floor_rel = 1e-14;  // grid values carry FFT noise
    DecayProfile p = make_profile(part, w, o);
    for (std::size_t j = 0; j < V.pg.nx; ++j) {
        const double x = V.pg.x(j);
        for (std::size_t k = 0; k < V.pg.nxi; ++k) {
            const double a = std::abs(V.at(j, k));
            profile_point(p, part, x, V.pg.xi(k), a > 0.0 ? std::log(a) : kNoSample + 1.0);
        }
    }
    finalize(p, w, o);
    return p;
}

DecayProfile decay_profile_signal(const SampledSignal& u, const Window& win,
                                  const ConePartition& part, const WeightFunction& w,
                                  ProfileOptions opt) {
    if (u.grid.d != 1) throw config_error("decay_profile_signal: d = 1 only");
    const UniformGrid& g = u.grid;
    const double rmax_grid = 0.98 * std::min(g.half_extent, g.freq_half_extent());
    if (opt.reach <= 0.0) opt.reach = 0.9 * rmax_grid;
    if (opt.reach > rmax_grid)
        throw config_error("decay_profile_signal: reach exceeds the grid phase box");
    if (opt.floor_rel == 0.0) opt.floor_rel = 1e-14;

    DecayProfile p = make_profile(part, w, opt);
    const SampledSignal wvec = window_signal(win, g);
    const std::size_t n = g.n;
    std::vector<cplx> col;
    for (std::size_t j = 0; j < n; ++j) {
        const double x = g.node(j);
        if (std::abs(x) > opt.reach) continue;
        stft_column(u, wvec, j, col);
        const UniformGrid dual = g.dual();
        for (std::size_t k = 0; k < n; ++k) {
            const double a = std::abs(col[k]);
            profile_point(p, part, x, dual.node(k), a > 0.0 ? std::log(a) : kNoSample + 1.0);
        }
    }
    finalize(p, w, opt);
    return p;
}

DecayProfile decay_profile_lattice(const StftEvaluator& ev, double alpha0, double beta0,
                                   const ConePartition& part, const WeightFunction& w,
                                   const ProfileOptions& opt) {
    if (!(alpha0 > 0.0) || !(beta0 > 0.0))
        throw config_error("decay_profile_lattice: lattice steps must be positive");
    DecayProfile p = make_profile(part, w, opt);
    const int na = p.annuli();
    const long kmax = long(std::ceil(opt.reach / alpha0));
    const long nmax = long(std::ceil(opt.reach / beta0));
    for (long k = -kmax; k <= kmax; ++k) {
        const double x = alpha0 * double(k);
        for (long m = -nmax; m <= nmax; ++m) {
            const double xi = beta0 * double(m);
            const double r = std::hypot(x, xi);
            if (r < p.radii.front() || r >= p.radii.back()) continue;
            profile_point(p, part, x, xi, ev.log_abs(x, xi));
        }
    }
    // under-sampled: any of the outer half annuli with < 3 lattice points
    p.undersampled.assign(std::size_t(part.nbins), false);
    for (int b = 0; b < part.nbins; ++b)
        for (int j = na / 2; j < na; ++j)
            if (p.sample_count[std::size_t(b * na + j)] < 3) p.undersampled[std::size_t(b)] = true;
    finalize(p, w, opt);
    return p;
}

WfsEstimate classify(const DecayProfile& p, double lambda_reg, WfsEstimate::Method method) {
    WfsEstimate e;
    e.method = method;
    e.nbins = p.part.nbins;
    e.lambda_reg = lambda_reg;
    e.rates = p.fitted_rate;
    e.indeterminate = p.indeterminate;
    e.undersampled = p.undersampled;
    for (int b = 0; b < p.part.nbins; ++b) {
        if (p.indeterminate[std::size_t(b)]) continue;  // fast decay: regular
        if (p.fitted_rate[std::size_t(b)] < lambda_reg) e.singular_bins.insert(b);
    }
    return e;
}

namespace {

double auto_lambda_reg(const DecayProfile& p, const ProfileOptions& opt, double lambda_reg) {
    return lambda_reg > 0.0 ? lambda_reg : opt.kappa * p.lambda_max();
}

// |V(Pi(z0)u)(z)| = |V(u)(z - z0)|
class ShiftedEvaluator final : public StftEvaluator {
public:
    ShiftedEvaluator(const StftEvaluator& base, double x0, double xi0)
        : base_(base), x0_(x0), xi0_(xi0) {}
    double log_abs(double x, double xi) const override {
        return base_.log_abs(x - x0_, xi - xi0_);
    }
    cplx eval(double x, double xi) const override { return base_.eval(x - x0_, xi - xi0_); }
    std::string id() const override { return "shifted:" + base_.id(); }

private:
    const StftEvaluator& base_;
    double x0_, xi0_;
};

} // namespace

WfsEstimate wfs_cone(const DistributionSpec& u, const GaussianWindow& win,
                     const WeightFunction& w, const ConePartition& part,
                     const ProfileOptions& opt, double lambda_reg) {
    const auto ev = make_evaluator(u, win);
    DecayProfile p = decay_profile(*ev, part, w, opt);
    WfsEstimate e = classify(p, auto_lambda_reg(p, opt, lambda_reg), WfsEstimate::Method::Cone);
    e.weight_id = w.id();
    e.window_id = win.id();
    return e;
}

WfsEstimate wfs_lattice(const DistributionSpec& u, const GaussianWindow& win, double alpha0,
                        double beta0, const WeightFunction& w, const ConePartition& part,
                        const ProfileOptions& opt, double lambda_reg) {
    const auto ev = make_evaluator(u, win);
    DecayProfile p = decay_profile_lattice(*ev, alpha0, beta0, part, w, opt);
    WfsEstimate e = classify(p, auto_lambda_reg(p, opt, lambda_reg), WfsEstimate::Method::Lattice);
    e.weight_id = w.id();
    e.window_id = win.id();
    return e;
}

std::size_t symmetric_difference_bins(const WfsEstimate& a, const WfsEstimate& b) {
    std::size_t diff = 0;
    for (int s : a.singular_bins)
        if (!b.singular_bins.count(s)) ++diff;
    for (int s : b.singular_bins)
        if (!a.singular_bins.count(s)) ++diff;
    return diff;
}

std::size_t compare_cone_lattice(const DistributionSpec& u, const GaussianWindow& win,
                                 double alpha0, double beta0, const WeightFunction& w,
                                 const ConePartition& part, const ProfileOptions& opt) {
    const WfsEstimate c = wfs_cone(u, win, w, part, opt);
    const WfsEstimate l = wfs_lattice(u, win, alpha0, beta0, w, part, opt);
    return symmetric_difference_bins(c, l);
}

SchwartzCheck is_schwartz_omega(const StftEvaluator& ev, const WeightFunction& w,
                                const ConePartition& part, const ProfileOptions& opt,
                                double lambda_reg) {
    DecayProfile p = decay_profile(ev, part, w, opt);
    const double lr = auto_lambda_reg(p, opt, lambda_reg);
    const WfsEstimate e = classify(p, lr, WfsEstimate::Method::Cone);

    // all-direction fit: per-annulus global suprema
    SchwartzCheck out;
    const int na = p.annuli();
    std::vector<double> xs, ys;
    for (int j = 0; j < na; ++j) {
        double best = kNoSample;
        for (int b = 0; b < part.nbins; ++b)
            best = std::max(best, p.sup_log[std::size_t(b * na + j)]);
        if (best <= p.floor_log) continue;
        xs.push_back(w.eval(p.r_rep[std::size_t(j)]));
        ys.push_back(best);
    }
    if (xs.size() >= 4) {
        if (xs.size() > 6) {
            xs.erase(xs.begin(), xs.end() - 6);
            ys.erase(ys.begin(), ys.end() - 6);
        }
        out.global_rate = -ls_slope(xs, ys);
    } else {
        out.global_rate = std::numeric_limits<double>::infinity();
    }
    out.in_class = e.singular_bins.empty();
    return out;
}

SchwartzCheck is_schwartz_omega(const DistributionSpec& u, const GaussianWindow& win,
                                const WeightFunction& w, const ProfileOptions& opt,
                                double lambda_reg) {
    const auto ev = make_evaluator(u, win);
    return is_schwartz_omega(*ev, w, ConePartition(), opt, lambda_reg);
}

std::size_t invariance_check(const DistributionSpec& u, const GaussianWindow& win,
                             const PhasePoint& z0, const WeightFunction& w,
                             const ConePartition& part, const ProfileOptions& opt) {
    const auto ev = make_evaluator(u, win);
    const double x0 = z0.x.empty() ? 0.0 : z0.x[0];
    const double xi0 = z0.xi.empty() ? 0.0 : z0.xi[0];
    const ShiftedEvaluator shifted(*ev, x0, xi0);

    DecayProfile pa = decay_profile(*ev, part, w, opt);
    DecayProfile pb = decay_profile(shifted, part, w, opt);
    const WfsEstimate a = classify(pa, auto_lambda_reg(pa, opt, 0.0), WfsEstimate::Method::Cone);
    const WfsEstimate b = classify(pb, auto_lambda_reg(pb, opt, 0.0), WfsEstimate::Method::Cone);
    return symmetric_difference_bins(a, b);
}

std::size_t window_independence_check(const DistributionSpec& u, const GaussianWindow& phi,
                                      const GaussianWindow& psi, const WeightFunction& w,
                                      const ConePartition& part, const ProfileOptions& opt) {
    const WfsEstimate a = wfs_cone(u, phi, w, part, opt);
    const WfsEstimate b = wfs_cone(u, psi, w, part, opt);
    return symmetric_difference_bins(a, b);
}

std::string WfsEstimate::to_json() const {
    nlohmann::json j;
    j["bins"] = std::vector<int>(singular_bins.begin(), singular_bins.end());
    j["nbins"] = nbins;
    j["threshold"] = lambda_reg;
    j["method"] = method == Method::Cone ? "cone" : "lattice";
    j["weight"] = weight_id;
    j["window"] = window_id;
    std::vector<double> rr = rates;
    for (double& v : rr)
        if (!std::isfinite(v)) v = -1.0;  // JSON-safe marker for indeterminate
    j["rates"] = rr;
    j["indeterminate"] = std::vector<bool>(indeterminate.begin(), indeterminate.end());
    if (!undersampled.empty())
        j["undersampled"] = std::vector<bool>(undersampled.begin(), undersampled.end());
    return j.dump();
}

std::string WfsEstimate::to_polar_csv() const {
    std::ostringstream os;
    os << "angle,rate,singular\n";
    const double w = 2.0 * M_PI / double(nbins);
    for (int b = 0; b < nbins; ++b) {
        const double ang = -M_PI + double(b) * w;
        const double r = (b < int(rates.size()) && std::isfinite(rates[std::size_t(b)]))
                             ? rates[std::size_t(b)]
                             : -1.0;
        os << ang << ',' << r << ',' << (singular_bins.count(b) ? 1 : 0) << '\n';
    }
    return os.str();
}

} // namespace gwf
