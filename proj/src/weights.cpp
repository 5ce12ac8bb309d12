#include "gwf/weights.hpp"

#include "gwf/errors.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include <json.hpp>

namespace gwf {

using nlohmann::json;

WeightFunction WeightFunction::power(double a, Normalization norm) {
    if (!(a > 0.0 && a < 1.0)) throw config_error("Power weight requires a in (0,1)");
    WeightFunction w;
    w.kind_ = Kind::Power;
    w.param_ = a;
    w.norm_ = norm;
    return w;
}

WeightFunction WeightFunction::log_power(double s, Normalization norm) {
    if (!(s > 1.0)) throw config_error("LogPower weight requires s > 1");
    WeightFunction w;
    w.kind_ = Kind::LogPower;
    w.param_ = s;
    w.norm_ = norm;
    return w;
}

WeightFunction WeightFunction::tabulated(std::vector<double> knots, std::vector<double> values,
                                         Normalization norm) {
    if (knots.size() < 2 || knots.size() != values.size())
        throw config_error("Tabulated weight needs >= 2 matching knots/values");
    if (knots.front() != 0.0 || values.front() != 0.0)
        throw config_error("Tabulated weight must start at (0, 0)");
    for (std::size_t i = 1; i < knots.size(); ++i) {
        if (!(knots[i] > knots[i - 1])) throw config_error("Tabulated knots must be increasing");
        if (values[i] < values[i - 1]) throw config_error("Tabulated values must be nondecreasing");
    }
    WeightFunction w;
    w.kind_ = Kind::Tabulated;
    w.norm_ = norm;
    w.last_slope_ = (values.back() - values[values.size() - 2]) /
                    (knots.back() - knots[knots.size() - 2]);
    w.knots_ = std::move(knots);
    w.values_ = std::move(values);
    return w;
}

double WeightFunction::eval_raw(double t) const {
    switch (kind_) {
    case Kind::Power:
        return std::pow(t, param_);
    case Kind::LogPower:
        return std::pow(std::log1p(t), param_);
    case Kind::Tabulated: {
        if (t >= knots_.back()) return values_.back() + last_slope_ * (t - knots_.back());
        auto it = std::upper_bound(knots_.begin(), knots_.end(), t);
        const std::size_t i = std::size_t(it - knots_.begin());  // t < knots_[i], i >= 1
        const double u = (t - knots_[i - 1]) / (knots_[i] - knots_[i - 1]);
        return values_[i - 1] + u * (values_[i] - values_[i - 1]);
    }
    }
    return 0.0;
}

double WeightFunction::eval(double t) const {
    if (t < 0.0) throw config_error("omega: negative argument");
    if (norm_ == Normalization::ClampedBelowOne) {
        if (t <= 1.0) return 0.0;
        return std::max(0.0, eval_raw(t) - eval_raw(1.0));
    }
    return eval_raw(t);
}

double WeightFunction::eval_point(std::span<const double> z) const {
    double s = 0.0;
    for (double c : z) s += c * c;
    return eval(std::sqrt(s));
}

namespace {

// one golden-section pass maximizing g on [lo, hi]
double golden_max(double lo, double hi, const auto& g) {
    const double phi = 0.6180339887498949;
    double a = lo, b = hi;
    double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
    double g1 = g(x1), g2 = g(x2);
    for (int it = 0; it < 80; ++it) {
        if (g1 < g2) {
            a = x1;
            x1 = x2;
            g1 = g2;
            x2 = a + phi * (b - a);
            g2 = g(x2);
        } else {
            b = x2;
            x2 = x1;
            g2 = g1;
            x1 = b - phi * (b - a);
            g1 = g(x1);
        }
    }
    return std::max(g1, g2);
}

} // namespace

double WeightFunction::young_conjugate(double s) const {
    if (s < 0.0) throw config_error("young_conjugate: s must be >= 0");

    if (kind_ == Kind::Power && norm_ == Normalization::Raw) {
        // phi(t) = e^{a t}: supremum at t = log(s/a)/a when s >= a, else t = 0.
        const double a = param_;
        if (s < a) return -1.0;
        return (s / a) * (std::log(s / a) - 1.0);
    }

    const auto phi = [this](double t) { return eval(std::exp(t)); };
    const auto g = [&](double t) { return t * s - phi(t); };

    // log-spaced grid on [1e-6, 200] plus the t = 0 endpoint
    const int npts = 200000;
    const double t_lo = 1e-6, t_hi = 200.0;
    const double lr = std::log(t_hi / t_lo) / (npts - 1);
    double best = g(0.0), best_t = 0.0;
    for (int i = 0; i < npts; ++i) {
        const double t = t_lo * std::exp(lr * i);
        const double v = g(t);
        if (v > best) {
            best = v;
            best_t = t;
        }
    }
    const double lo = best_t * std::exp(-lr), hi = std::min(t_hi, best_t * std::exp(lr));
    best = std::max(best, golden_max(std::max(0.0, lo), hi, g));

    if (kind_ == Kind::Tabulated) {
        // the supremum must be attained inside the tabulated range
        if (std::exp(best_t) > knots_.back()) {
            const double max_s = last_slope_ * knots_.back();
            throw range_error("young_conjugate: tabulated weight range too short for s", max_s);
        }
    }
    return best;
}

double WeightFunction::subadditivity_defect(double tmax, int ntrials, std::uint64_t seed) const {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, tmax);
    double worst = -1e300;
    for (int i = 0; i < ntrials; ++i) {
        const double t1 = u(rng), t2 = u(rng);
        worst = std::max(worst, eval(t1 + t2) - eval(t1) - eval(t2));
    }
    return worst;
}

std::string WeightFunction::to_json() const {
    json j;
    switch (kind_) {
    case Kind::Power:
        j["kind"] = "power";
        j["a"] = param_;
        break;
    case Kind::LogPower:
        j["kind"] = "logpower";
        j["s"] = param_;
        break;
    case Kind::Tabulated:
        j["kind"] = "tabulated";
        j["knots"] = knots_;
        j["values"] = values_;
        break;
    }
    j["normalization"] = (norm_ == Normalization::Raw) ? "raw" : "clamped";
    return j.dump();
}

WeightFunction WeightFunction::from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const std::exception& e) {
        throw config_error(std::string("weight JSON parse failure: ") + e.what());
    }
    if (!j.contains("kind")) throw config_error("weight descriptor: missing field 'kind'");
    Normalization norm = Normalization::Raw;
    if (j.contains("normalization")) {
        const std::string n = j["normalization"];
        if (n == "raw")
            norm = Normalization::Raw;
        else if (n == "clamped")
            norm = Normalization::ClampedBelowOne;
        else
            throw config_error("weight descriptor: unknown normalization '" + n + "'");
    }
    const std::string kind = j["kind"];
    if (kind == "power") {
        if (!j.contains("a")) throw config_error("weight descriptor: missing field 'a'");
        return power(j["a"].get<double>(), norm);
    }
    if (kind == "logpower") {
        if (!j.contains("s")) throw config_error("weight descriptor: missing field 's'");
        return log_power(j["s"].get<double>(), norm);
    }
    if (kind == "tabulated") {
        if (!j.contains("knots") || !j.contains("values"))
            throw config_error("weight descriptor: missing field 'knots'/'values'");
        return tabulated(j["knots"].get<std::vector<double>>(),
                         j["values"].get<std::vector<double>>(), norm);
    }
    throw config_error("weight descriptor: unknown kind '" + kind + "'");
}

std::string WeightFunction::id() const {
    std::ostringstream os;
    switch (kind_) {
    case Kind::Power:
        os << "power(" << param_ << ")";
        break;
    case Kind::LogPower:
        os << "logpower(" << param_ << ")";
        break;
    case Kind::Tabulated:
        os << "tabulated[" << knots_.size() << "]";
        break;
    }
    if (norm_ == Normalization::ClampedBelowOne) os << ":clamped";
    return os.str();
}

ExpWeight::ExpWeight(double lambda, WeightFunction base)
    : lambda_(lambda), base_(std::move(base)) {
    if (lambda == 0.0) throw config_error("ExpWeight: lambda must be nonzero");
}

double ExpWeight::log_m(double r) const { return lambda_ * base_.eval(r); }
double ExpWeight::log_v(double r) const { return std::abs(lambda_) * base_.eval(r); }
double ExpWeight::m(double r) const { return std::exp(log_m(r)); }
double ExpWeight::v(double r) const { return std::exp(log_v(r)); }

double ExpWeight::log_m_point(std::span<const double> z) const {
    return lambda_ * base_.eval_point(z);
}

double ExpWeight::m_point(std::span<const double> z) const {
    return std::exp(log_m_point(z));
}

} // namespace gwf
