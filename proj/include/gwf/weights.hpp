#ifndef GWF_WEIGHTS_HPP
#define GWF_WEIGHTS_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace gwf {

// Non-quasianalytic subadditive weight function omega on [0, inf).
//
// Built-in families:
//   Power(a)    : omega(t) = t^a, 0 < a < 1
//   LogPower(s) : omega(t) = (log(1+t))^s, s > 1
//   Tabulated   : piecewise-linear through (knots, values), extended past the
//                 last knot by the final slope
//
// phi(t) = omega(e^t) is convex for all built-ins; its Young conjugate
// phi*(s) = sup_{t>=0} { t*s - phi(t) } is computed in closed form for raw
// Power weights and by a log-spaced grid supremum with golden-section
// refinement otherwise.
//
// LogPower is kept as the exact formula. It is subadditive only up to a
// bounded defect (max_{t1,t2} omega(t1+t2)-omega(t1)-omega(t2) is finite but
// nonzero for s > 1); subadditivity_defect() measures it.
class WeightFunction {
public:
    enum class Kind : std::uint8_t { Power, LogPower, Tabulated };
    enum class Normalization : std::uint8_t { Raw, ClampedBelowOne };

    static WeightFunction power(double a, Normalization norm = Normalization::Raw);
    static WeightFunction log_power(double s, Normalization norm = Normalization::Raw);
    static WeightFunction tabulated(std::vector<double> knots, std::vector<double> values,
                                    Normalization norm = Normalization::Raw);

    Kind kind() const { return kind_; }
    Normalization normalization() const { return norm_; }
    double param() const { return param_; }

    // omega(t); t < 0 is a domain error.
    double eval(double t) const;

    // omega(|z|) for a point z in R^d (or C^d coordinates flattened).
    double eval_point(std::span<const double> z) const;

    // phi*(s) = sup_{t>=0} { t*s - omega(e^t) }, s >= 0.
    double young_conjugate(double s) const;

    // max over ntrials random pairs in [0,tmax]^2 of
    // omega(t1+t2) - omega(t1) - omega(t2). Deterministic for fixed seed.
    double subadditivity_defect(double tmax, int ntrials, std::uint64_t seed) const;

    std::string to_json() const;
    static WeightFunction from_json(const std::string& text);

    // Short identifier for reports, e.g. "power(0.5)".
    std::string id() const;

private:
    WeightFunction() = default;
    double eval_raw(double t) const;

    Kind kind_ = Kind::Power;
    Normalization norm_ = Normalization::Raw;
    double param_ = 0.5;
    std::vector<double> knots_, values_;
    double last_slope_ = 0.0;
};

// m_lambda(z) = e^{lambda*omega(z)} and its majorant v_lambda = e^{|lambda|*omega(z)}.
// All evaluation is available in log space; lambda*omega can exceed the
// double exponent range long before the analysis loses interest.
class ExpWeight {
public:
    ExpWeight(double lambda, WeightFunction base);

    double lambda() const { return lambda_; }
    const WeightFunction& base() const { return base_; }

    double log_m(double radius) const;                 // lambda * omega(r)
    double log_m_point(std::span<const double> z) const;
    double log_v(double radius) const;                 // |lambda| * omega(r)
    double m(double radius) const;                     // may overflow to +inf
    double m_point(std::span<const double> z) const;
    double v(double radius) const;

private:
    double lambda_;
    WeightFunction base_;
};

} // namespace gwf

#endif
