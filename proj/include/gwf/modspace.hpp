#ifndef GWF_MODSPACE_HPP
#define GWF_MODSPACE_HPP

#include "gwf/frames.hpp"
#include "gwf/stft.hpp"
#include "gwf/weights.hpp"

#include <limits>
#include <string>

namespace gwf {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Weighted mixed-norm parameters; p, q in [1, inf], inf encoded as kInf.
struct MixedNormSpec {
    double p = 2.0, q = 2.0;
    ExpWeight weight;

    MixedNormSpec(double p_, double q_, ExpWeight w);
};

// || F ||_{L^{p,q}_{m_lambda}} by grid quadrature: inner x-integral (weighted
// by dx), outer xi-integral (dxi); ess sup is the grid max.
double lpq_norm(const StftMatrix& F, const MixedNormSpec& spec);

// Discrete counterpart on lattice coefficients with
// m~_lambda(k,n) = m_lambda(alpha0 k, beta0 n); no quadrature weights.
double lpq_seq_norm(const LatticeCoeffs& c, const MixedNormSpec& spec);

// Amalgam norm W(L^{p,q}_{m_lambda}): per-unit-cube maxima of |F| on the
// integer grid, then the weighted sequence norm. The phase grid spacings
// must divide 1.
double amalgam_norm(const StftMatrix& F, const MixedNormSpec& spec);

struct YoungCheck {
    double lhs = 0.0;        // ||F*G||_{L^{p,q}_m}
    double norm_F = 0.0;     // ||F||_{L^{p,q}_m}
    double norm_G_l1v = 0.0; // ||G||_{L^1_v}
    double fitted_C = 0.0;
    bool pass = false;
};

// Young inequality ||F*G|| <= C ||F|| ||G||_{L^1_v} with the constant fitted
// and reported; both operands must share one phase grid.
YoungCheck young_check(const StftMatrix& F, const StftMatrix& G, const MixedNormSpec& spec);

// q_{lambda,mu}(f) = max_{|alpha|<=K, x} |D^alpha f(x)|
//                    e^{-lambda phi*(|alpha|/lambda) + mu omega(x)},
// derivatives by spectral differentiation.
double seminorm_q(const SampledSignal& f, double lambda, double mu, const WeightFunction& w,
                  int K);

// ||V_phi f||_{omega,lambda} = max_z |V_phi f(z)| e^{lambda omega(z)}.
double seminorm_stft(const DistributionSpec& f, const Window& phi, const UniformGrid& g,
                     double lambda, const WeightFunction& w);

// Modulation norm: || V_phi f ||_{L^{p,q}_{m_lambda}}.
double modulation_norm(const DistributionSpec& f, const Window& phi, const UniformGrid& g,
                       const MixedNormSpec& spec);

// {norm, p, q, lambda, weight, grid} record
std::string norm_report_json(const std::string& name, double value, const MixedNormSpec& spec,
                             const UniformGrid& g);

} // namespace gwf

#endif
