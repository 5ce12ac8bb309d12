#ifndef GWF_WAVEFRONT_HPP
#define GWF_WAVEFRONT_HPP

#include "gwf/stft.hpp"
#include "gwf/weights.hpp"

#include <set>
#include <string>
#include <vector>

namespace gwf {

// Equiangular direction bins on the phase-space circle (d = 1). Bin b is
// centered at theta_b = -pi + b * (2pi/nbins) and its aperture extends
// (1 + 2*overlap)/2 bin widths to each side... see half_aperture().
struct ConePartition {
    int d = 1;
    int nbins = 180;
    double aperture_overlap = 0.5;  // extra fraction of a bin on each side

    ConePartition() = default;
    ConePartition(int d_, int nbins_, double overlap);

    double bin_width() const { return 2.0 * M_PI / double(nbins); }
    double center(int b) const { return -M_PI + double(b) * bin_width(); }
    double half_aperture() const { return (0.5 + aperture_overlap) * bin_width(); }
    // all bins whose aperture contains direction angle theta
    std::vector<int> bins_of(double theta) const;
    // distance in bins on the circle
    int circular_distance(int a, int b) const;
};

struct ProfileOptions {
    double r_min = 4.0;
    double reach = 0.0;          // outermost annulus radius (required)
    int annuli = 12;
    double floor_abs = 1e-280;   // linear absolute floor
    double floor_rel = 0.0;      // floor at floor_rel * max|V| as well (0 = off)
    int angle_samples = 7;       // evaluator-based sampling per bin/annulus
    int radial_samples = 5;
    double kappa = 0.5;          // Lambda_reg = kappa * Lambda_max when auto
};

// Per-bin annulus suprema of log|V| and the fitted decay rates in
// omega-units (rate = -LS-slope of sup log|V| against omega(r) over the
// outermost <= 6 non-floored annuli).
struct DecayProfile {
    ConePartition part;
    std::vector<double> radii;     // annulus bounds, size annuli+1
    std::vector<double> r_rep;     // representative radius per annulus
    std::vector<double> sup_log;   // [bin * annuli + j]; -1e300 = no sample
    std::vector<int> sample_count; // samples per bin/annulus
    double floor_log = -1e300;
    double global_max_log = -1e300;
    double omega_reach = 0.0;      // omega(outermost radius)

    std::vector<double> fitted_rate;     // +inf when indeterminate
    std::vector<bool> indeterminate;     // fewer than 4 non-floored annuli
    std::vector<bool> undersampled;      // lattice profiling only

    int annuli() const { return int(radii.size()) - 1; }
    // largest decay rate observable in this profile's dynamic range
    double lambda_max() const;
};

struct WfsEstimate {
    enum class Method { Cone, Lattice };
    std::set<int> singular_bins;
    double lambda_reg = 0.0;
    Method method = Method::Cone;
    int nbins = 0;
    std::string weight_id, window_id;
    std::vector<double> rates;
    std::vector<bool> indeterminate, undersampled;

    std::string to_json() const;
    std::string to_polar_csv() const;
};

// Conic profiling of an evaluator by polar sampling of every bin/annulus.
DecayProfile decay_profile(const StftEvaluator& ev, const ConePartition& part,
                           const WeightFunction& w, const ProfileOptions& opt);

// Conic profiling of a precomputed phase-space matrix (grid points stream
// into bins and annuli).
DecayProfile decay_profile(const StftMatrix& V, const ConePartition& part,
                           const WeightFunction& w, const ProfileOptions& opt);

// Numeric-path profiling of a sampled signal: STFT columns are streamed, the
// full matrix is never stored. Reach defaults to min(L, Xi) clipped by opt.
DecayProfile decay_profile_signal(const SampledSignal& u, const Window& win,
                                  const ConePartition& part, const WeightFunction& w,
                                  ProfileOptions opt);

// Lattice-restricted profiling over alpha0 Z x beta0 Z within the reach.
// Bins whose outer annuli hold fewer than 3 lattice points are flagged
// under-sampled (still classified).
DecayProfile decay_profile_lattice(const StftEvaluator& ev, double alpha0, double beta0,
                                   const ConePartition& part, const WeightFunction& w,
                                   const ProfileOptions& opt);

// rate < lambda_reg and not indeterminate => singular. lambda_reg <= 0
// selects the default kappa * lambda_max policy.
WfsEstimate classify(const DecayProfile& p, double lambda_reg, WfsEstimate::Method method);

WfsEstimate wfs_cone(const DistributionSpec& u, const GaussianWindow& win,
                     const WeightFunction& w, const ConePartition& part,
                     const ProfileOptions& opt, double lambda_reg = 0.0);

WfsEstimate wfs_lattice(const DistributionSpec& u, const GaussianWindow& win, double alpha0,
                        double beta0, const WeightFunction& w, const ConePartition& part,
                        const ProfileOptions& opt, double lambda_reg = 0.0);

std::size_t symmetric_difference_bins(const WfsEstimate& a, const WfsEstimate& b);

// |WF_cone(u) symdiff WF_lattice(u)|
std::size_t compare_cone_lattice(const DistributionSpec& u, const GaussianWindow& win,
                                 double alpha0, double beta0, const WeightFunction& w,
                                 const ConePartition& part, const ProfileOptions& opt);

struct SchwartzCheck {
    bool in_class = false;
    double global_rate = 0.0;  // all-direction fitted rate
};

// WF empty <=> in S_omega (the two code paths are the same classifier by
// construction; the global fit is reported alongside).
SchwartzCheck is_schwartz_omega(const DistributionSpec& u, const GaussianWindow& win,
                                const WeightFunction& w, const ProfileOptions& opt,
                                double lambda_reg = 0.0);
SchwartzCheck is_schwartz_omega(const StftEvaluator& ev, const WeightFunction& w,
                                const ConePartition& part, const ProfileOptions& opt,
                                double lambda_reg = 0.0);

// WF(Pi(z0) u) vs WF(u): phase-space shifts act on the evaluator through
// |V(Pi(z0)u)(z)| = |V(u)(z - z0)|.
std::size_t invariance_check(const DistributionSpec& u, const GaussianWindow& win,
                             const PhasePoint& z0, const WeightFunction& w,
                             const ConePartition& part, const ProfileOptions& opt);

std::size_t window_independence_check(const DistributionSpec& u, const GaussianWindow& phi,
                                      const GaussianWindow& psi, const WeightFunction& w,
                                      const ConePartition& part, const ProfileOptions& opt);

} // namespace gwf

#endif
