#ifndef GWF_OPERATORS_HPP
#define GWF_OPERATORS_HPP

#include "gwf/stft.hpp"
#include "gwf/wavefront.hpp"
#include "gwf/weights.hpp"

#include <set>
#include <string>
#include <vector>

namespace gwf {

// Phase-space symbol a(x, xi) with order m. The catalog sources are smooth:
// Bump is the classic compactly supported mollifier profile, ConeCutoff a
// smooth angular window with a radial ramp past the inner radius,
// Polynomial a finite sum c_{ab} x^a xi^b.
struct SymbolSpec {
    enum class Source { Sampled, ConeCutoff, Bump, Polynomial };

    struct PolyTerm {
        int alpha = 0, beta = 0;
        cplx coeff{1.0, 0.0};
    };

    Source source = Source::Polynomial;
    double order_m = 0.0;

    // Sampled
    PhaseGrid pg;
    std::vector<cplx> samples;

    // ConeCutoff
    std::vector<double> cone_angles;     // center directions, radians
    double cone_half_width = 0.15;       // angular half width
    double inner_radius = 4.0;
    double smoothing = 2.0;              // radial ramp length

    // Bump
    double bump_cx = 0.0, bump_cxi = 0.0, bump_radius = 3.0;

    // Polynomial
    std::vector<PolyTerm> poly;

    static SymbolSpec one();
    static SymbolSpec polynomial(std::vector<PolyTerm> terms, double m);
    static SymbolSpec bump(double cx, double cxi, double radius);
    static SymbolSpec cone_cutoff(std::vector<double> angles, double half_width,
                                  double inner_radius, double smoothing, double m = 0.0);
    static SymbolSpec sampled(PhaseGrid pg, std::vector<cplx> values, double m);

    cplx eval(double x, double xi) const;
    std::string id() const;
};

// Kohn-Nirenberg quantization applied on the grid:
// a(x,D) f(x) = (2pi)^{-d} sum_xi e^{i<x,xi>} a(x,xi) f_hat(xi) dxi.
SampledSignal kn_apply(const SymbolSpec& a, const SampledSignal& f);

struct SymbolClassReport {
    std::vector<double> lambdas, mus;      // tested 3x3 grid
    std::vector<double> constants;         // least C_{lambda,mu}, row-major
    bool pass = false;
};

// Least constants in the symbol-class bounds
// |d_x^alpha d_xi^beta a| <= C e^{l phi*(|a|/l)} e^{m phi*(|b|/m)} e^{m_ord omega(xi)}
// with finite-difference derivatives up to total order K on [-box, box]^2.
SymbolClassReport symbol_class_check(const SymbolSpec& a, double order_m, const WeightFunction& w,
                                     int K, double box = 20.0, std::size_t npts = 257);

// Bins whose outermost annulus meets {|a| > 1e-12 * max|a|}.
std::set<int> conesupp(const SymbolSpec& a, const ConePartition& part, double reach = 64.0,
                       int radial_samples = 8, int angle_samples = 16);

// Coarse 4-d STFT kernel K(z', z) of a(x,D) for an L2-normalized Gaussian
// window (d = 1); refuses more than 32^4 output points.
struct KernelTensor {
    std::size_t ny = 0;      // same count on all four axes
    double lo = 0.0, step = 0.0;
    std::vector<cplx> values;  // [iy'][ieta'][iy][ieta]

    cplx& at(std::size_t a, std::size_t b, std::size_t c, std::size_t d);
    const cplx& at(std::size_t a, std::size_t b, std::size_t c, std::size_t d) const;
    double axis(std::size_t i) const { return lo + double(i) * step; }
};

KernelTensor kn_kernel(const SymbolSpec& a, const GaussianWindow& phi, std::size_t coarse_n,
                       double coarse_box, const UniformGrid& fine);

struct ContainmentReport {
    bool pass = false;
    std::set<int> singular_bins;
    std::set<int> allowed_bins;
    std::vector<int> offending;
};

// WF(a(x,D) u) subset of conesupp(a) dilated by `dilation` bins; u is
// sampled on g (Delta inputs must be regularized first).
ContainmentReport wf_containment_check(const SymbolSpec& a, const DistributionSpec& u,
                                       const GaussianWindow& phi, const WeightFunction& w,
                                       const ConePartition& part, const UniformGrid& g,
                                       const ProfileOptions& opt, int dilation = 2);

// Narrow-Gaussian stand-in for delta on operator inputs; width = factor*dx.
DistributionSpec regularize_delta(const UniformGrid& g, double width_factor = 4.0);

// A(x,D) u = sum c_{ab} x^a D^b u with spectral derivatives; total order <= 6.
SampledSignal poly_apply(const std::vector<SymbolSpec::PolyTerm>& terms, const SampledSignal& u);

// V_phi(A u) assembled from derived windows D^mu phi_nu
// (phi_nu = x^nu phi); agrees with stft(poly_apply(...)).
StftMatrix stft_poly_expand(const std::vector<SymbolSpec::PolyTerm>& terms,
                            const DistributionSpec& u, const Window& phi, const UniformGrid& g);

// WF(A(x,D) u) inside WF(u) dilated by `dilation` bins.
ContainmentReport poly_wf_check(const std::vector<SymbolSpec::PolyTerm>& terms,
                                const DistributionSpec& u, const GaussianWindow& phi,
                                const WeightFunction& w, const ConePartition& part,
                                const UniformGrid& g, const ProfileOptions& opt,
                                int dilation = 2);

// L^a_{psi,gamma} f = V*_gamma(a . V_psi f); the symbol must satisfy
// |a(z)| <= C e^{tau omega(z)} on the phase grid (checked, fitted tau on
// failure).
SampledSignal localization_apply(const SymbolSpec& a, const Window& psi, const Window& gamma,
                                 const SampledSignal& f, double tau, const WeightFunction& w);

ContainmentReport localization_wf_check(const SymbolSpec& a, const Window& psi,
                                        const Window& gamma, const DistributionSpec& u,
                                        const GaussianWindow& phi, const WeightFunction& w,
                                        const ConePartition& part, const UniformGrid& g,
                                        const ProfileOptions& opt, double tau, int dilation = 2);

void write_kernel_bin(const std::string& path, const KernelTensor& k);
KernelTensor read_kernel_bin(const std::string& path);

} // namespace gwf

#endif
