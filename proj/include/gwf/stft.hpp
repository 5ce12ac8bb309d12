#ifndef GWF_STFT_HPP
#define GWF_STFT_HPP

#include "gwf/grid.hpp"

#include <memory>
#include <optional>
#include <string>
#include <variant>

namespace gwf {

// Gaussian analysis window A * exp(-(t-center)^2 / (2 width^2)), d = 1.
// Every closed-form STFT in the catalog is derived against this family.
struct GaussianWindow {
    double width = 1.0;
    double center = 0.0;
    double amplitude = 1.0;

    double eval(double t) const;
    double hat(double xi) const;     // Fourier transform (real for center = 0)
    double l2_norm_sq() const;       // amplitude^2 * width * sqrt(pi)
    static GaussianWindow l2_normalized(double width);
    std::string id() const;
};

using Window = std::variant<GaussianWindow, SampledSignal>;

std::string window_id(const Window& w);
// Window as a grid vector (Gaussians evaluated pointwise).
SampledSignal window_signal(const Window& w, const UniformGrid& g);

struct PhasePoint {
    std::vector<double> x, xi;
};

// Uniform rectangular phase-space sampling (d = 1): shifts x_j = x0 + j*dx,
// frequencies xi_k = xi0 + k*dxi.
struct PhaseGrid {
    std::size_t nx = 0, nxi = 0;
    double x0 = 0.0, dx = 0.0, xi0 = 0.0, dxi = 0.0;

    double x(std::size_t j) const { return x0 + double(j) * dx; }
    double xi(std::size_t k) const { return xi0 + double(k) * dxi; }
    static PhaseGrid from_grid(const UniformGrid& g);  // signal grid x dual grid
};

struct StftMatrix {
    PhaseGrid pg;
    std::vector<cplx> values;  // shift-major: values[j*nxi + k]
    double quad_dx = 0.0;      // y-quadrature weight used to form V
    std::string window_id;

    cplx& at(std::size_t j, std::size_t k) { return values[j * pg.nxi + k]; }
    const cplx& at(std::size_t j, std::size_t k) const { return values[j * pg.nxi + k]; }
    double max_abs() const;
};

enum class StftPath { Auto, Numeric, Analytic };

// Pi(z)phi = e^{i<y,xi>} phi(y - x) on phi's grid. x snaps to the nearest
// node (the offset must stay below dx/2); mass pushed off the grid sets the
// truncation flag.
SampledSignal phase_shift(const SampledSignal& phi, const PhasePoint& z);

// V_phi u on the phase grid. Numeric path: per shift, windowed FFT column
// (requires pg frequencies aligned with the dual grid). Analytic path:
// closed forms, catalog u with Gaussian window only.
StftMatrix stft(const DistributionSpec& u, const Window& w, const UniformGrid& g,
                const PhaseGrid& pg, StftPath path = StftPath::Auto);
StftMatrix stft(const DistributionSpec& u, const Window& w, const UniformGrid& g,
                StftPath path = StftPath::Auto);

// V*_phi F(t) = sum_z F(z) e^{i t xi} phi(t-x) dx dxi on the target grid.
SampledSignal stft_adjoint(const StftMatrix& F, const Window& w, const UniformGrid& g);

// One STFT column (fixed shift which must be a grid node) evaluated on the
// full dual-frequency grid; lets callers stream over shifts without
// materializing the whole matrix.
void stft_column(const SampledSignal& u, const SampledSignal& window_vec, std::size_t shift_index,
                 std::vector<cplx>& out);

// max |F_2d[V_phi f](eta, y) - (2pi)^d e^{i<eta,y>} f(-y) conj(phi_hat(eta))|
double stft_fourier_identity_check(const DistributionSpec& f, const Window& w,
                                   const UniformGrid& g);

struct WindowChangeBound {
    double max_lhs = 0.0, max_rhs = 0.0, max_violation = 0.0;
    bool pass = false;
};

// |V_phi f| <= (2pi)^{-d} |<gamma,psi>|^{-1} (|V_psi f| * |V_phi gamma|),
// checked pointwise on the phase grid with tolerance tol * max(rhs).
WindowChangeBound window_change_bound_check(const DistributionSpec& f, const Window& phi,
                                            const Window& psi, const Window& gamma,
                                            const UniformGrid& g, double tol = 1e-6);

// Phase-space evaluator abstraction for the wave-front profilers: closed
// forms where available, direct quadrature for compactly supported samples.
class StftEvaluator {
public:
    virtual ~StftEvaluator() = default;
    virtual double log_abs(double x, double xi) const = 0;
    virtual cplx eval(double x, double xi) const = 0;
    virtual std::string id() const = 0;
};

// Catalog distribution + Gaussian window, exact closed forms (log space).
class AnalyticStftEvaluator final : public StftEvaluator {
public:
    AnalyticStftEvaluator(DistributionSpec u, GaussianWindow w);
    double log_abs(double x, double xi) const override;
    cplx eval(double x, double xi) const override;
    std::string id() const override;

private:
    DistributionSpec u_;
    GaussianWindow w_;
};

// Direct quadrature over the support of a sampled signal; exact for signals
// supported strictly inside their grid, any (x, xi).
class QuadratureStftEvaluator final : public StftEvaluator {
public:
    QuadratureStftEvaluator(SampledSignal u, GaussianWindow w, double support_eps = 0.0);
    double log_abs(double x, double xi) const override;
    cplx eval(double x, double xi) const override;
    std::string id() const override;

private:
    SampledSignal u_;
    GaussianWindow w_;
    std::size_t lo_ = 0, hi_ = 0;  // [lo, hi) support index range
};

std::unique_ptr<StftEvaluator> make_evaluator(const DistributionSpec& u, const GaussianWindow& w);

} // namespace gwf

#endif
