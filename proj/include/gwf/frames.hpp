#ifndef GWF_FRAMES_HPP
#define GWF_FRAMES_HPP

#include "gwf/stft.hpp"
#include "gwf/weights.hpp"

#include <optional>
#include <string>
#include <vector>

namespace gwf {

// Separable lattice alpha0 Z x beta0 Z truncated to |k| <= kmax, |n| <= nmax.
struct Lattice {
    double alpha0 = 1.0, beta0 = 1.0;
    long kmax = 0, nmax = 0;

    Lattice() = default;
    Lattice(double a0, double b0, long km, long nm);

    // Truncation fitted to the grid: |alpha0 k| <= L - margin_x,
    // |beta0 n| <= Xi - margin_xi.
    static Lattice for_grid(const UniformGrid& g, double a0, double b0, double margin_x,
                            double margin_xi);

    std::size_t count_k() const { return std::size_t(2 * kmax + 1); }
    std::size_t count_n() const { return std::size_t(2 * nmax + 1); }
    double x_of(long k) const { return alpha0 * double(k); }
    double xi_of(long n) const { return beta0 * double(n); }
};

struct LatticeCoeffs {
    Lattice lattice;
    std::vector<cplx> values;  // (k + kmax) * count_n + (n + nmax)

    LatticeCoeffs() = default;
    explicit LatticeCoeffs(const Lattice& l)
        : lattice(l), values(l.count_k() * l.count_n(), cplx(0.0)) {}

    cplx& at(long k, long n);
    const cplx& at(long k, long n) const;
};

struct GaborSystem {
    Window window;
    Lattice lattice;
    UniformGrid grid;
    std::optional<std::pair<double, double>> bounds;  // (A, B) once estimated
};

// c_{kn} = <f, Pi(alpha0 k, beta0 n) phi> by grid quadrature (the sampled
// STFT at lattice nodes). Gaussian windows are translated analytically;
// sampled windows require alpha0 to be a multiple of dx.
LatticeCoeffs analysis(const GaborSystem& g, const SampledSignal& f);

// D_psi c = sum c_{kn} Pi(sigma) psi on the system grid.
SampledSignal synthesis(const GaborSystem& g, const LatticeCoeffs& c);

// S_{phi,psi} f = D_psi C_phi f; psi defaults to the system window.
SampledSignal frame_operator(const GaborSystem& g, const SampledSignal& f);
SampledSignal frame_operator(const GaborSystem& g, const SampledSignal& f, const Window& psi);

struct FrameBounds {
    double A = 0.0, B = 0.0;
    int iterations_B = 0, iterations_A = 0;
    double residual_B = 0.0, residual_A = 0.0;
    bool is_frame = true;  // false when A < 1e-10 * B

    std::string to_json() const;
};

// Extremal eigenvalues of the frame operator compressed to the inner part of
// the grid (|t| <= inner_fraction * L), which keeps finite-section edge
// effects out of the estimates. Power iteration for B, inverse power
// iteration (CG solves) for A.
FrameBounds frame_bounds(const GaborSystem& g, double inner_fraction = 0.5,
                         int max_iter = 500, double tol = 1e-11);

// psi = S^{-1} phi by conjugate gradients to relative residual cg_tol.
SampledSignal dual_window(const GaborSystem& g, double cg_tol = 1e-10, int max_iter = 2000);

struct ExpansionCheck {
    LatticeCoeffs coeffs;
    double max_deviation = 0.0;     // against the test functionals
    bool truncation_flag = false;
};

// Both sides of <u,theta> = sum_sigma <u,Pi(sigma)phi><Pi(sigma)psi,theta>
// evaluated against Gaussian test functions; u must have an analytic STFT.
ExpansionCheck expand_distribution(const DistributionSpec& u, const GaborSystem& g,
                                   const SampledSignal& dual,
                                   const std::vector<SampledSignal>& test_functions,
                                   double flag_tol = 1e-4);

} // namespace gwf

#endif
