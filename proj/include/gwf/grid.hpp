#ifndef GWF_GRID_HPP
#define GWF_GRID_HPP

#include "gwf/fft.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace gwf {

// Symmetric uniform grid on [-L, L)^d with n points per axis (power of two).
// Nodes x_j = -L + j*dx, dx = 2L/n. The dual grid carries the frequencies
// xi_k = pi*k/L for k in [-n/2, n/2), matching the e^{-i<x,xi>} transform
// convention; as a symmetric grid it has half extent Xi = pi*n/(2L).
struct UniformGrid {
    int d = 1;
    std::size_t n = 1024;
    double half_extent = 20.0;

    UniformGrid() = default;
    UniformGrid(int d_, std::size_t n_, double L);

    double dx() const { return 2.0 * half_extent / double(n); }
    double dxi() const { return M_PI / half_extent; }
    double freq_half_extent() const { return M_PI * double(n) / (2.0 * half_extent); }
    double node(std::size_t j) const { return -half_extent + double(j) * dx(); }
    std::size_t size() const;  // n^d
    UniformGrid dual() const { return UniformGrid(d, n, freq_half_extent()); }

    bool operator==(const UniformGrid& o) const = default;
    // same layout up to rounding of the extent (dual-of-dual round trips)
    bool compatible(const UniformGrid& o) const;
};

// Picks L so the default phase-space box [-L,L] x [-Xi,Xi] is square:
// L = pi*n/(2L)  =>  L = sqrt(pi*n/2).
UniformGrid square_phase_grid(std::size_t n, int d = 1);

struct SampledSignal {
    UniformGrid grid;
    std::vector<cplx> values;
    bool truncation_warning = false;

    SampledSignal() = default;
    explicit SampledSignal(const UniformGrid& g) : grid(g), values(g.size(), cplx(0.0)) {}
};

// Analytic test-distribution catalog (section "Examples" corpus).
// Delta, Const and PlaneWave are not sampleable: they only enter through the
// closed-form STFT path. Chirp is d=1 only.
struct DistributionSpec {
    enum class Kind { Delta, Const, PlaneWave, Chirp, Gaussian, Sampled };
    Kind kind = Kind::Gaussian;
    std::vector<double> center;  // Delta / Gaussian
    std::vector<double> xi;      // PlaneWave
    double chirp_c = 1.0;        // Chirp
    double width = 1.0;          // Gaussian
    SampledSignal sampled;

    static DistributionSpec delta(std::vector<double> center = {0.0});
    static DistributionSpec constant();
    static DistributionSpec plane_wave(std::vector<double> xi);
    static DistributionSpec chirp(double c);
    static DistributionSpec gaussian(std::vector<double> center, double width);
    static DistributionSpec from_sampled(SampledSignal s);

    bool sampleable() const { return kind != Kind::Delta; }
    std::string id() const;
};

// Pointwise evaluation on the grid. Delta is refused; Chirp enforces the
// instantaneous-frequency Nyquist guard c*L < pi*n/(2L).
SampledSignal sample(const DistributionSpec& spec, const UniformGrid& grid);

// Discrete approximation of f_hat(xi) = int e^{-i<x,xi>} f(x) dx on the dual
// grid: DFT scaled by dx^d with the symmetric-grid phase correction.
SampledSignal fourier(const SampledSignal& f);

// Inverse transform carrying (2pi)^{-d} and dxi^d; exact round trip with
// fourier() up to rounding.
SampledSignal inverse_fourier(const SampledSignal& fhat);

// Quadrature inner product <f,g> = sum f conj(g) dx^d and the induced norm.
cplx quadrature_inner(const SampledSignal& f, const SampledSignal& g);
double quadrature_norm(const SampledSignal& f);

} // namespace gwf

#endif
