#ifndef GWF_FFT_HPP
#define GWF_FFT_HPP

#include <complex>
#include <cstddef>
#include <vector>

namespace gwf {

using cplx = std::complex<double>;

// In-place radix-2 DFT, length must be a power of two.
// sign = -1: X_k = sum_j x_j e^{-2*pi*i*j*k/n}  (forward)
// sign = +1: the unnormalized inverse; divide by n to invert.
void fft_pow2(cplx* data, std::size_t n, int sign);

inline void fft_pow2(std::vector<cplx>& v, int sign) { fft_pow2(v.data(), v.size(), sign); }

bool is_pow2(std::size_t n);

} // namespace gwf

#endif
