#include "gwf/fft.hpp"

#include "gwf/errors.hpp"

#include <cmath>
#include <mutex>
#include <unordered_map>

namespace gwf {

bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

namespace {

// Twiddle cache: per length, the first half of the unit circle at that
// resolution, forward orientation. Guarded for concurrent STFT columns.
const std::vector<cplx>& twiddles(std::size_t n) {
    static std::unordered_map<std::size_t, std::vector<cplx>> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    std::vector<cplx> w(n / 2);
    for (std::size_t k = 0; k < n / 2; ++k) {
        const double a = -2.0 * M_PI * double(k) / double(n);
        w[k] = cplx(std::cos(a), std::sin(a));
    }
    return cache.emplace(n, std::move(w)).first->second;
}

} // namespace

void fft_pow2(cplx* x, std::size_t n, int sign) {
    if (!is_pow2(n)) throw numeric_error("fft_pow2: length must be a power of two");
    if (n <= 1) return;

    // bit reversal
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(x[i], x[j]);
    }

    const std::vector<cplx>& w = twiddles(n);
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const std::size_t step = n / len;
        for (std::size_t i = 0; i < n; i += len) {
            for (std::size_t k = 0; k < len / 2; ++k) {
                cplx tw = w[k * step];
                if (sign > 0) tw = std::conj(tw);
                const cplx u = x[i + k];
                const cplx v = x[i + k + len / 2] * tw;
                x[i + k] = u + v;
                x[i + k + len / 2] = u - v;
            }
        }
    }
}

} // namespace gwf
