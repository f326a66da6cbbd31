#pragma once

#include <complex>
#include <vector>

namespace petlab {

constexpr bool is_pow2(long long n) { return n > 0 && (n & (n - 1)) == 0; }

// In-place iterative radix-2 transform; the length must be a power of two.
void fft_pow2(std::vector<std::complex<double>>& a, bool inverse = false);

}  // namespace petlab
