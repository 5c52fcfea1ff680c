#include "nftlab/fft.hpp"

#include <cmath>

namespace nft::fft {

bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

void transform(std::vector<cx>& a, int sign) {
  const std::size_t n = a.size();
  if (n <= 1) return;
  if (!is_pow2(n)) throw validation_error("fft: size must be a power of two");

  // Bit-reversal permutation.
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }

  // One exact twiddle table for the full length; every stage strides into it,
  // which avoids the error accumulation of repeated multiplication.
  std::vector<cx> roots(n / 2);
  const double ang = sign * 2.0 * kPi / static_cast<double>(n);
  for (std::size_t j = 0; j < n / 2; ++j) {
    roots[j] = std::polar(1.0, ang * static_cast<double>(j));
  }

  for (std::size_t len = 2; len <= n; len <<= 1) {
    const std::size_t stride = n / len;
    for (std::size_t i = 0; i < n; i += len) {
      for (std::size_t k = 0; k < len / 2; ++k) {
        const cx w = roots[k * stride];
        const cx u = a[i + k];
        const cx v = a[i + k + len / 2] * w;
        a[i + k] = u + v;
        a[i + k + len / 2] = u - v;
      }
    }
  }
}

}  // namespace nft::fft
