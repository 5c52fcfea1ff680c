#pragma once

#include <cstddef>
#include <vector>

#include "nftlab/types.hpp"

namespace nft::fft {

bool is_pow2(std::size_t n);
std::size_t next_pow2(std::size_t n);

// In-place radix-2 transform of a power-of-two sized array:
//   a_j <- sum_k a_k exp(sign * 2 pi i j k / n),
// with no normalization on either direction.  sign = -1 is the conventional
// forward DFT, sign = +1 evaluates a polynomial at the n-th roots of unity.
void transform(std::vector<cx>& a, int sign);

}  // namespace nft::fft
