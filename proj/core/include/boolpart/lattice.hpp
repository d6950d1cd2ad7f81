#pragma once

#include <bit>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace boolpart {

/// An element of B(n): bit i-1 set iff ground element i belongs to the set.
using Mask = std::uint64_t;

inline constexpr int kMaxLatticeDimension = 63;

inline int level(Mask m) { return std::popcount(m); }
inline bool is_subset(Mask a, Mask b) { return (a & ~b) == 0; }

/// {1..n} as a mask.
Mask full_mask(int n);

/// 1-based ground elements of `m` in increasing order.
std::vector<int> mask_elements(Mask m);

/// Inverse of mask_elements. Throws InvalidArgument on elements outside 1..n.
Mask mask_from_elements(std::span<const int> elements, int n);

/// Renders {1,3} as "{1,3}".
std::string mask_to_string(Mask m);

/// perm is 0-based: bit i of `m` moves to bit perm[i].
Mask permute_mask(Mask m, std::span<const int> perm);

mpz_class binomial(unsigned long n, unsigned long k);
mpz_class factorial(unsigned long n);

}  // namespace boolpart
