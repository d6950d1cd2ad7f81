#include "boolpart/lattice.hpp"

#include "boolpart/error.hpp"

namespace boolpart {

Mask full_mask(int n) {
  if (n < 0 || n > kMaxLatticeDimension)
    throw InvalidArgument("lattice dimension " + std::to_string(n) + " outside 0.." +
                          std::to_string(kMaxLatticeDimension));
  return (Mask{1} << n) - 1;
}

std::vector<int> mask_elements(Mask m) {
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(std::popcount(m)));
  while (m != 0) {
    out.push_back(std::countr_zero(m) + 1);
    m &= m - 1;
  }
  return out;
}

Mask mask_from_elements(std::span<const int> elements, int n) {
  Mask m = 0;
  for (int e : elements) {
    if (e < 1 || e > n)
      throw InvalidArgument("element " + std::to_string(e) + " outside 1.." + std::to_string(n));
    m |= Mask{1} << (e - 1);
  }
  return m;
}

std::string mask_to_string(Mask m) {
  std::string s = "{";
  bool first = true;
  for (int e : mask_elements(m)) {
    if (!first) s += ',';
    s += std::to_string(e);
    first = false;
  }
  return s + "}";
}

Mask permute_mask(Mask m, std::span<const int> perm) {
  Mask out = 0;
  while (m != 0) {
    int i = std::countr_zero(m);
    out |= Mask{1} << perm[static_cast<std::size_t>(i)];
    m &= m - 1;
  }
  return out;
}

mpz_class binomial(unsigned long n, unsigned long k) {
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

mpz_class factorial(unsigned long n) {
  mpz_class r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

}  // namespace boolpart
