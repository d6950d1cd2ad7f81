#include "boolpart/weights.hpp"

#include <algorithm>
#include <numeric>

#include "boolpart/error.hpp"

namespace boolpart {

const char* to_string(WeightDomain domain) {
  switch (domain) {
    case WeightDomain::NonNegativeRational: return "Q+";
    case WeightDomain::NonNegativeInteger: return "Z+";
    case WeightDomain::Integer: return "Z";
  }
  return "?";
}

void WeightFunction::add(MemberKey member, const mpq_class& delta_in) {
  // gmp arithmetic assumes canonical operands; callers may pass e.g. 3/3.
  mpq_class delta = delta_in;
  delta.canonicalize();
  if (delta == 0) return;
  std::sort(member.begin(), member.end());
  auto [it, inserted] = entries_.try_emplace(std::move(member), delta);
  if (!inserted) {
    it->second += delta;
    if (it->second == 0) entries_.erase(it);
  }
}

mpq_class WeightFunction::weight(const MemberKey& member) const {
  auto it = entries_.find(member);
  return it == entries_.end() ? mpq_class(0) : it->second;
}

void WeightFunction::check_domain() const {
  for (const auto& [key, value] : entries_) {
    if (domain_ != WeightDomain::Integer && value < 0)
      throw InvalidArgument(std::string("negative weight in a ") + to_string(domain_) + " weight function");
    if (domain_ != WeightDomain::NonNegativeRational && value.get_den() != 1)
      throw InvalidArgument(std::string("fractional weight in a ") + to_string(domain_) + " weight function");
  }
}

mpz_class WeightFunction::denominator_lcm() const {
  mpz_class l = 1;
  for (const auto& [key, value] : entries_) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), value.get_den_mpz_t());
  return l;
}

mpq_class multiplicity(const WeightFunction& w, std::uint64_t x) {
  mpq_class total = 0;
  for (const auto& [key, value] : w.entries())
    if (std::binary_search(key.begin(), key.end(), x)) total += value;
  return total;
}

mpq_class multiplicity(const WeightFunction& w, std::span<const std::uint64_t> elements) {
  mpq_class total = 0;
  for (auto x : elements) total += multiplicity(w, x);
  return total;
}

std::vector<mpq_class> level_profile(const WeightFunction& w, int n) {
  std::vector<mpq_class> totals(static_cast<std::size_t>(n) + 1, mpq_class(0));
  for (const auto& [key, value] : w.entries())
    for (auto m : key) {
      int k = level(m);
      if (k > n) throw InvalidArgument("member element " + mask_to_string(m) + " outside B(n)");
      totals[static_cast<std::size_t>(k)] += value;
    }
  return totals;
}

mpq_class symmetrized_multiplicity(const WeightFunction& w, int n, Mask x) {
  const int k = level(x);
  mpq_class total = level_profile(w, n)[static_cast<std::size_t>(k)];
  return total / mpq_class(binomial(static_cast<unsigned long>(n), static_cast<unsigned long>(k)));
}

mpq_class permutation_average_multiplicity(const WeightFunction& w, int n, Mask x) {
  if (n < 0 || n > 8) throw InvalidArgument("explicit permutation averaging is limited to n <= 8");
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  mpq_class total = 0;
  do {
    total += multiplicity(w, permute_mask(x, perm));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total / mpq_class(factorial(static_cast<unsigned long>(n)));
}

WeightFunction reduce_mod_r(const WeightFunction& w, const mpz_class& r) {
  if (r < 1) throw InvalidArgument("modulus r must be positive");
  WeightFunction out(WeightDomain::NonNegativeInteger);
  for (const auto& [key, value] : w.entries()) {
    if (value.get_den() != 1) throw InvalidArgument("reduce_mod_r needs integer weights");
    mpz_class residue;
    mpz_fdiv_r(residue.get_mpz_t(), value.get_num_mpz_t(), r.get_mpz_t());
    out.add(key, mpq_class(residue));
  }
  return out;
}

}  // namespace boolpart
