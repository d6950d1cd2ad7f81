#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include <gmpxx.h>

#include "boolpart/lattice.hpp"

namespace boolpart {

/// Canonical encoding of a family member: its elements, sorted ascending.
/// Copies in B(n) use masks; subsets of an index set use indices.
using MemberKey = std::vector<std::uint64_t>;

enum class WeightDomain { NonNegativeRational, NonNegativeInteger, Integer };

const char* to_string(WeightDomain domain);

/// Sparse weight function on a set family. Zero weights are never stored.
class WeightFunction {
 public:
  explicit WeightFunction(WeightDomain domain = WeightDomain::NonNegativeRational) : domain_(domain) {}

  WeightDomain domain() const { return domain_; }
  const std::map<MemberKey, mpq_class>& entries() const { return entries_; }
  std::size_t support_size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  /// Adds `delta` to the weight of `member` (key is sorted on insertion).
  void add(MemberKey member, const mpq_class& delta);
  mpq_class weight(const MemberKey& member) const;

  /// Throws InvalidArgument if a weight violates the value domain.
  void check_domain() const;

  /// Least common multiple of the weight denominators (1 when empty).
  mpz_class denominator_lcm() const;

  friend bool operator==(const WeightFunction&, const WeightFunction&) = default;

 private:
  WeightDomain domain_;
  std::map<MemberKey, mpq_class> entries_;
};

/// N_w(x): total weight of members containing x.
mpq_class multiplicity(const WeightFunction& w, std::uint64_t x);

/// N_w(Y) = sum over y in Y of N_w(y).
mpq_class multiplicity(const WeightFunction& w, std::span<const std::uint64_t> elements);

/// N_w(L_k) for k = 0..n, for a weight function on copies in B(n).
std::vector<mpq_class> level_profile(const WeightFunction& w, int n);

/// Multiplicity of x under the permutation average of w, via the level
/// identity N_w(L_|x|) / C(n, |x|).
mpq_class symmetrized_multiplicity(const WeightFunction& w, int n, Mask x);

/// The same quantity by explicit averaging of N_w(pi(x)) over all n!
/// coordinate permutations. Throws InvalidArgument for n > 8.
mpq_class permutation_average_multiplicity(const WeightFunction& w, int n, Mask x);

/// Replaces every weight by its residue in {0..r-1}; zero residues vanish.
WeightFunction reduce_mod_r(const WeightFunction& w, const mpz_class& r);

}  // namespace boolpart
