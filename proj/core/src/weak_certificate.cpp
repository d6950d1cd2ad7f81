#include "boolpart/weak_certificate.hpp"

#include <algorithm>
#include <map>

#include "boolpart/greedy.hpp"

namespace boolpart {

namespace {

constexpr std::size_t kMaxReported = 64;

void report(WeakReport& rep, std::string message) {
  rep.ok = false;
  if (rep.violations.size() < kMaxReported) rep.violations.push_back(std::move(message));
}

MemberKey key_of(const Embedding& e) {
  LatticeCopy c = image_of(e);
  return MemberKey(c.begin(), c.end());
}

// Multiplicity of every x in B(n), accumulated from the support.
std::vector<mpq_class> all_multiplicities(const WeightFunction& w, int n) {
  std::vector<mpq_class> mult(std::size_t{1} << n, mpq_class(0));
  for (const auto& [key, value] : w.entries())
    for (auto m : key) mult[m] += value;
  return mult;
}

void check_members(const WeightFunction& w, const Poset& poset, int n, const char* what, WeakReport& rep) {
  for (const auto& [key, value] : w.entries()) {
    std::vector<Mask> members(key.begin(), key.end());
    if (!is_copy(poset, n, members)) {
      std::string s;
      for (auto m : members) s += mask_to_string(m);
      report(rep, std::string(what) + " member " + s + " is not a copy of the poset in B(n)");
    }
  }
}

// +1 on A, -1 on A with `x` replaced by `extreme`; the multiplicity change is
// 1_{x} - 1_{extreme}.
void add_move(WeightFunction& w, const Embedding& copy, Mask x, Mask extreme, const mpz_class& times) {
  if (x == extreme || times == 0) return;
  MemberKey plus = key_of(copy);
  MemberKey minus;
  for (auto m : plus) minus.push_back(m == x ? extreme : m);
  w.add(std::move(plus), mpq_class(times));
  w.add(std::move(minus), mpq_class(-times));
}

}  // namespace

const char* to_string(WeakKind kind) {
  return kind == WeakKind::RPartition ? "r-partition" : "mod-partition";
}

int smallest_balanced_dimension(unsigned long k, int cap) {
  for (int n = 1; n <= cap; ++n) {
    mpz_class lhs = binomial(static_cast<unsigned long>(n), static_cast<unsigned long>((n + 1) / 2)) * k;
    mpz_class rhs = mpz_class(1) << n;
    if (lhs <= rhs) return n;
  }
  throw BudgetExceeded("no n <= " + std::to_string(cap) + " with k * C(n, ceil(n/2)) <= 2^n");
}

WeakCertificate build_r_certificate(const Poset& poset, const Limits& limits) {
  Embedding base = find_base_embedding(poset, limits);
  const int d = base.dimension;
  const unsigned long k = poset.size() * static_cast<unsigned long>(d);
  const int n = smallest_balanced_dimension(k, std::min(limits.max_weak_dimension, kMaxLatticeDimension));

  std::vector<mpq_class> f;
  for (int i = 0; i <= n; ++i) f.emplace_back(binomial(static_cast<unsigned long>(n), static_cast<unsigned long>(i)));
  WeightFunction on_k_sets = greedy_t_subset_weights(f, k);

  std::map<std::vector<int>, mpq_class> on_scattered;
  for (const auto& [set, weight] : on_k_sets.entries()) {
    std::vector<int> levels(set.begin(), set.end());
    for (auto& part : split_scattered(levels, d)) on_scattered[part] += weight;
  }

  WeakCertificate cert;
  cert.kind = WeakKind::RPartition;
  cert.poset = poset;
  cert.n = n;
  cert.base = base;
  cert.weights = WeightFunction(WeightDomain::NonNegativeRational);
  for (const auto& [levels, weight] : on_scattered)
    cert.weights.add(key_of(scattered_embedding(poset, base, n, levels)), weight);
  cert.r = factorial(static_cast<unsigned long>(n)) * cert.weights.denominator_lcm();
  return cert;
}

WeakCertificate build_mod_certificate(const Poset& poset, const mpz_class& r, const Limits& limits) {
  if (r < 1) throw InvalidArgument("r must be positive");
  if (!poset.top() || !poset.bottom()) throw InvalidArgument("poset needs a greatest and a least element");
  const std::size_t s = poset.size();
  if (s == 0 || (s & (s - 1)) != 0) throw InvalidArgument("poset size " + std::to_string(s) + " is not a power of two");
  const int size_log = std::countr_zero(s);

  Embedding base = find_base_embedding(poset, limits);
  const int d = base.dimension;
  const int n = 2 * d - 1;
  if (n > limits.max_enumeration_dimension)
    throw BudgetExceeded("n = 2d-1 = " + std::to_string(n) + " exceeds the enumeration cap");
  const Mask top = full_mask(n);
  const Mask bottom = 0;

  // Base function with total weight 2^n split evenly between levels >= d and
  // levels <= d-1, so no move ever has to cross between the two regions.
  WeightFunction w(WeightDomain::Integer);
  if (size_log == n) {
    w.add(key_of(copy_with_extreme(poset, base, n, bottom, ExtremeRole::Bottom)), 1);
  } else {
    mpq_class times(mpz_class(1) << (n - size_log - 1));
    w.add(key_of(copy_with_extreme(poset, base, n, bottom, ExtremeRole::Bottom)), times);
    w.add(key_of(copy_with_extreme(poset, base, n, top, ExtremeRole::Top)), times);
  }

  // target - base = sum_z g(z) 1_{z}; inside each region its total is zero, so
  // it equals sum_z g(z) (1_{z} - 1_{extreme}).
  std::vector<mpq_class> current = all_multiplicities(w, n);
  for (Mask z = 0; z <= top; ++z) {
    mpz_class g = mpz_class(1) - current[z].get_num();
    if (g == 0) continue;
    if (level(z) >= d)
      add_move(w, copy_with_extreme(poset, base, n, z, ExtremeRole::Top), z, top, g);
    else
      add_move(w, copy_with_extreme(poset, base, n, z, ExtremeRole::Bottom), z, bottom, g);
  }

  std::vector<mpq_class> check = all_multiplicities(w, n);
  for (Mask z = 0; z <= top; ++z)
    if (check[z] != 1) throw std::logic_error("build_mod_certificate: integer stage is not exact");

  WeakCertificate cert;
  cert.kind = WeakKind::ModPartition;
  cert.poset = poset;
  cert.n = n;
  cert.r = r;
  cert.base = base;
  cert.weights = reduce_mod_r(w, r);
  cert.integer_stage = std::move(w);
  return cert;
}

WeakReport verify_weak_certificate(const WeakCertificate& cert, const Limits& limits) {
  WeakReport rep;
  const int n = cert.n;
  if (n < 0 || n > kMaxLatticeDimension) {
    report(rep, "dimension " + std::to_string(n) + " outside 0..63");
    return rep;
  }
  try {
    cert.weights.check_domain();
  } catch (const InvalidArgument& e) {
    report(rep, e.what());
  }
  check_members(cert.weights, cert.poset, n, "weighted", rep);

  if (cert.kind == WeakKind::RPartition) {
    if (cert.weights.domain() != WeightDomain::NonNegativeRational)
      report(rep, "r-partition weights must be Q+ valued");
    auto profile = level_profile(cert.weights, n);
    for (int i = 0; i <= n; ++i) {
      mpz_class expected = binomial(static_cast<unsigned long>(n), static_cast<unsigned long>(i));
      if (profile[static_cast<std::size_t>(i)] != expected)
        report(rep, "level " + std::to_string(i) + ": N_w(L_" + std::to_string(i) + ") = " +
                        profile[static_cast<std::size_t>(i)].get_str() + ", expected " + expected.get_str());
    }
    mpz_class r = factorial(static_cast<unsigned long>(n)) * cert.weights.denominator_lcm();
    if (r != cert.r) report(rep, "r = " + cert.r.get_str() + " but n! * lcm(denominators) = " + r.get_str());
    if (n <= 5) {
      for (Mask x = 0; x <= full_mask(n); ++x) {
        mpq_class avg = permutation_average_multiplicity(cert.weights, n, x);
        if (avg != 1)
          report(rep, "permutation average at " + mask_to_string(x) + " is " + avg.get_str() + ", expected 1");
      }
    }
    return rep;
  }

  if (n > limits.max_enumeration_dimension) {
    report(rep, "n = " + std::to_string(n) + " too large to enumerate B(n)");
    return rep;
  }
  if (cert.r < 1) {
    report(rep, "r must be positive");
    return rep;
  }
  for (const auto& [key, value] : cert.weights.entries())
    if (value < 0 || value >= mpq_class(cert.r)) report(rep, "weight " + value.get_str() + " not in {0..r-1}");
  auto mult = all_multiplicities(cert.weights, n);
  for (Mask x = 0; x <= full_mask(n); ++x) {
    mpz_class residue;
    mpz_class num = mult[x].get_num();
    mpz_fdiv_r(residue.get_mpz_t(), num.get_mpz_t(), cert.r.get_mpz_t());
    mpz_class one = cert.r == 1 ? mpz_class(0) : mpz_class(1);
    if (mult[x].get_den() != 1 || residue != one)
      report(rep, "element " + mask_to_string(x) + ": N_w = " + mult[x].get_str() + " is not 1 mod " + cert.r.get_str());
  }
  if (cert.integer_stage) {
    check_members(*cert.integer_stage, cert.poset, n, "integer-stage", rep);
    auto exact = all_multiplicities(*cert.integer_stage, n);
    for (Mask x = 0; x <= full_mask(n); ++x)
      if (exact[x] != 1)
        report(rep, "integer stage at " + mask_to_string(x) + ": N_w = " + exact[x].get_str() + ", expected 1");
    if (!(reduce_mod_r(*cert.integer_stage, cert.r) == cert.weights))
      report(rep, "reduced weights do not match the integer stage mod r");
  }
  return rep;
}

}  // namespace boolpart
