#pragma once

#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "boolpart/manifest.hpp"
#include "boolpart/poset.hpp"
#include "boolpart/weights.hpp"

namespace boolpart {

enum class WeakKind { RPartition, ModPartition };

const char* to_string(WeakKind kind);

/// A weighting of copies of a poset in B(n).
///
/// RPartition: Q+ weights with N_w(L_i) = C(n, i) for every level, so the
/// permutation average has multiplicity 1 everywhere; `r` = n! * lcm of the
/// weight denominators turns that average into an r-partition.
///
/// ModPartition: Z+ weights in {0..r-1} with N_w(x) = 1 (mod r) for every x;
/// `integer_stage` keeps the Z-valued weighting with N_w(x) = 1 exactly.
struct WeakCertificate {
  WeakKind kind = WeakKind::RPartition;
  Poset poset = Poset::chain(2);
  int n = 0;
  mpz_class r = 1;
  Embedding base;
  WeightFunction weights;
  std::optional<WeightFunction> integer_stage;
  std::optional<RunManifest> manifest;

  friend bool operator==(const WeakCertificate&, const WeakCertificate&) = default;
};

/// Smallest n >= 1 with k * C(n, ceil(n/2)) <= 2^n; throws BudgetExceeded
/// past `cap`.
int smallest_balanced_dimension(unsigned long k, int cap);

WeakCertificate build_r_certificate(const Poset& poset, const Limits& limits = {});

WeakCertificate build_mod_certificate(const Poset& poset, const mpz_class& r, const Limits& limits = {});

struct WeakReport {
  bool ok = true;
  std::vector<std::string> violations;
};

/// Recomputes every identity the certificate claims. RPartition: level sums
/// against C(n, i) (plus the explicit permutation average when n <= 5).
/// ModPartition: N_w(x) for every x in B(n).
WeakReport verify_weak_certificate(const WeakCertificate& cert, const Limits& limits = {});

}  // namespace boolpart
