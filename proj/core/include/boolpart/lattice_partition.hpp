#pragma once

#include <optional>
#include <string>
#include <vector>

#include "boolpart/manifest.hpp"
#include "boolpart/poset.hpp"

namespace boolpart {

/// Claimed partition of B(n) into copies (poset sense) of `poset`.
struct LatticePartition {
  Poset poset = Poset::chain(2);
  int n = 0;
  std::vector<LatticeCopy> tiles;
  std::optional<RunManifest> manifest;

  friend bool operator==(const LatticePartition&, const LatticePartition&) = default;
};

struct LatticeReport {
  bool ok = true;
  std::vector<std::string> violations;
};

/// Every tile a copy of the poset inside B(n), every element of B(n) in
/// exactly one tile. Throws BudgetExceeded above limits.max_enumeration_dimension.
LatticeReport verify_lattice_partition(const LatticePartition& p, const Limits& limits = {},
                                       std::size_t max_reported = 16);

/// Tiles T1 x T2 (x | y << n1) over all pairs: a partition of B(n1 + n2)
/// into copies of P x Q. Inputs are verified first.
LatticePartition product_compose(const LatticePartition& lhs, const LatticePartition& rhs, const Limits& limits = {});

}  // namespace boolpart
