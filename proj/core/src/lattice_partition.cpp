#include "boolpart/lattice_partition.hpp"

#include <algorithm>

namespace boolpart {

LatticeReport verify_lattice_partition(const LatticePartition& p, const Limits& limits, std::size_t max_reported) {
  LatticeReport report;
  auto fail = [&](std::string msg) {
    report.ok = false;
    if (report.violations.size() < max_reported) report.violations.push_back(std::move(msg));
  };
  if (p.n < 0 || p.n > kMaxLatticeDimension) {
    fail("dimension " + std::to_string(p.n) + " outside 0.." + std::to_string(kMaxLatticeDimension));
    return report;
  }
  if (p.n > limits.max_enumeration_dimension)
    throw BudgetExceeded("B(" + std::to_string(p.n) + ") exceeds the enumeration cap " +
                         std::to_string(limits.max_enumeration_dimension));
  const Mask full = full_mask(p.n);
  std::vector<int> owner(std::size_t{1} << p.n, -1);
  for (std::size_t t = 0; t < p.tiles.size(); ++t) {
    const auto& tile = p.tiles[t];
    bool inside = std::all_of(tile.begin(), tile.end(), [&](Mask m) { return is_subset(m, full); });
    if (!inside) {
      fail("tile #" + std::to_string(t) + " has an element outside B(" + std::to_string(p.n) + ")");
      continue;
    }
    if (!is_copy(p.poset, p.n, tile)) fail("tile #" + std::to_string(t) + " is not a copy of the poset");
    for (Mask m : tile) {
      int& o = owner[m];
      if (o >= 0)
        fail("element " + mask_to_string(m) + " lies in tiles #" + std::to_string(o) + " and #" + std::to_string(t));
      else
        o = static_cast<int>(t);
    }
  }
  for (std::size_t m = 0; m < owner.size(); ++m)
    if (owner[m] < 0) fail("element " + mask_to_string(m) + " is not covered");
  return report;
}

LatticePartition product_compose(const LatticePartition& lhs, const LatticePartition& rhs, const Limits& limits) {
  if (lhs.n + rhs.n > limits.max_enumeration_dimension)
    throw BudgetExceeded("B(" + std::to_string(lhs.n + rhs.n) + ") exceeds the enumeration cap");
  for (const auto* side : {&lhs, &rhs}) {
    auto report = verify_lattice_partition(*side, limits, 1);
    if (!report.ok) throw InvalidArgument("invalid input partition: " + report.violations.front());
  }
  LatticePartition out;
  out.poset = Poset::product(lhs.poset, rhs.poset);
  out.n = lhs.n + rhs.n;
  for (const auto& t1 : lhs.tiles) {
    for (const auto& t2 : rhs.tiles) {
      LatticeCopy tile;
      for (Mask x : t1)
        for (Mask y : t2) tile.push_back(x | (y << lhs.n));
      std::sort(tile.begin(), tile.end());
      out.tiles.push_back(std::move(tile));
    }
  }
  std::sort(out.tiles.begin(), out.tiles.end());
  return out;
}

}  // namespace boolpart
