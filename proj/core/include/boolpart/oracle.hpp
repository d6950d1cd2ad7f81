#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "boolpart/exact_cover.hpp"
#include "boolpart/lattice_partition.hpp"
#include "boolpart/product.hpp"

namespace boolpart {

struct LatticeSearchResult {
  CoverStatus status = CoverStatus::Unsat;
  std::size_t copies = 0;  // candidate copies of the poset in B(n)
  std::uint64_t count = 0;
  std::uint64_t nodes = 0;
  std::vector<LatticePartition> partitions;
};

/// Exact cover of B(n) by all copies of the poset.
LatticeSearchResult direct_lattice_partition(const Poset& poset, int n, CoverMode mode, const Limits& limits = {});

struct WeakFinding {
  enum class Kind { RPartition, ModPartition };
  Kind kind = Kind::RPartition;
  int r = 1;
  std::vector<int> weights;  // one per family member, in family order

  friend bool operator==(const WeakFinding&, const WeakFinding&) = default;
};

const char* to_string(WeakFinding::Kind kind);

struct WeakSearchResult {
  std::vector<WeakFinding> findings;  // ordered by kind, then r
  bool exact_partition = false;
  std::uint64_t vectors = 0;

  const WeakFinding* find(WeakFinding::Kind kind, int r) const;
};

/// Enumerates nonnegative integer weights on `family` by increasing total
/// (at most `weight_bound`, lexicographic within a total) and records, for
/// every r in 1..r_max, the first r-partition (all multiplicities r) and the
/// first (1 mod r)-partition (all multiplicities >= 1 and 1 mod r).
WeakSearchResult weak_partition_search(std::size_t ground_size, const std::vector<ElementSet>& family, int r_max,
                                       int weight_bound, const Limits& limits = {});

/// The same search over an instance's family (ids in map order).
WeakSearchResult weak_partition_search(const ProductInstance& inst, int r_max, int weight_bound,
                                       const Limits& limits = {});

/// Constraints for find_instance.
struct InstanceSearch {
  int ground_min = 3, ground_max = 6;
  int family_min = 3, family_max = 8;
  int r_min = 2, r_max = 3;
  int weight_bound = 8;
  bool forbid_exact_partition = true;
  int max_union = 3;          // |A u B|
  int cover_size = 0;         // required general_cover size, 0 = any
  std::uint64_t max_cells = 1'000'000;  // S^2 x U^n for (A, B) and every general stage
  int attempts = 20000;
};

/// Random instances (seeded, deterministic on one platform) until one has an
/// r-partition and a (1 mod r)-partition witness for a common r in
/// r_min..r_max and meets the constraints. A and B are chosen with both
/// Ac and Bc nonempty. Returns nullopt when every attempt fails.
std::optional<ProductInstance> find_instance(std::uint64_t seed, const InstanceSearch& search, const Limits& limits = {});

/// Member ids listed with multiplicity `weights[i]` (family in map order).
std::vector<std::string> witness_members(const ProductInstance& inst, const std::vector<int>& weights);

}  // namespace boolpart
