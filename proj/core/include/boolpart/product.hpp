#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "boolpart/error.hpp"
#include "boolpart/manifest.hpp"
#include "boolpart/region.hpp"

namespace boolpart {

/// r-partition witness: every ground element lies in exactly r of `members`
/// (ids of F, repetitions allowed).
struct RWitness {
  int r = 1;
  std::vector<std::string> members;

  friend bool operator==(const RWitness&, const RWitness&) = default;
};

/// (1 mod r)-partition witness: every ground element lies in 1 + r*a_x of
/// `members` for some a_x >= 0.
struct ModWitness {
  std::vector<std::string> members;

  friend bool operator==(const ModWitness&, const ModWitness&) = default;
};

/// A ground set S with a family F, two distinguished subsets A and B, and
/// the weak-partition witnesses that drive the product constructions.
struct ProductInstance {
  std::vector<std::string> ground;
  std::map<std::string, ElementSet> family;
  ElementSet a = 0;
  ElementSet b = 0;
  std::optional<RWitness> r_witness;
  std::optional<ModWitness> mod_witness;

  std::size_t ground_size() const { return ground.size(); }
  ElementSet everything() const;
  ElementSet u() const { return a | b; }
  ElementSet a_comp() const { return u() & ~a; }
  ElementSet b_comp() const { return u() & ~b; }

  ElementSet member(const std::string& id) const;

  /// Ground size, ids and subsets; reserved ids "A" and "B".
  void validate() const;
  /// validate() plus both witnesses present and satisfying their definitions.
  void validate_witnesses() const;

  friend bool operator==(const ProductInstance&, const ProductInstance&) = default;
};

/// Multiplicity of every ground element in a list of family members.
std::vector<int> witness_multiplicities(const ProductInstance& inst, std::span<const std::string> members);

/// A named subset a certificate may tile with.
struct Member {
  std::string id;
  ElementSet set = 0;

  friend bool operator==(const Member&, const Member&) = default;
};

/// A clone of a member: the host coordinate ranges over the member, every
/// other coordinate is fixed. `fixed[host]` is unused and kept at 0.
struct Tile {
  std::uint32_t member = 0;
  std::uint32_t host = 0;
  std::vector<int> fixed;

  friend auto operator<=>(const Tile&, const Tile&) = default;
};

/// Tiles claimed to partition `region` exactly. Boxes and tiles are stored in
/// the certificate's own coordinates; stored coordinate c is actual coordinate
/// coordinate_map[c] (empty map = identity).
struct PartitionCertificate {
  std::vector<std::string> ground;
  std::vector<Member> members;
  int dimension = 0;
  std::vector<int> coordinate_map;
  Region region;
  std::vector<Tile> tiles;
  std::optional<RunManifest> manifest;

  std::optional<std::uint32_t> member_index(const std::string& id) const;
  std::uint64_t tile_cells(const Tile& t) const;

  friend bool operator==(const PartitionCertificate&, const PartitionCertificate&) = default;
};

/// Applies the coordinate map to boxes and tiles; the result has an identity map.
PartitionCertificate normalized(PartitionCertificate cert);

/// Sorts boxes and tiles.
void canonicalize(PartitionCertificate& cert);

/// Renames members by id (entries absent from `renames` keep their id) and
/// merges members that end up with the same id. Throws if merged ids disagree
/// on their sets.
PartitionCertificate relabel(PartitionCertificate cert, const std::map<std::string, Member>& renames);

struct CertificateReport {
  bool ok = true;
  std::uint64_t region_cells = 0;
  std::uint64_t covered_cells = 0;
  std::vector<std::string> violations;
};

/// Exhaustive check: each tile a valid clone of its member, tiles pairwise
/// disjoint, union of tiles equal to the region. With an instance, member
/// sets are also checked against F, A and B. Reports the first `max_reported`
/// violations. Throws BudgetExceeded when the region is larger than
/// limits.max_cells.
CertificateReport verify_certificate(const PartitionCertificate& cert, const ProductInstance* instance = nullptr,
                                     const Limits& limits = {}, std::size_t max_reported = 16);

}  // namespace boolpart
