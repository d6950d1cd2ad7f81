#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "boolpart/error.hpp"
#include "boolpart/lattice.hpp"

namespace boolpart {

/// A finite partial order over named elements. Immutable after construction;
/// the order relation is stored transitively closed.
class Poset {
 public:
  using Relation = std::pair<std::string, std::string>;

  /// Builds the transitive closure of `relations` (pairs a < b). Throws
  /// InvalidArgument on duplicate ids, unknown ids, or a cycle.
  static Poset from_relations(std::vector<std::string> ids, const std::vector<Relation>& relations);

  static Poset chain(std::size_t length);
  /// The Boolean lattice B(d) with elements named by mask_to_string.
  static Poset boolean_lattice(int d);
  /// Component-wise order on pairs; element (p, q) is named "p*q".
  static Poset product(const Poset& lhs, const Poset& rhs);

  std::size_t size() const { return ids_.size(); }
  const std::vector<std::string>& ids() const { return ids_; }
  const std::string& id(std::size_t i) const { return ids_[i]; }
  std::optional<std::size_t> index_of(std::string_view id) const;

  bool leq(std::size_t a, std::size_t b) const { return leq_[a * size() + b] != 0; }
  bool less(std::size_t a, std::size_t b) const { return a != b && leq(a, b); }

  std::optional<std::size_t> top() const { return top_; }
  std::optional<std::size_t> bottom() const { return bottom_; }

  /// Hasse diagram edges, sorted by (lower index, upper index).
  std::vector<std::pair<std::size_t, std::size_t>> cover_pairs() const;

  /// Topological order; among available elements the smallest index first.
  const std::vector<std::size_t>& linear_extension() const { return extension_; }

  friend bool operator==(const Poset&, const Poset&) = default;

 private:
  Poset(std::vector<std::string> ids, std::vector<char> leq);

  std::vector<std::string> ids_;
  std::vector<char> leq_;
  std::optional<std::size_t> top_;
  std::optional<std::size_t> bottom_;
  std::vector<std::size_t> extension_;
};

/// Parses the poset text format (`elements` and `covers` fields).
Poset parse_poset(std::string_view text);

/// Images of poset elements in B(dimension), indexed like Poset::ids().
struct Embedding {
  int dimension = 0;
  std::vector<Mask> image;

  friend bool operator==(const Embedding&, const Embedding&) = default;
};

/// A copy of a poset in B(n): its image masks in increasing numeric order.
using LatticeCopy = std::vector<Mask>;

LatticeCopy image_of(const Embedding& e);

/// True iff `image` is injective, inside B(n), and x <= y exactly when
/// image[x] is a subset of image[y].
bool is_embedding(const Poset& poset, int n, std::span<const Mask> image);

/// True iff the subposet of B(n) induced on `members` is isomorphic to `poset`.
bool is_copy(const Poset& poset, int n, std::span<const Mask> members);

/// Smallest d with an embedding into B(d) sending top to [d] and bottom to
/// the empty set; the first such embedding found by backtracking in the
/// linear extension with candidates in numeric order.
Embedding find_base_embedding(const Poset& poset, const Limits& limits = {});

/// True iff distinct members differ by at least `gap`.
bool is_scattered(std::span<const int> levels, int gap);

/// Extends a base embedding into B(n) so that the image levels are exactly
/// `levels` (a base.dimension-scattered set of size |P|).
Embedding scattered_embedding(const Poset& poset, const Embedding& base, int n,
                              std::span<const int> levels);

/// All copies of `poset` in B(n), sorted, without duplicates.
std::vector<LatticeCopy> enumerate_copies(const Poset& poset, int n, const Limits& limits = {});

enum class ExtremeRole { Top, Bottom };

/// A copy of the poset inside [x \ D, x] (Top) or [x, x u D] (Bottom), where D
/// is the d lowest elements of x (resp. of its complement). `x` becomes the
/// greatest (resp. least) element of the copy.
Embedding copy_with_extreme(const Poset& poset, const Embedding& base, int n, Mask x,
                            ExtremeRole role);

}  // namespace boolpart
