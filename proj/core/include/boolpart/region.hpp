#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace boolpart {

/// Subset of a product instance's ground set (bit i = ground element i).
using ElementSet = std::uint64_t;

inline constexpr std::size_t kMaxGroundSize = 64;

std::vector<int> set_elements(ElementSet s);

inline bool is_subset_of(ElementSet a, ElementSet b) { return (a & ~b) == 0; }

/// Cartesian product of one subset per coordinate. A box with zero factors is
/// the single point of S^0.
struct Box {
  std::vector<ElementSet> factors;

  std::size_t dimension() const { return factors.size(); }
  bool empty() const;
  /// Saturates at UINT64_MAX.
  std::uint64_t cell_count() const;
  bool contains(std::span<const int> cell) const;

  friend auto operator<=>(const Box&, const Box&) = default;
};

Box intersect(const Box& a, const Box& b);

/// Disjoint boxes whose union is a \ b.
std::vector<Box> difference(const Box& a, const Box& b);

/// Disjoint union of boxes of a common dimension. Empty boxes are dropped on
/// insertion.
class Region {
 public:
  explicit Region(std::size_t dimension = 0) : dimension_(dimension) {}
  static Region of(Box box);

  std::size_t dimension() const { return dimension_; }
  const std::vector<Box>& boxes() const { return boxes_; }
  bool empty() const { return boxes_.empty(); }
  std::uint64_t cell_count() const;

  /// Caller guarantees disjointness from the current boxes.
  void add(Box box);
  void append(const Region& other);

  Region minus(const Box& box) const;
  Region minus(const Region& other) const;
  bool intersects(const Box& box) const;

  /// Appends a factor as the last coordinate.
  Region times(ElementSet factor) const;
  /// Prepends a factor as the first coordinate.
  Region after(ElementSet factor) const;

  void sort();

  friend bool operator==(const Region&, const Region&) = default;

 private:
  std::size_t dimension_;
  std::vector<Box> boxes_;
};

/// Calls `visit(cell)` for every cell of the box in lexicographic order.
void for_each_cell(const Box& box, const std::function<void(std::span<const int>)>& visit);

}  // namespace boolpart
