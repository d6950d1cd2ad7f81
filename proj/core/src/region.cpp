#include "boolpart/region.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <stdexcept>

namespace boolpart {

std::vector<int> set_elements(ElementSet s) {
  std::vector<int> out;
  while (s != 0) {
    out.push_back(std::countr_zero(s));
    s &= s - 1;
  }
  return out;
}

bool Box::empty() const {
  return std::any_of(factors.begin(), factors.end(), [](ElementSet f) { return f == 0; });
}

std::uint64_t Box::cell_count() const {
  std::uint64_t count = 1;
  for (auto f : factors) {
    std::uint64_t k = static_cast<std::uint64_t>(std::popcount(f));
    if (k == 0) return 0;
    if (count > std::numeric_limits<std::uint64_t>::max() / k) return std::numeric_limits<std::uint64_t>::max();
    count *= k;
  }
  return count;
}

bool Box::contains(std::span<const int> cell) const {
  if (cell.size() != factors.size()) return false;
  for (std::size_t i = 0; i < cell.size(); ++i)
    if (cell[i] < 0 || cell[i] >= 64 || !(factors[i] >> cell[i] & 1)) return false;
  return true;
}

Box intersect(const Box& a, const Box& b) {
  if (a.dimension() != b.dimension()) throw std::invalid_argument("box dimension mismatch");
  Box out;
  out.factors.resize(a.dimension());
  for (std::size_t i = 0; i < a.dimension(); ++i) out.factors[i] = a.factors[i] & b.factors[i];
  return out;
}

std::vector<Box> difference(const Box& a, const Box& b) {
  if (a.empty()) return {};
  if (intersect(a, b).empty()) return {a};
  std::vector<Box> out;
  Box prefix = a;
  for (std::size_t j = 0; j < a.dimension(); ++j) {
    ElementSet rest = a.factors[j] & ~b.factors[j];
    if (rest != 0) {
      Box piece = prefix;
      piece.factors[j] = rest;
      out.push_back(std::move(piece));
    }
    prefix.factors[j] = a.factors[j] & b.factors[j];
  }
  return out;
}

Region Region::of(Box box) {
  Region r(box.dimension());
  r.add(std::move(box));
  return r;
}

std::uint64_t Region::cell_count() const {
  std::uint64_t total = 0;
  for (const auto& b : boxes_) {
    std::uint64_t c = b.cell_count();
    if (total > std::numeric_limits<std::uint64_t>::max() - c) return std::numeric_limits<std::uint64_t>::max();
    total += c;
  }
  return total;
}

void Region::add(Box box) {
  if (box.dimension() != dimension_) throw std::invalid_argument("region dimension mismatch");
  if (!box.empty()) boxes_.push_back(std::move(box));
}

void Region::append(const Region& other) {
  for (const auto& b : other.boxes_) add(b);
}

Region Region::minus(const Box& box) const {
  Region out(dimension_);
  for (const auto& b : boxes_)
    for (auto& piece : difference(b, box)) out.add(std::move(piece));
  return out;
}

Region Region::minus(const Region& other) const {
  Region out = *this;
  for (const auto& b : other.boxes_) out = out.minus(b);
  return out;
}

bool Region::intersects(const Box& box) const {
  return std::any_of(boxes_.begin(), boxes_.end(), [&](const Box& b) { return !intersect(b, box).empty(); });
}

Region Region::times(ElementSet factor) const {
  Region out(dimension_ + 1);
  for (auto b : boxes_) {
    b.factors.push_back(factor);
    out.add(std::move(b));
  }
  return out;
}

Region Region::after(ElementSet factor) const {
  Region out(dimension_ + 1);
  for (auto b : boxes_) {
    b.factors.insert(b.factors.begin(), factor);
    out.add(std::move(b));
  }
  return out;
}

void Region::sort() { std::sort(boxes_.begin(), boxes_.end()); }

void for_each_cell(const Box& box, const std::function<void(std::span<const int>)>& visit) {
  if (box.empty()) return;
  const std::size_t d = box.dimension();
  std::vector<std::vector<int>> choices(d);
  for (std::size_t i = 0; i < d; ++i) choices[i] = set_elements(box.factors[i]);
  std::vector<std::size_t> pos(d, 0);
  std::vector<int> cell(d);
  for (std::size_t i = 0; i < d; ++i) cell[i] = choices[i][0];
  while (true) {
    visit(cell);
    std::size_t i = d;
    while (i > 0) {
      --i;
      if (++pos[i] < choices[i].size()) {
        cell[i] = choices[i][pos[i]];
        break;
      }
      pos[i] = 0;
      cell[i] = choices[i][0];
      if (i == 0) return;
    }
    if (d == 0) return;
  }
}

}  // namespace boolpart
