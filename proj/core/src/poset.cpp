#include "boolpart/poset.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include <json.hpp>

namespace boolpart {

namespace {

// Depth-first embedding search shared by find_base_embedding and
// enumerate_copies. Elements are assigned in the poset's linear extension;
// candidate images run through supersets of the already-forced lower bound in
// increasing numeric order. `visit` returns true to stop the search.
class EmbeddingSearch {
 public:
  EmbeddingSearch(const Poset& poset, int n, std::uint64_t max_nodes, bool pin_extremes)
      : poset_(poset),
        full_(full_mask(n)),
        max_nodes_(max_nodes),
        pin_extremes_(pin_extremes),
        image_(poset.size(), 0) {}

  template <class Visit>
  bool run(Visit&& visit) {
    return step(0, visit);
  }

  std::uint64_t nodes() const { return nodes_; }

 private:
  template <class Visit>
  bool step(std::size_t depth, Visit& visit) {
    const auto& order = poset_.linear_extension();
    if (depth == order.size()) return visit(static_cast<const std::vector<Mask>&>(image_));
    const std::size_t e = order[depth];

    Mask lower = 0;
    for (std::size_t k = 0; k < depth; ++k) {
      std::size_t a = order[k];
      if (poset_.leq(a, e)) lower |= image_[a];
    }

    auto try_candidate = [&](Mask cand) -> bool {
      if (++nodes_ > max_nodes_)
        throw BudgetExceeded("embedding search exceeded " + std::to_string(max_nodes_) + " nodes");
      for (std::size_t k = 0; k < depth; ++k) {
        std::size_t a = order[k];
        Mask img = image_[a];
        if (img == cand) return false;
        bool below = is_subset(img, cand);
        bool above = is_subset(cand, img);
        if (poset_.leq(a, e) != below) return false;
        if (poset_.leq(e, a) != above) return false;
      }
      image_[e] = cand;
      return step(depth + 1, visit);
    };

    if (pin_extremes_ && poset_.top() == e) return try_candidate(full_);
    if (pin_extremes_ && poset_.bottom() == e) return try_candidate(0);

    const Mask free = full_ & ~lower;
    Mask sub = 0;
    while (true) {
      if (try_candidate(lower | sub)) return true;
      if (sub == free) break;
      sub = (sub - free) & free;
    }
    return false;
  }

  const Poset& poset_;
  Mask full_;
  std::uint64_t max_nodes_;
  bool pin_extremes_;
  std::vector<Mask> image_;
  std::uint64_t nodes_ = 0;
};

Mask spread(Mask bits, Mask positions) {
  Mask out = 0;
  int j = 0;
  while (positions != 0) {
    Mask low = positions & (~positions + 1);
    if (bits & (Mask{1} << j)) out |= low;
    positions &= positions - 1;
    ++j;
  }
  return out;
}

Mask lowest_bits(Mask m, int count) {
  Mask out = 0;
  for (int i = 0; i < count; ++i) {
    Mask low = m & (~m + 1);
    out |= low;
    m &= m - 1;
  }
  return out;
}

void require_base(const Poset& poset, const Embedding& base) {
  if (!poset.top() || !poset.bottom())
    throw InvalidArgument("poset needs a greatest and a least element");
  if (base.image.size() != poset.size() || base.dimension < 1 ||
      base.dimension > kMaxLatticeDimension)
    throw InvalidArgument("base embedding does not match the poset");
  if (base.image[*poset.top()] != full_mask(base.dimension) || base.image[*poset.bottom()] != 0)
    throw InvalidArgument("base embedding must send top to [d] and bottom to the empty set");
  if (!is_embedding(poset, base.dimension, base.image))
    throw InvalidArgument("base map is not an embedding");
}

}  // namespace

Poset::Poset(std::vector<std::string> ids, std::vector<char> leq)
    : ids_(std::move(ids)), leq_(std::move(leq)) {
  const std::size_t n = ids_.size();
  for (std::size_t c = 0; c < n; ++c) {
    bool is_top = true, is_bottom = true;
    for (std::size_t x = 0; x < n; ++x) {
      is_top = is_top && this->leq(x, c);
      is_bottom = is_bottom && this->leq(c, x);
    }
    if (is_top) top_ = c;
    if (is_bottom) bottom_ = c;
  }
  std::vector<std::size_t> indegree(n, 0);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (less(a, b)) ++indegree[b];
  std::set<std::size_t> ready;
  for (std::size_t i = 0; i < n; ++i)
    if (indegree[i] == 0) ready.insert(i);
  while (!ready.empty()) {
    std::size_t a = *ready.begin();
    ready.erase(ready.begin());
    extension_.push_back(a);
    for (std::size_t b = 0; b < n; ++b)
      if (less(a, b) && --indegree[b] == 0) ready.insert(b);
  }
}

Poset Poset::from_relations(std::vector<std::string> ids, const std::vector<Relation>& relations) {
  const std::size_t n = ids.size();
  std::map<std::string, std::size_t, std::less<>> index;
  for (std::size_t i = 0; i < n; ++i) {
    if (!index.emplace(ids[i], i).second) throw InvalidArgument("duplicate element id '" + ids[i] + "'");
  }
  std::vector<char> leq(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) leq[i * n + i] = 1;
  for (const auto& [lo, hi] : relations) {
    auto a = index.find(lo);
    auto b = index.find(hi);
    if (a == index.end()) throw InvalidArgument("unknown element id '" + lo + "'");
    if (b == index.end()) throw InvalidArgument("unknown element id '" + hi + "'");
    leq[a->second * n + b->second] = 1;
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (leq[i * n + k])
        for (std::size_t j = 0; j < n; ++j)
          if (leq[k * n + j]) leq[i * n + j] = 1;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (leq[i * n + j] && leq[j * n + i])
        throw InvalidArgument("cycle detected through '" + ids[i] + "' and '" + ids[j] +
                              "': not a partial order");
  return Poset(std::move(ids), std::move(leq));
}

Poset Poset::chain(std::size_t length) {
  std::vector<std::string> ids;
  std::vector<Relation> rel;
  for (std::size_t i = 0; i < length; ++i) {
    ids.push_back(std::to_string(i));
    if (i > 0) rel.emplace_back(std::to_string(i - 1), std::to_string(i));
  }
  return from_relations(std::move(ids), rel);
}

Poset Poset::boolean_lattice(int d) {
  const std::size_t n = std::size_t{1} << d;
  std::vector<std::string> ids;
  std::vector<char> leq(n * n, 0);
  for (Mask a = 0; a < n; ++a) {
    ids.push_back(mask_to_string(a));
    for (Mask b = 0; b < n; ++b) leq[a * n + b] = is_subset(a, b);
  }
  return Poset(std::move(ids), std::move(leq));
}

Poset Poset::product(const Poset& lhs, const Poset& rhs) {
  const std::size_t p = lhs.size(), q = rhs.size(), n = p * q;
  std::vector<std::string> ids;
  std::vector<char> leq(n * n, 0);
  for (std::size_t a = 0; a < p; ++a)
    for (std::size_t b = 0; b < q; ++b) ids.push_back(lhs.id(a) + "*" + rhs.id(b));
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      leq[x * n + y] = lhs.leq(x / q, y / q) && rhs.leq(x % q, y % q);
  return Poset(std::move(ids), std::move(leq));
}

std::optional<std::size_t> Poset::index_of(std::string_view id) const {
  auto it = std::find(ids_.begin(), ids_.end(), id);
  if (it == ids_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - ids_.begin());
}

std::vector<std::pair<std::size_t, std::size_t>> Poset::cover_pairs() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  const std::size_t n = size();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      if (!less(a, b)) continue;
      bool covered = true;
      for (std::size_t c = 0; c < n && covered; ++c)
        if (less(a, c) && less(c, b)) covered = false;
      if (covered) out.emplace_back(a, b);
    }
  return out;
}

Poset parse_poset(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    const auto upto = std::min<std::size_t>(e.byte, text.size());
    const auto line = 1 + std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(upto), '\n');
    throw ParseError("line " + std::to_string(line), e.what());
  }
  if (!doc.is_object()) throw ParseError("", "poset description must be an object");
  if (!doc.contains("elements")) throw ParseError("elements", "missing field");
  std::vector<std::string> ids;
  std::vector<Poset::Relation> rel;
  try {
    ids = doc.at("elements").get<std::vector<std::string>>();
    if (doc.contains("covers")) {
      for (const auto& pair : doc.at("covers")) {
        if (!pair.is_array() || pair.size() != 2) throw ParseError("covers", "each cover must be [lower, upper]");
        rel.emplace_back(pair[0].get<std::string>(), pair[1].get<std::string>());
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("elements/covers", e.what());
  }
  return Poset::from_relations(std::move(ids), rel);
}

LatticeCopy image_of(const Embedding& e) {
  LatticeCopy out = e.image;
  std::sort(out.begin(), out.end());
  return out;
}

bool is_embedding(const Poset& poset, int n, std::span<const Mask> image) {
  if (image.size() != poset.size() || n < 0 || n > kMaxLatticeDimension) return false;
  const Mask full = full_mask(n);
  for (std::size_t a = 0; a < image.size(); ++a) {
    if (!is_subset(image[a], full)) return false;
    for (std::size_t b = 0; b < image.size(); ++b) {
      if (a != b && image[a] == image[b]) return false;
      if (poset.leq(a, b) != is_subset(image[a], image[b])) return false;
    }
  }
  return true;
}

bool is_copy(const Poset& poset, int n, std::span<const Mask> members) {
  if (members.size() != poset.size() || n < 0 || n > kMaxLatticeDimension) return false;
  const Mask full = full_mask(n);
  for (std::size_t i = 0; i < members.size(); ++i) {
    if (!is_subset(members[i], full)) return false;
    for (std::size_t j = i + 1; j < members.size(); ++j)
      if (members[i] == members[j]) return false;
  }
  const auto& order = poset.linear_extension();
  std::vector<std::size_t> assign(poset.size());
  std::vector<bool> used(members.size(), false);
  auto rec = [&](auto& self, std::size_t depth) -> bool {
    if (depth == order.size()) return true;
    const std::size_t e = order[depth];
    for (std::size_t m = 0; m < members.size(); ++m) {
      if (used[m]) continue;
      bool ok = true;
      for (std::size_t k = 0; k < depth && ok; ++k) {
        std::size_t a = order[k];
        Mask img = members[assign[a]];
        ok = poset.leq(a, e) == is_subset(img, members[m]) && poset.leq(e, a) == is_subset(members[m], img);
      }
      if (!ok) continue;
      used[m] = true;
      assign[e] = m;
      if (self(self, depth + 1)) return true;
      used[m] = false;
    }
    return false;
  };
  return rec(rec, 0);
}

Embedding find_base_embedding(const Poset& poset, const Limits& limits) {
  if (!poset.top() || !poset.bottom())
    throw InvalidArgument("poset needs a greatest and a least element");
  if (poset.size() < 2)
    throw InvalidArgument("poset needs distinct greatest and least elements");
  for (int d = 1; d <= limits.max_base_dimension; ++d) {
    if ((std::size_t{1} << d) < poset.size()) continue;
    EmbeddingSearch search(poset, d, limits.max_nodes, true);
    std::optional<Embedding> found;
    search.run([&](const std::vector<Mask>& image) {
      found = Embedding{d, image};
      return true;
    });
    if (found) return *found;
  }
  throw BudgetExceeded("no top/bottom preserving embedding with d <= " +
                       std::to_string(limits.max_base_dimension));
}

bool is_scattered(std::span<const int> levels, int gap) {
  std::vector<int> sorted(levels.begin(), levels.end());
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 1; i < sorted.size(); ++i)
    if (sorted[i] - sorted[i - 1] < gap) return false;
  return true;
}

Embedding scattered_embedding(const Poset& poset, const Embedding& base, int n,
                              std::span<const int> levels) {
  require_base(poset, base);
  const int d = base.dimension;
  const int s = static_cast<int>(poset.size());
  if (static_cast<int>(levels.size()) != s)
    throw InvalidArgument("level set has " + std::to_string(levels.size()) + " members, poset has " +
                          std::to_string(s));
  if (n > kMaxLatticeDimension) throw InvalidArgument("dimension exceeds 63");
  if (n < (s - 1) * d)
    throw InvalidArgument("n = " + std::to_string(n) + " is below (|P|-1)d = " + std::to_string((s - 1) * d));
  std::vector<int> a(levels.begin(), levels.end());
  std::sort(a.begin(), a.end());
  if (!is_scattered(a, d)) throw InvalidArgument("level set is not " + std::to_string(d) + "-scattered");
  if (a.front() < 0 || a.back() > n) throw InvalidArgument("level set not inside 0..n");

  std::vector<std::size_t> order(poset.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return level(base.image[x]) < level(base.image[y]);
  });

  Embedding out{n, std::vector<Mask>(poset.size(), 0)};
  for (std::size_t i = 0; i < order.size(); ++i) {
    const std::size_t p = order[i];
    const int extra = a[i] - level(base.image[p]);
    // Elements d+1 .. d+extra are bits d .. d+extra-1.
    Mask pad = extra == 0 ? 0 : (full_mask(extra) << d);
    out.image[p] = base.image[p] | pad;
  }
  return out;
}

std::vector<LatticeCopy> enumerate_copies(const Poset& poset, int n, const Limits& limits) {
  if (n < 0 || n > limits.max_enumeration_dimension)
    throw BudgetExceeded("enumeration dimension " + std::to_string(n) + " exceeds cap " +
                         std::to_string(limits.max_enumeration_dimension));
  std::set<LatticeCopy> copies;
  if (poset.size() > (std::size_t{1} << n)) return {};
  EmbeddingSearch search(poset, n, limits.max_nodes, false);
  search.run([&](const std::vector<Mask>& image) {
    LatticeCopy c = image;
    std::sort(c.begin(), c.end());
    copies.insert(std::move(c));
    return false;
  });
  return {copies.begin(), copies.end()};
}

Embedding copy_with_extreme(const Poset& poset, const Embedding& base, int n, Mask x, ExtremeRole role) {
  require_base(poset, base);
  const int d = base.dimension;
  if (n < d || n > kMaxLatticeDimension) throw InvalidArgument("dimension must satisfy d <= n <= 63");
  const Mask full = full_mask(n);
  if (!is_subset(x, full)) throw InvalidArgument("element " + mask_to_string(x) + " not in B(n)");
  Embedding out{n, std::vector<Mask>(poset.size(), 0)};
  if (role == ExtremeRole::Top) {
    if (level(x) < d)
      throw InvalidArgument("|x| = " + std::to_string(level(x)) + " < d = " + std::to_string(d));
    const Mask D = lowest_bits(x, d);
    for (std::size_t p = 0; p < poset.size(); ++p) out.image[p] = (x & ~D) | spread(base.image[p], D);
  } else {
    if (level(x) > n - d)
      throw InvalidArgument("|x| = " + std::to_string(level(x)) + " > n - d = " + std::to_string(n - d));
    const Mask D = lowest_bits(full & ~x, d);
    for (std::size_t p = 0; p < poset.size(); ++p) out.image[p] = x | spread(base.image[p], D);
  }
  return out;
}

}  // namespace boolpart
