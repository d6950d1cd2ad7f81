#pragma once

// Independent helpers for tests: naive re-implementations that share no code
// with the library beyond plain data types.

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "boolpart/io.hpp"
#include "boolpart/product.hpp"

namespace testing_support {

using namespace boolpart;

inline std::string fixture(const std::string& name) { return std::string(BOOLPART_FIXTURES_DIR) + "/" + name; }

inline Poset load_fixture_poset(const std::string& name) { return io::load_poset(io::read_file(fixture(name))); }

inline std::vector<int> elements_of(std::uint64_t s) {
  std::vector<int> out;
  for (int i = 0; i < 64; ++i)
    if (s >> i & 1) out.push_back(i);
  return out;
}

/// Every tuple in the product of `factors`, by plain odometer.
inline std::vector<std::vector<int>> tuples(const std::vector<std::uint64_t>& factors) {
  std::vector<std::vector<int>> out{{}};
  for (auto f : factors) {
    std::vector<std::vector<int>> next;
    for (const auto& prefix : out)
      for (int e : elements_of(f)) {
        auto t = prefix;
        t.push_back(e);
        next.push_back(std::move(t));
      }
    out = std::move(next);
  }
  return out;
}

/// Cells of a certificate's region in actual coordinates; `dup` counts
/// repeats.
inline std::set<std::vector<int>> region_cells(const PartitionCertificate& c, std::size_t* dup = nullptr) {
  std::set<std::vector<int>> cells;
  for (const auto& box : c.region.boxes()) {
    for (auto stored : tuples(box.factors)) {
      std::vector<int> actual(stored.size());
      for (std::size_t i = 0; i < stored.size(); ++i)
        actual[c.coordinate_map.empty() ? i : static_cast<std::size_t>(c.coordinate_map[i])] = stored[i];
      if (!cells.insert(actual).second && dup) ++*dup;
    }
  }
  return cells;
}

/// Naive exact-cover check of a product certificate.
inline bool naive_verify(const PartitionCertificate& c) {
  std::size_t dup = 0;
  auto region = region_cells(c, &dup);
  if (dup) return false;
  std::set<std::vector<int>> covered;
  for (const auto& t : c.tiles) {
    if (t.member >= c.members.size() || c.members[t.member].set == 0) return false;
    if (t.host >= t.fixed.size() || t.fixed.size() != static_cast<std::size_t>(c.dimension)) return false;
    for (int v : elements_of(c.members[t.member].set)) {
      std::vector<int> stored = t.fixed;
      stored[t.host] = v;
      std::vector<int> actual(stored.size());
      for (std::size_t i = 0; i < stored.size(); ++i)
        actual[c.coordinate_map.empty() ? i : static_cast<std::size_t>(c.coordinate_map[i])] = stored[i];
      if (!region.count(actual) || !covered.insert(actual).second) return false;
    }
  }
  return covered.size() == region.size();
}

/// Instance with U = A u B built from block sizes: |A n B| = ab, |Ac| = ac,
/// |Bc| = bc and `extra` further elements of S outside U. Ground labels are
/// s0, s1, ...; the family holds S and any extra named sets.
inline ProductInstance block_instance(int ab, int ac, int bc, int extra) {
  ProductInstance inst;
  const int n = ab + ac + bc + extra;
  for (int i = 0; i < n; ++i) inst.ground.push_back("s" + std::to_string(i));
  std::uint64_t both = 0, only_b = 0, only_a = 0;
  int pos = 0;
  for (int i = 0; i < ab; ++i) both |= std::uint64_t{1} << pos++;
  for (int i = 0; i < ac; ++i) only_b |= std::uint64_t{1} << pos++;  // Ac = U \ A lies in B only
  for (int i = 0; i < bc; ++i) only_a |= std::uint64_t{1} << pos++;
  inst.a = both | only_a;
  inst.b = both | only_b;
  inst.family["S"] = (std::uint64_t{1} << n) - 1;
  return inst;
}

/// The 5-cycle edge family on S = {v0..v4}; every vertex lies in 2 edges.
inline ProductInstance pentagon() {
  ProductInstance inst;
  for (int i = 0; i < 5; ++i) inst.ground.push_back("v" + std::to_string(i));
  for (int i = 0; i < 5; ++i)
    inst.family["e" + std::to_string(i)] = (std::uint64_t{1} << i) | (std::uint64_t{1} << ((i + 1) % 5));
  inst.r_witness = RWitness{2, {"e0", "e1", "e2", "e3", "e4"}};
  return inst;
}

inline mpz_class choose(unsigned n, unsigned k) {
  if (k > n) return 0;
  mpz_class num = 1, den = 1;
  for (unsigned i = 0; i < k; ++i) {
    num *= n - i;
    den *= i + 1;
  }
  return num / den;
}

/// Naive poset isomorphism: the order induced by B(n) on `sets` against
/// `poset`, over all bijections.
inline bool naive_is_copy(const Poset& poset, const std::vector<std::uint64_t>& sets) {
  const std::size_t s = poset.size();
  if (sets.size() != s) return false;
  std::vector<std::size_t> perm(s);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    bool ok = true;
    for (std::size_t a = 0; a < s && ok; ++a)
      for (std::size_t b = 0; b < s && ok; ++b)
        ok = poset.leq(a, b) == ((sets[perm[a]] & ~sets[perm[b]]) == 0);
    if (ok) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

/// All |P|-subsets of B(n) inducing P, sorted.
inline std::vector<std::vector<std::uint64_t>> naive_copies(const Poset& poset, int n) {
  std::vector<std::vector<std::uint64_t>> out;
  const std::uint64_t total = std::uint64_t{1} << n;
  std::vector<std::uint64_t> pick;
  std::function<void(std::uint64_t)> rec = [&](std::uint64_t start) {
    if (pick.size() == poset.size()) {
      if (naive_is_copy(poset, pick)) out.push_back(pick);
      return;
    }
    for (std::uint64_t m = start; m < total; ++m) {
      pick.push_back(m);
      rec(m + 1);
      pick.pop_back();
    }
  };
  rec(0);
  return out;
}

}  // namespace testing_support
