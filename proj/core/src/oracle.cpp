#include "boolpart/oracle.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <random>

#include "boolpart/engine.hpp"
#include "boolpart/general.hpp"

namespace boolpart {

LatticeSearchResult direct_lattice_partition(const Poset& poset, int n, CoverMode mode, const Limits& limits) {
  if (n < 0 || n > limits.max_enumeration_dimension)
    throw BudgetExceeded("B(" + std::to_string(n) + ") exceeds the enumeration cap " +
                         std::to_string(limits.max_enumeration_dimension));
  const auto copies = enumerate_copies(poset, n, limits);
  CoverProblem problem;
  problem.universe_size = std::size_t{1} << n;
  for (const auto& c : copies) problem.candidates.emplace_back(c.begin(), c.end());
  CoverResult cover = exact_cover_solve(problem, mode, limits.max_nodes);

  LatticeSearchResult out;
  out.status = cover.status;
  out.copies = copies.size();
  out.count = cover.count;
  out.nodes = cover.nodes;
  for (const auto& sol : cover.solutions) {
    LatticePartition p;
    p.poset = poset;
    p.n = n;
    for (std::size_t idx : sol) p.tiles.push_back(copies[idx]);
    std::sort(p.tiles.begin(), p.tiles.end());
    out.partitions.push_back(std::move(p));
  }
  return out;
}

const char* to_string(WeakFinding::Kind kind) {
  return kind == WeakFinding::Kind::RPartition ? "r-partition" : "mod-partition";
}

const WeakFinding* WeakSearchResult::find(WeakFinding::Kind kind, int r) const {
  for (const auto& f : findings)
    if (f.kind == kind && f.r == r) return &f;
  return nullptr;
}

WeakSearchResult weak_partition_search(std::size_t ground_size, const std::vector<ElementSet>& family, int r_max,
                                       int weight_bound, const Limits& limits) {
  if (ground_size == 0 || ground_size > kMaxGroundSize) throw InvalidArgument("ground size outside 1..64");
  if (r_max < 1) throw InvalidArgument("r_max must be at least 1");
  if (weight_bound < 0) throw InvalidArgument("weight bound must be nonnegative");
  const std::size_t f = family.size();
  std::vector<std::vector<int>> members(f);
  for (std::size_t i = 0; i < f; ++i) {
    for (int e : set_elements(family[i])) {
      if (static_cast<std::size_t>(e) >= ground_size) throw InvalidArgument("family member leaves the ground set");
      members[i].push_back(e);
    }
  }

  const auto R = static_cast<std::size_t>(r_max);
  std::vector<std::optional<std::vector<int>>> r_found(R + 1), mod_found(R + 1);
  std::size_t missing = 2 * R;
  std::vector<int> weights(f, 0), mult(ground_size, 0);
  std::uint64_t vectors = 0;

  auto examine = [&] {
    if (++vectors > limits.max_nodes)
      throw BudgetExceeded("weak-partition search exceeded " + std::to_string(limits.max_nodes) + " weight vectors");
    const int lo = *std::min_element(mult.begin(), mult.end());
    const int hi = *std::max_element(mult.begin(), mult.end());
    if (lo < 1) return;
    if (lo == hi && static_cast<std::size_t>(lo) <= R && !r_found[static_cast<std::size_t>(lo)]) {
      r_found[static_cast<std::size_t>(lo)] = weights;
      --missing;
    }
    for (std::size_t r = 1; r <= R; ++r) {
      if (mod_found[r]) continue;
      bool ok = std::all_of(mult.begin(), mult.end(), [&](int m) { return (m - 1) % static_cast<int>(r) == 0; });
      if (ok) {
        mod_found[r] = weights;
        --missing;
      }
    }
  };

  // Distributes `left` units over members i.., larger weights on earlier members first.
  std::function<bool(std::size_t, int)> place = [&](std::size_t i, int left) -> bool {
    if (i + 1 == f || f == 0) {
      if (f == 0) return false;
      weights[i] = left;
      for (int e : members[i]) mult[static_cast<std::size_t>(e)] += left;
      examine();
      for (int e : members[i]) mult[static_cast<std::size_t>(e)] -= left;
      weights[i] = 0;
      return missing == 0;
    }
    for (int w = left; w >= 0; --w) {
      weights[i] = w;
      for (int e : members[i]) mult[static_cast<std::size_t>(e)] += w;
      bool stop = place(i + 1, left - w);
      for (int e : members[i]) mult[static_cast<std::size_t>(e)] -= w;
      weights[i] = 0;
      if (stop) return true;
    }
    return false;
  };
  for (int total = 1; total <= weight_bound && missing > 0; ++total)
    if (place(0, total)) break;

  WeakSearchResult out;
  out.vectors = vectors;
  for (std::size_t r = 1; r <= R; ++r)
    if (r_found[r]) out.findings.push_back({WeakFinding::Kind::RPartition, static_cast<int>(r), *r_found[r]});
  for (std::size_t r = 1; r <= R; ++r)
    if (mod_found[r]) out.findings.push_back({WeakFinding::Kind::ModPartition, static_cast<int>(r), *mod_found[r]});
  out.exact_partition = r_found[1].has_value();
  return out;
}

WeakSearchResult weak_partition_search(const ProductInstance& inst, int r_max, int weight_bound,
                                       const Limits& limits) {
  inst.validate();
  std::vector<ElementSet> family;
  for (const auto& [id, set] : inst.family) family.push_back(set);
  return weak_partition_search(inst.ground_size(), family, r_max, weight_bound, limits);
}

std::vector<std::string> witness_members(const ProductInstance& inst, const std::vector<int>& weights) {
  if (weights.size() != inst.family.size()) throw InvalidArgument("weight vector does not match the family");
  std::vector<std::string> out;
  std::size_t i = 0;
  for (const auto& [id, set] : inst.family) {
    for (int w = 0; w < weights[i]; ++w) out.push_back(id);
    ++i;
  }
  return out;
}

std::optional<ProductInstance> find_instance(std::uint64_t seed, const InstanceSearch& search, const Limits& limits) {
  std::mt19937_64 rng(seed);
  auto uniform = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  for (int attempt = 0; attempt < search.attempts; ++attempt) {
    const int g = uniform(search.ground_min, search.ground_max);
    const int f = uniform(search.family_min, search.family_max);
    const ElementSet all = (ElementSet{1} << g) - 1;
    std::vector<ElementSet> sets;
    for (int tries = 0; static_cast<int>(sets.size()) < f && tries < 64; ++tries) {
      ElementSet s = std::uniform_int_distribution<ElementSet>(1, all)(rng);
      if (search.forbid_exact_partition && s == all) continue;
      if (std::find(sets.begin(), sets.end(), s) == sets.end()) sets.push_back(s);
    }

    ProductInstance inst;
    for (int i = 0; i < g; ++i) inst.ground.push_back(std::string(1, static_cast<char>('a' + i)));
    for (std::size_t i = 0; i < sets.size(); ++i) inst.family["F" + std::to_string(i + 1)] = sets[i];

    WeakSearchResult weak;
    try {
      weak = weak_partition_search(inst, search.r_max, search.weight_bound, limits);
    } catch (const BudgetExceeded&) {
      continue;
    }
    if (search.forbid_exact_partition && weak.exact_partition) continue;
    int r = 0;
    for (int cand = search.r_min; cand <= search.r_max && r == 0; ++cand)
      if (weak.find(WeakFinding::Kind::RPartition, cand) && weak.find(WeakFinding::Kind::ModPartition, cand)) r = cand;
    if (r == 0) continue;
    inst.r_witness = RWitness{r, witness_members(inst, weak.find(WeakFinding::Kind::RPartition, r)->weights)};
    inst.mod_witness = ModWitness{witness_members(inst, weak.find(WeakFinding::Kind::ModPartition, r)->weights)};

    // A and B with Ac, Bc nonempty and a small union.
    bool placed = false;
    for (int tries = 0; tries < 64 && !placed; ++tries) {
      ElementSet a = std::uniform_int_distribution<ElementSet>(1, all)(rng);
      ElementSet b = std::uniform_int_distribution<ElementSet>(1, all)(rng);
      if ((a & ~b) == 0 || (b & ~a) == 0 || std::popcount(a | b) > search.max_union) continue;
      inst.a = a;
      inst.b = b;
      placed = true;
    }
    if (!placed) continue;

    try {
      ProductEngine engine(inst, limits);
      if (engine.main_cells() > search.max_cells) continue;
      if (search.cover_size > 0) {
        auto cover = general_cover(inst);
        if (static_cast<int>(cover.size()) != search.cover_size) continue;
        const int q = engine.manychoices_dimension(static_cast<int>(inst.mod_witness->members.size()));
        bool fits = true;
        ElementSet prefix = 0;
        for (const auto& id : cover) {
          prefix |= inst.member(id);
          std::uint64_t cells = static_cast<std::uint64_t>(g) * static_cast<std::uint64_t>(g);
          for (int i = 0; i < q && fits; ++i) {
            cells *= static_cast<std::uint64_t>(std::popcount(prefix));
            fits = cells <= search.max_cells;
          }
        }
        if (!fits) continue;
      }
    } catch (const BudgetExceeded&) {
      continue;
    }
    return inst;
  }
  return std::nullopt;
}

}  // namespace boolpart
