#include "boolpart/greedy.hpp"

#include <algorithm>
#include <numeric>

#include "boolpart/error.hpp"

namespace boolpart {

WeightFunction greedy_t_subset_weights(std::span<const mpq_class> f, std::size_t t,
                                       const GreedyObserver& observer) {
  if (t == 0) throw InvalidArgument("t must be positive");
  mpq_class sum = 0, max = 0;
  mpz_class scale = 1;
  for (const auto& v : f) {
    if (v < 0) throw InvalidArgument("f must be nonnegative");
    sum += v;
    max = std::max(max, v);
    mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), v.get_den_mpz_t());
  }
  WeightFunction w(WeightDomain::NonNegativeRational);
  if (sum == 0) return w;
  if (t > f.size()) throw InvalidArgument("t exceeds |X| while f is nonzero");
  if (mpq_class(t) * max > sum) throw InvalidArgument("hypothesis t * max f <= sum f violated");

  scale *= t;
  std::vector<mpz_class> g(f.size());
  mpz_class total = 0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    mpq_class scaled = f[i] * scale;
    g[i] = scaled.get_num();
    total += g[i];
  }
  mpz_class level = total / t;

  std::vector<std::size_t> order(f.size());
  while (level > 0) {
    // T first (values equal to N), then the largest positive values, ties by index.
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return g[a] > g[b]; });
    std::vector<std::size_t> chosen(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(t));
    std::sort(chosen.begin(), chosen.end());

    mpz_class step = level;
    mpz_class outside_max = 0;
    for (std::size_t i = 0; i < g.size(); ++i) {
      if (std::binary_search(chosen.begin(), chosen.end(), i))
        step = std::min(step, g[i]);
      else
        outside_max = std::max(outside_max, g[i]);
    }
    step = std::min(step, mpz_class(level - outside_max));
    if (step <= 0) throw std::logic_error("greedy_t_subset_weights: invariant broken");

    if (observer) observer(GreedyPhase{g, level, chosen, step});

    MemberKey key(chosen.begin(), chosen.end());
    mpq_class weight(step, scale);
    weight.canonicalize();
    w.add(std::move(key), weight);
    for (auto i : chosen) g[i] -= step;
    level -= step;
  }
  return w;
}

std::vector<std::vector<int>> split_scattered(std::span<const int> levels, int d) {
  if (d <= 0) throw InvalidArgument("d must be positive");
  if (levels.size() % static_cast<std::size_t>(d) != 0)
    throw InvalidArgument(std::to_string(d) + " does not divide |B| = " + std::to_string(levels.size()));
  std::vector<int> sorted(levels.begin(), levels.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<std::vector<int>> out(static_cast<std::size_t>(d));
  for (std::size_t i = 0; i < sorted.size(); ++i) out[i % static_cast<std::size_t>(d)].push_back(sorted[i]);
  return out;
}

}  // namespace boolpart
