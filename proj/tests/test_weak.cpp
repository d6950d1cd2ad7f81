#include <gtest/gtest.h>

#include <random>

#include "boolpart/greedy.hpp"
#include "boolpart/lattice.hpp"
#include "boolpart/weak_certificate.hpp"
#include "boolpart/weights.hpp"
#include "support.hpp"

using namespace boolpart;
using namespace testing_support;

namespace {

// Multiplicity of index x under a weight function on index sets, by direct
// summation over the support.
mpq_class index_multiplicity(const WeightFunction& w, std::uint64_t x) {
  mpq_class total = 0;
  for (const auto& [key, value] : w.entries())
    if (std::find(key.begin(), key.end(), x) != key.end()) total += value;
  return total;
}

// Random weight function on copies of `p` in B(n).
WeightFunction random_copy_weights(std::mt19937_64& rng, const Poset& p, int n) {
  WeightFunction w;
  auto copies = naive_copies(p, n);
  for (const auto& c : copies) {
    if (rng() % 3 == 0) continue;
    w.add(MemberKey(c.begin(), c.end()), mpq_class(static_cast<long>(rng() % 7), 1 + static_cast<long>(rng() % 5)));
  }
  return w;
}

// Exact multiplicity of every x in B(n).
std::vector<mpq_class> lattice_multiplicities(const WeightFunction& w, int n) {
  std::vector<mpq_class> out(std::size_t{1} << n);
  for (const auto& [key, value] : w.entries())
    for (auto m : key) out[m] += value;
  return out;
}

}  // namespace

TEST(Weights, AddMergesAndDropsZeros) {
  WeightFunction w;
  w.add({3, 1}, mpq_class(1, 2));
  w.add({1, 3}, mpq_class(1, 2));
  EXPECT_EQ(w.support_size(), 1u);
  EXPECT_EQ(w.weight({1, 3}), 1);
  w.add({1, 3}, -1);
  EXPECT_TRUE(w.empty());
}

TEST(Weights, DomainChecks) {
  WeightFunction q(WeightDomain::NonNegativeRational);
  q.add({1}, mpq_class(-1, 3));
  EXPECT_THROW(q.check_domain(), InvalidArgument);
  WeightFunction z(WeightDomain::NonNegativeInteger);
  z.add({1}, mpq_class(1, 2));
  EXPECT_THROW(z.check_domain(), InvalidArgument);
  WeightFunction ints(WeightDomain::Integer);
  ints.add({1}, -4);
  EXPECT_NO_THROW(ints.check_domain());
}

TEST(Weights, MultiplicityAndLevelProfile) {
  WeightFunction w;
  w.add({0b00, 0b01}, mpq_class(1, 2));
  w.add({0b01, 0b11}, 2);
  EXPECT_EQ(multiplicity(w, 0b01), mpq_class(5, 2));
  EXPECT_EQ(multiplicity(w, 0b10), 0);
  auto prof = level_profile(w, 2);
  ASSERT_EQ(prof.size(), 3u);
  EXPECT_EQ(prof[0], mpq_class(1, 2));
  EXPECT_EQ(prof[1], mpq_class(5, 2));
  EXPECT_EQ(prof[2], 2);
  EXPECT_EQ(w.denominator_lcm(), 2);
}

TEST(Weights, SymmetrizationIdentityAgainstPermutedWeights) {
  // Oracle: build the permutation average as an explicit weight function
  // and read off multiplicities.
  std::mt19937_64 rng(17);
  std::vector<Poset> posets{Poset::chain(2), Poset::chain(3), load_fixture_poset("diamond.json")};
  for (int trial = 0; trial < 20; ++trial) {
    const Poset& p = posets[trial % posets.size()];
    const int n = 2 + trial % 3;
    WeightFunction w = random_copy_weights(rng, p, n);
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    WeightFunction avg;
    long perms = 0;
    do {
      ++perms;
      for (const auto& [key, value] : w.entries()) {
        MemberKey moved;
        for (auto m : key) {
          Mask out = 0;
          for (int b = 0; b < n; ++b)
            if (m >> b & 1) out |= Mask{1} << perm[b];
          moved.push_back(out);
        }
        avg.add(moved, value);
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
    auto mult = lattice_multiplicities(avg, n);
    for (Mask x = 0; x < (Mask{1} << n); ++x) {
      mpq_class expected = mult[x] / perms;
      EXPECT_EQ(symmetrized_multiplicity(w, n, x), expected);
      EXPECT_EQ(permutation_average_multiplicity(w, n, x), expected);
    }
  }
  EXPECT_THROW(permutation_average_multiplicity(WeightFunction{}, 9, 0), InvalidArgument);
}

TEST(Weights, ReduceModR) {
  WeightFunction w(WeightDomain::Integer);
  w.add({1}, 5);
  w.add({2}, -1);
  w.add({3}, 4);
  auto red = reduce_mod_r(w, 2);
  EXPECT_EQ(red.weight({1}), 1);
  EXPECT_EQ(red.weight({2}), 1);
  EXPECT_EQ(red.weight({3}), 0);
  EXPECT_EQ(red.support_size(), 2u);
}

TEST(Greedy, SmallExamples) {
  std::vector<mpq_class> ones{1, 1, 1};
  auto w = greedy_t_subset_weights(ones, 3);
  ASSERT_EQ(w.support_size(), 1u);
  EXPECT_EQ(w.weight({0, 1, 2}), 1);

  std::vector<mpq_class> f{2, 1, 1};
  auto g = greedy_t_subset_weights(f, 2);
  EXPECT_EQ(g.weight({0, 1}), 1);
  EXPECT_EQ(g.weight({0, 2}), 1);
  EXPECT_EQ(g.support_size(), 2u);

  // Rational values: every index appears in a t-set of weight 1/2.
  std::vector<mpq_class> half{mpq_class(1, 2), mpq_class(1, 2)};
  auto h = greedy_t_subset_weights(half, 1);
  EXPECT_EQ(h.weight({0}), mpq_class(1, 2));
  EXPECT_EQ(h.weight({1}), mpq_class(1, 2));
}

TEST(Greedy, RejectsInfeasibleInput) {
  std::vector<mpq_class> heavy{3, 1, 1};
  EXPECT_THROW(greedy_t_subset_weights(heavy, 2), InvalidArgument);
  std::vector<mpq_class> negative{2, -1, 1};
  EXPECT_THROW(greedy_t_subset_weights(negative, 1), InvalidArgument);
  std::vector<mpq_class> small{1, 1};
  EXPECT_THROW(greedy_t_subset_weights(small, 3), InvalidArgument);
}

TEST(Greedy, PhaseInvariantsHold) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t size = 1 + rng() % 7;
    const std::size_t t = 1 + rng() % size;
    std::vector<mpq_class> f;
    for (std::size_t i = 0; i < size; ++i) {
      f.emplace_back(static_cast<long>(rng() % 6), 1 + static_cast<long>(rng() % 3));
      f.back().canonicalize();
    }
    mpq_class sum = 0, mx = 0;
    for (auto& v : f) {
      sum += v;
      mx = std::max(mx, v);
    }
    if (mx * static_cast<long>(t) > sum) continue;
    std::size_t phases = 0;
    auto w = greedy_t_subset_weights(f, t, [&](const GreedyPhase& ph) {
      ++phases;
      mpz_class total = 0;
      for (const auto& v : ph.values) {
        EXPECT_GE(v, 0);
        EXPECT_LE(v, ph.level);
        total += v;
      }
      EXPECT_EQ(total, ph.level * static_cast<long>(t));
      EXPECT_EQ(ph.chosen.size(), t);
      for (std::size_t i = 0; i < ph.values.size(); ++i) {
        if (ph.values[i] == ph.level) {
          EXPECT_TRUE(std::binary_search(ph.chosen.begin(), ph.chosen.end(), i));
        }
      }
      EXPECT_GT(ph.step, 0);
    });
    for (std::size_t x = 0; x < size; ++x) EXPECT_EQ(index_multiplicity(w, x), f[x]);
    for (const auto& [key, value] : w.entries()) {
      EXPECT_EQ(key.size(), t);
      EXPECT_GT(value, 0);
    }
    EXPECT_GE(phases, w.support_size() > 0 ? 1u : 0u);
  }
}

TEST(Greedy, SplitScattered) {
  std::vector<int> levels{7, 0, 3, 1, 5, 2};
  auto parts = split_scattered(levels, 2);
  ASSERT_EQ(parts.size(), 2u);
  EXPECT_EQ(parts[0], (std::vector<int>{0, 2, 5}));
  EXPECT_EQ(parts[1], (std::vector<int>{1, 3, 7}));
  EXPECT_THROW(split_scattered(levels, 4), InvalidArgument);
}

TEST(WeakCertificate, BalancedDimensionMatchesDirectEvaluation) {
  for (unsigned long k = 1; k <= 9; ++k) {
    int expected = 0;
    for (unsigned n = 1; n <= 62; ++n) {
      mpz_class two = 1;
      for (unsigned i = 0; i < n; ++i) two *= 2;
      if (choose(n, (n + 1) / 2) * k <= two) {
        expected = static_cast<int>(n);
        break;
      }
    }
    EXPECT_EQ(smallest_balanced_dimension(k, 62), expected) << "k = " << k;
  }
  EXPECT_EQ(smallest_balanced_dimension(6, 62), 23);
  EXPECT_THROW(smallest_balanced_dimension(6, 20), BudgetExceeded);
  // Roughly n >= 2k^2 / pi is needed, so k = 12 does not fit in 62 bits.
  EXPECT_THROW(smallest_balanced_dimension(12, 62), BudgetExceeded);
}

TEST(WeakCertificate, TwoChainIsTrivial) {
  auto c = build_r_certificate(Poset::chain(2));
  EXPECT_EQ(c.n, 1);
  auto prof = level_profile(c.weights, c.n);
  EXPECT_EQ(prof, (std::vector<mpq_class>{1, 1}));
  EXPECT_TRUE(verify_weak_certificate(c).ok);
}

TEST(WeakCertificate, ThreeChainLevelSums) {
  auto c = build_r_certificate(Poset::chain(3));
  ASSERT_EQ(c.n, 23);
  std::vector<mpq_class> sums(24);
  for (const auto& [key, value] : c.weights.entries()) {
    EXPECT_GT(value, 0);
    for (auto m : key) sums[static_cast<std::size_t>(std::popcount(m))] += value;
  }
  for (unsigned i = 0; i <= 23; ++i) EXPECT_EQ(sums[i], mpq_class(choose(23, i))) << "level " << i;
  EXPECT_TRUE(verify_weak_certificate(c).ok);
  // r = n! * lcm of denominators turns the average into an integer weighting.
  mpz_class fact = 1;
  for (int i = 2; i <= 23; ++i) fact *= i;
  EXPECT_EQ(c.r % fact, 0);
}

TEST(WeakCertificate, RPartitionOnSmallBoundedPosets) {
  std::vector<Poset> posets{load_fixture_poset("diamond.json"),
                            Poset::from_relations({"o", "a", "i"}, {{"o", "a"}, {"a", "i"}}), Poset::chain(2)};
  EXPECT_THROW(build_r_certificate(Poset::chain(4)), BudgetExceeded);  // |P| d = 12
  for (const auto& p : posets) {
    auto c = build_r_certificate(p);
    auto rep = verify_weak_certificate(c);
    EXPECT_TRUE(rep.ok) << (rep.violations.empty() ? "" : rep.violations.front());
    auto prof = level_profile(c.weights, c.n);
    for (int i = 0; i <= c.n; ++i)
      EXPECT_EQ(prof[static_cast<std::size_t>(i)], mpq_class(choose(static_cast<unsigned>(c.n), static_cast<unsigned>(i))));
  }
}

TEST(WeakCertificate, DiamondModTwo) {
  Poset d = load_fixture_poset("diamond.json");
  auto c = build_mod_certificate(d, 2);
  ASSERT_EQ(c.n, 3);
  ASSERT_TRUE(c.integer_stage.has_value());
  auto exact = lattice_multiplicities(*c.integer_stage, 3);
  for (const auto& v : exact) EXPECT_EQ(v, 1);
  auto reduced = lattice_multiplicities(c.weights, 3);
  for (const auto& v : reduced) {
    ASSERT_EQ(v.get_den(), 1);
    mpz_class z = v.get_num();
    EXPECT_EQ(z % 2, 1);
  }
  for (const auto& [key, value] : c.weights.entries()) {
    EXPECT_TRUE(value == 1);
    EXPECT_TRUE(naive_is_copy(d, std::vector<std::uint64_t>(key.begin(), key.end())));
  }
  EXPECT_TRUE(verify_weak_certificate(c).ok);
}

TEST(WeakCertificate, ModPartitionsForSeveralModuli) {
  std::vector<Poset> posets{Poset::chain(2), Poset::chain(4), load_fixture_poset("diamond.json"),
                            Poset::product(Poset::chain(2), Poset::chain(4))};
  for (const auto& p : posets)
    for (int r = 2; r <= 5; ++r) {
      auto c = build_mod_certificate(p, r);
      auto rep = verify_weak_certificate(c);
      EXPECT_TRUE(rep.ok) << "size " << p.size() << " r " << r << ": "
                          << (rep.violations.empty() ? "" : rep.violations.front());
      for (const auto& [key, value] : c.weights.entries()) {
        EXPECT_GE(value, 1);
        EXPECT_LT(value, r);
      }
    }
  EXPECT_THROW(build_mod_certificate(Poset::chain(2), 0), InvalidArgument);
  // The construction needs |P| to be a power of two.
  EXPECT_THROW(build_mod_certificate(Poset::chain(3), 2), InvalidArgument);
}

TEST(WeakCertificate, TamperingIsDetected) {
  auto c = build_mod_certificate(load_fixture_poset("diamond.json"), 3);
  ASSERT_TRUE(verify_weak_certificate(c).ok);
  auto bumped = c;
  bumped.weights.add(bumped.weights.entries().begin()->first, 1);
  EXPECT_FALSE(verify_weak_certificate(bumped).ok);

  auto r = build_r_certificate(Poset::chain(3));
  auto broken = r;
  broken.weights.add(broken.weights.entries().begin()->first, mpq_class(1, 7));
  EXPECT_FALSE(verify_weak_certificate(broken).ok);

  // A non-copy in the support.
  auto fake = build_r_certificate(Poset::chain(2));
  fake.weights.add({0b01, 0b10}, 1);
  EXPECT_FALSE(verify_weak_certificate(fake).ok);
}
