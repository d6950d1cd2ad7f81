#include <gtest/gtest.h>

#include <random>

#include "boolpart/engine.hpp"
#include "boolpart/general.hpp"
#include "boolpart/io.hpp"
#include "boolpart/oracle.hpp"
#include "engine_oracle.hpp"
#include "support.hpp"

using namespace boolpart;
using namespace testing_support;

namespace {

void expect_valid(const PartitionCertificate& c, const ProductInstance& inst, const std::set<std::vector<int>>& cells) {
  auto rep = verify_certificate(c, &inst);
  EXPECT_TRUE(rep.ok) << (rep.violations.empty() ? "" : rep.violations.front());
  EXPECT_EQ(region_cells(c), cells);
  EXPECT_TRUE(naive_verify(c));
}

bool only_ab_tiles(const PartitionCertificate& c) {
  for (const auto& t : c.tiles) {
    const auto& id = c.members[t.member].id;
    if (id != "A" && id != "B") return false;
  }
  return true;
}

}  // namespace

TEST(Engine, CornerBoxes) {
  ProductEngine eng(block_instance(1, 1, 1, 1));
  const auto& inst = eng.instance();
  Box c0 = eng.corner_box(0, 3);
  EXPECT_EQ(c0.factors, (std::vector<ElementSet>(3, inst.a_comp())));
  Box c2 = eng.corner_box(2, 3);
  EXPECT_EQ(c2.factors, (std::vector<ElementSet>{inst.a_comp(), inst.b_comp(), inst.a_comp()}));
  EXPECT_THROW(eng.corner_box(4, 3), InvalidArgument);
  EXPECT_EQ(eng.power_box(2).cell_count(), 9u);
}

TEST(Engine, OneCornerSmallSweep) {
  for (int ab = 0; ab <= 2; ++ab)
    for (int ac = 0; ac <= 2; ++ac)
      for (int bc = 0; bc <= 2; ++bc) {
        if (ab + ac + bc == 0 || ab + ac + bc > 3) continue;
        ProductInstance inst = block_instance(ab, ac, bc, 1);
        ProductEngine eng(inst);
        for (int k = 1; k <= 3; ++k)
          for (int i = 0; i <= k; ++i) {
            auto c = eng.onecorner(k, i);
            SCOPED_TRACE("ab ac bc k i = " + std::to_string(ab) + std::to_string(ac) + std::to_string(bc) +
                         std::to_string(k) + std::to_string(i));
            expect_valid(c, inst, oracle::onecorner_cells(inst, k, i));
            EXPECT_TRUE(only_ab_tiles(c));
          }
      }
}

TEST(Engine, OneCornerArguments) {
  ProductEngine eng(block_instance(1, 1, 1, 0));
  EXPECT_THROW(eng.onecorner(0, 0), InvalidArgument);
  EXPECT_THROW(eng.onecorner(2, 3), InvalidArgument);
  EXPECT_THROW(eng.onecorner(2, -1), InvalidArgument);
}

TEST(Engine, BlowupAndModify) {
  ProductInstance inst = block_instance(1, 1, 2, 0);
  ProductEngine eng(inst);
  for (int k = 1; k <= 3; ++k)
    for (int i = 0; i <= k; ++i) {
      auto base = eng.onecorner(k, i);
      auto up = eng.blowup(base);
      expect_valid(up, inst, oracle::blowup_cells(inst, base));
      EXPECT_TRUE(only_ab_tiles(up));
      // X = C_{i,k} here, so modify is allowed exactly at index i.
      auto mod = eng.modify(base, i);
      expect_valid(mod, inst, oracle::modify_cells(inst, base, i));
      for (int j = 0; j <= k; ++j) {
        if (j != i) {
          EXPECT_THROW(eng.modify(base, j), InvalidArgument);
        }
      }
    }
}

TEST(Engine, BlowupRejectsForeignTiles) {
  ProductInstance inst = block_instance(1, 1, 1, 0);
  inst.family["T"] = 0b011;
  ProductEngine eng(inst);
  PartitionCertificate c = eng.onecorner(1, 0);
  c.members.push_back({"T", 0b011});
  c.tiles.front().member = static_cast<std::uint32_t>(c.members.size() - 1);
  EXPECT_THROW(eng.blowup(c), InvalidArgument);
  ProductInstance other = block_instance(1, 1, 1, 1);
  EXPECT_THROW(ProductEngine(other).blowup(eng.onecorner(1, 0)), InvalidArgument);
}

TEST(Engine, MultipleChangesSmallSweep) {
  ProductInstance inst = block_instance(1, 1, 1, 0);
  ProductEngine eng(inst);
  int checked = 0;
  for (int k = 0; k <= 3; ++k)
    for (int l = 0; k + l <= 4; ++l)
      for (const auto& [I, J] : oracle::index_pairs(k, l)) {
        auto c = eng.multiplechanges(k, l, I, J);
        expect_valid(c, inst, oracle::multiplechanges_cells(inst, k, l, I, J));
        EXPECT_TRUE(only_ab_tiles(c));
        ++checked;
      }
  EXPECT_GT(checked, 50);
}

TEST(Engine, MultipleChangesArguments) {
  ProductEngine eng(block_instance(1, 1, 1, 0));
  EXPECT_THROW(eng.multiplechanges(2, 2, {0, 1}, {3}), InvalidArgument);
  EXPECT_THROW(eng.multiplechanges(2, 2, {3}, {3}), InvalidArgument);
  EXPECT_THROW(eng.multiplechanges(2, 2, {0}, {2}), InvalidArgument);
  EXPECT_THROW(eng.multiplechanges(2, 2, {0, 0}, {3, 4}), InvalidArgument);
  EXPECT_THROW(eng.multiplechanges(-1, 2, {}, {}), InvalidArgument);
}

TEST(Engine, DegenerateCornersAreAbsent) {
  // A contains B (Ac empty) or B contains A (Bc empty).
  for (auto [ab, ac, bc] : std::vector<std::array<int, 3>>{{2, 0, 1}, {1, 2, 0}, {2, 0, 0}}) {
    ProductInstance inst = block_instance(ab, ac, bc, 1);
    ProductEngine eng(inst);
    for (int k = 1; k <= 3; ++k)
      for (int i = 0; i <= k; ++i) expect_valid(eng.onecorner(k, i), inst, oracle::onecorner_cells(inst, k, i));
    expect_valid(eng.multiplechanges(1, 2, {1}, {2}), inst, oracle::multiplechanges_cells(inst, 1, 2, {1}, {2}));
  }
}

TEST(Engine, FillInTilesOnlyWithFamilyAndA) {
  ProductInstance inst = block_instance(1, 1, 1, 1);
  inst.family["P"] = 0b0011;
  inst.family["Q"] = 0b1100;
  ProductEngine eng(inst);
  std::vector<std::vector<std::string>> lists{{}, {"P"}, {"S"}, {"P", "Q"}, {"Q", "Q", "P"}, {"S", "P", "S"}};
  for (const auto& members : lists) {
    auto c = eng.fillin(members);
    expect_valid(c, inst, oracle::fillin_cells(inst, members));
    for (const auto& t : c.tiles) EXPECT_NE(c.members[t.member].id, "B");
  }
  EXPECT_THROW(eng.fillin({"nope"}), InvalidArgument);
}

TEST(Engine, FillInRegionSizeMatchesFormula) {
  // |S| |U|^t - sum |Q_i|; the Q_i are disjoint since Ac and Bc are.
  ProductInstance inst = block_instance(1, 2, 1, 1);
  inst.family["P"] = 0b00110;
  ProductEngine eng(inst);
  std::vector<std::string> members{"P", "S", "P"};
  auto c = eng.fillin(members);
  const std::uint64_t s = 5, u = 4, ac = 2, bc = 1;
  std::uint64_t q0 = s * ac * ac * ac;
  std::uint64_t qi = bc * ac * ac;
  std::uint64_t expected = s * u * u * u - q0 - (2 + 5 + 2) * qi;
  EXPECT_EQ(c.region.cell_count(), expected);
}

TEST(Engine, ManyChoicesDimension) {
  ProductInstance inst = pentagon();
  inst.a = 0b00011;
  inst.b = 0b00110;
  ProductEngine eng(inst);
  // l = smallest integer >= k + (k - 1) m / r with m = 5, r = 2.
  for (int k = 1; k <= 6; ++k) {
    int expected = k;
    while (2 * (expected - k) < (k - 1) * 5) ++expected;
    EXPECT_EQ(eng.manychoices_dimension(k), expected);
  }
  EXPECT_THROW(eng.manychoices_dimension(0), InvalidArgument);
}

TEST(Engine, ManyChoicesOnPentagon) {
  ProductInstance inst = pentagon();
  inst.a = 0b00011;
  inst.b = 0b00110;
  ProductEngine eng(inst);
  const int k = 3;
  const int l = eng.manychoices_dimension(k);
  ASSERT_EQ(l, 8);
  std::vector<std::vector<int>> choices{{1}, {8}, {4}, {1, 2, 3}, {2, 5, 8}, {8, 1, 6}};
  for (const auto& J : choices) {
    auto c = eng.manychoices(k, J);
    expect_valid(c, inst, oracle::manychoices_cells(inst, l, J));
  }
  EXPECT_THROW(eng.manychoices(k, {1, 2}), InvalidArgument);     // |J| = 2 is not 1 mod 2
  EXPECT_THROW(eng.manychoices(1, {1, 2, 3}), InvalidArgument);  // |J| > k
  EXPECT_THROW(eng.manychoices(k, {9}), InvalidArgument);
  EXPECT_THROW(eng.manychoices(k, {}), InvalidArgument);
}

TEST(Engine, RandomizedModifyAndManyChoices) {
  std::mt19937_64 rng(2024);
  int done = 0;
  for (int trial = 0; trial < 200; ++trial) {
    ProductInstance inst = oracle::random_instance(rng, 5, 4);
    ProductEngine eng(inst);
    // modify on a multiplechanges output, at a random admissible index.
    int k = static_cast<int>(rng() % 3), l = 1 + static_cast<int>(rng() % 2);
    auto pairs = oracle::index_pairs(k, l);
    auto [I, J] = pairs[rng() % pairs.size()];
    auto base = eng.multiplechanges(k, l, I, J);
    int i = static_cast<int>(rng() % static_cast<std::uint64_t>(k + l + 1));
    if (base.region.intersects(eng.corner_box(i, k + l))) {
      EXPECT_THROW(eng.modify(base, i), InvalidArgument);
    } else {
      expect_valid(eng.modify(base, i), inst, oracle::modify_cells(inst, base, i));
      ++done;
    }
    // manychoices with a random admissible J.
    const int r = inst.r_witness->r;
    const int kb = 1 + static_cast<int>(rng() % 3);
    const int lm = eng.manychoices_dimension(kb);
    std::vector<int> all(static_cast<std::size_t>(lm));
    std::iota(all.begin(), all.end(), 1);
    std::shuffle(all.begin(), all.end(), rng);
    int t = 1 + r * static_cast<int>(rng() % 2);
    if (t > kb) t = 1;
    std::vector<int> Jm(all.begin(), all.begin() + t);
    std::uint64_t cells = static_cast<std::uint64_t>(inst.ground.size());
    for (int d = 0; d < lm; ++d) cells *= static_cast<std::uint64_t>(std::popcount(inst.u()));
    if (cells > 200000) continue;
    expect_valid(eng.manychoices(kb, Jm), inst, oracle::manychoices_cells(inst, lm, Jm));
    ++done;
  }
  EXPECT_GT(done, 150);
}

TEST(Engine, MainOnSmallInstance) {
  ProductInstance inst = io::load_instance(io::read_file(fixture("small.json")));
  ProductEngine eng(inst);
  auto res = eng.main();
  EXPECT_EQ(res.n, 1);
  EXPECT_EQ(res.certificate.region.cell_count(), 27u);
  EXPECT_EQ(eng.main_cells(), 27u);
  std::set<std::vector<int>> all;
  for (auto& t : tuples({0b111, 0b111, 0b111})) all.insert(t);
  expect_valid(res.certificate, inst, all);
}

TEST(Engine, MainOnSearchedInstances) {
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    InstanceSearch search;
    search.max_cells = 100000;
    auto inst = find_instance(seed, search);
    ASSERT_TRUE(inst.has_value()) << "seed " << seed;
    ProductEngine eng(*inst);
    auto res = eng.main();
    const std::uint64_t s = inst->ground.size();
    std::uint64_t cells = s * s;
    for (int i = 0; i < res.n; ++i) cells *= static_cast<std::uint64_t>(std::popcount(inst->u()));
    EXPECT_EQ(res.certificate.region.cell_count(), cells);
    auto rep = verify_certificate(res.certificate, &*inst);
    EXPECT_TRUE(rep.ok) << (rep.violations.empty() ? "" : rep.violations.front());
    EXPECT_EQ(rep.covered_cells, cells);
  }
}

TEST(Engine, Deterministic) {
  InstanceSearch search;
  search.max_cells = 50000;
  auto inst = find_instance(4, search);
  ASSERT_TRUE(inst.has_value());
  auto a = io::save_certificate(ProductEngine(*inst).main().certificate);
  auto b = io::save_certificate(ProductEngine(*inst).main().certificate);
  EXPECT_EQ(a, b);
  auto again = find_instance(4, search);
  EXPECT_EQ(io::save_instance(*inst), io::save_instance(*again));
}

TEST(BuildBigger, CombinesSpecialAndOrdinaryTiles) {
  // S = {0,1,2}; F1 = {0}, F2 = {1,2}, F3 = {2}.
  ProductInstance q;
  q.ground = {"0", "1", "2"};
  q.family = {{"F1", 0b001}, {"F2", 0b110}, {"F3", 0b100}};
  q.a = 0b001;
  q.b = 0b010;
  q.r_witness = RWitness{1, {"F1", "F2"}};
  q.mod_witness = ModWitness{{"F1", "F2"}};
  auto cQ = ProductEngine(q).main().certificate;  // S^2 x {0,1}^n
  const int qdim = cQ.dimension - 2;

  // cP: S^2 with rows split into "A" = {0,1} and F3 = {2}.
  PartitionCertificate cP;
  cP.ground = q.ground;
  cP.members = {{"A", 0b011}, {"F3", 0b100}};
  cP.dimension = 2;
  cP.region = Region::of(Box{{0b111, 0b111}});
  for (int y = 0; y < 3; ++y) {
    cP.tiles.push_back(Tile{0, 0, {0, y}});
    cP.tiles.push_back(Tile{1, 0, {0, y}});
  }
  ASSERT_TRUE(verify_certificate(cP).ok);

  auto big = buildbigger(cP, cQ);
  EXPECT_EQ(big.dimension, 2 * qdim + 2);
  std::uint64_t cells = 1;
  for (int i = 0; i < big.dimension; ++i) cells *= 3;
  auto rep = verify_certificate(big);
  EXPECT_TRUE(rep.ok) << (rep.violations.empty() ? "" : rep.violations.front());
  EXPECT_EQ(rep.covered_cells, cells);
  EXPECT_FALSE(big.member_index("A") && big.members[*big.member_index("A")].set == 0b011);

  // cQ over the wrong A.
  auto wrong = cP;
  wrong.members[0].set = 0b101;
  wrong.members[1].set = 0b010;
  EXPECT_THROW(buildbigger(wrong, cQ), InvalidArgument);
  // cP that is not a cover of S^p.
  auto partial = cP;
  partial.tiles.pop_back();
  EXPECT_THROW(buildbigger(partial, cQ), InvalidArgument);
}

TEST(General, TrivialCoverGivesDimensionOne) {
  ProductInstance inst = io::load_instance(io::read_file(fixture("small.json")));
  EXPECT_EQ(general_cover(inst), (std::vector<std::string>{"S"}));
  auto res = partition_general(inst, GeneralMode::Full);
  EXPECT_EQ(res.dimension(), 1);
  ASSERT_TRUE(res.certificate.has_value());
  EXPECT_FALSE(res.plan_only);
  EXPECT_TRUE(verify_certificate(*res.certificate, &inst).ok);
}

TEST(General, CoverSizeTwoExpandsAndVerifies) {
  InstanceSearch search;
  search.cover_size = 2;
  auto inst = find_instance(5, search);
  ASSERT_TRUE(inst.has_value());
  auto res = partition_general(*inst, GeneralMode::Auto);
  ASSERT_EQ(res.cover.size(), 2u);
  ASSERT_EQ(res.p.size(), 2u);
  EXPECT_EQ(res.p[1], 1);
  EXPECT_EQ(res.p[0], res.q + 2);
  ASSERT_TRUE(res.certificate.has_value());
  auto rep = verify_certificate(*res.certificate, &*inst);
  EXPECT_TRUE(rep.ok) << (rep.violations.empty() ? "" : rep.violations.front());
  // Only members of F survive in the final certificate.
  for (const auto& t : res.certificate->tiles) EXPECT_TRUE(inst->family.count(res.certificate->members[t.member].id));
  for (const auto& st : res.stages) EXPECT_TRUE(verify_certificate(st.main_certificate, &st.instance).ok);
}

TEST(General, PlanOnlyForLongCovers) {
  InstanceSearch search;
  search.cover_size = 3;
  search.r_min = 1;
  search.forbid_exact_partition = false;
  search.max_union = 4;
  search.ground_max = 5;
  auto inst = find_instance(1, search);
  ASSERT_TRUE(inst.has_value());
  auto res = partition_general(*inst, GeneralMode::Auto);
  EXPECT_TRUE(res.plan_only);
  EXPECT_FALSE(res.certificate.has_value());
  ASSERT_EQ(res.stages.size(), 2u);
  for (std::size_t i = 0; i + 1 < res.p.size(); ++i) EXPECT_EQ(res.p[i], res.p[i + 1] * res.q + 2);
  for (const auto& st : res.stages) {
    auto rep = verify_certificate(st.main_certificate, &st.instance);
    EXPECT_TRUE(rep.ok) << "stage " << st.index;
  }
  EXPECT_THROW(partition_general(*inst, GeneralMode::Full), BudgetExceeded);
  auto plan = partition_general(*inst, GeneralMode::Plan);
  EXPECT_TRUE(plan.plan_only);
  EXPECT_EQ(plan.p, res.p);
}

TEST(General, ModeParsing) {
  EXPECT_EQ(parse_general_mode("plan"), GeneralMode::Plan);
  EXPECT_EQ(to_string(GeneralMode::Full), "full");
  EXPECT_THROW(parse_general_mode("fast"), InvalidArgument);
}
