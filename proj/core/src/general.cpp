#include "boolpart/general.hpp"

#include <algorithm>
#include <bit>

#include "boolpart/engine.hpp"

namespace boolpart {

GeneralMode parse_general_mode(const std::string& text) {
  if (text == "full") return GeneralMode::Full;
  if (text == "plan") return GeneralMode::Plan;
  if (text == "auto") return GeneralMode::Auto;
  throw InvalidArgument("unknown mode '" + text + "' (expected full, plan or auto)");
}

std::string to_string(GeneralMode mode) {
  switch (mode) {
    case GeneralMode::Full: return "full";
    case GeneralMode::Plan: return "plan";
    case GeneralMode::Auto: return "auto";
  }
  return "?";
}

std::vector<std::string> general_cover(const ProductInstance& inst) {
  if (!inst.r_witness) throw InvalidArgument("instance has no r-partition witness");
  std::vector<std::string> support;
  for (const auto& id : inst.r_witness->members)
    if (std::find(support.begin(), support.end(), id) == support.end()) support.push_back(id);
  const ElementSet all = inst.everything();
  ElementSet covered = 0;
  std::vector<std::string> cover;
  while (covered != all) {
    int best_gain = 0;
    const std::string* best = nullptr;
    for (const auto& id : support) {
      int gain = std::popcount(inst.member(id) & ~covered);
      if (gain > best_gain) {
        best_gain = gain;
        best = &id;
      }
    }
    if (!best) throw InvalidArgument("r-partition witness does not cover the ground set");
    covered |= inst.member(*best);
    cover.push_back(*best);
  }
  return cover;
}

GeneralResult partition_general(const ProductInstance& inst, GeneralMode mode, const Limits& limits) {
  inst.validate_witnesses();
  GeneralResult result;
  result.cover = general_cover(inst);
  const int k = static_cast<int>(result.cover.size());
  std::vector<ElementSet> prefix(static_cast<std::size_t>(k));
  ElementSet acc = 0;
  for (int i = 0; i < k; ++i) prefix[static_cast<std::size_t>(i)] = acc |= inst.member(result.cover[static_cast<std::size_t>(i)]);

  result.p.assign(static_cast<std::size_t>(k), mpz_class(1));
  if (k >= 2) {
    ProductEngine probe(inst, limits);
    result.q = probe.manychoices_dimension(static_cast<int>(inst.mod_witness->members.size()));
  }
  for (int i = k - 1; i >= 1; --i)
    result.p[static_cast<std::size_t>(i - 1)] = result.p[static_cast<std::size_t>(i)] * result.q + 2;

  // Per-stage main certificates, i = k-1 down to 1.
  for (int i = k - 1; i >= 1; --i) {
    GeneralStage stage;
    stage.index = i;
    stage.instance = inst;
    stage.instance.a = prefix[static_cast<std::size_t>(i - 1)];
    stage.instance.b = inst.member(result.cover[static_cast<std::size_t>(i)]);
    stage.p = result.p[static_cast<std::size_t>(i - 1)];
    ProductEngine engine(stage.instance, limits);
    stage.main_certificate = engine.main().certificate;
    result.stages.push_back(std::move(stage));
  }

  const std::size_t s = inst.ground_size();
  mpz_class final_cells;
  bool fits = result.p.front() <= 64;
  if (fits) {
    mpz_ui_pow_ui(final_cells.get_mpz_t(), s, result.p.front().get_ui());
    fits = final_cells <= mpz_class(std::to_string(limits.max_cells));
  }
  if (mode == GeneralMode::Plan || (mode == GeneralMode::Auto && !fits)) {
    result.plan_only = true;
    return result;
  }
  if (!fits)
    throw BudgetExceeded("S^" + result.p.front().get_str() + " exceeds the cell budget of " +
                         std::to_string(limits.max_cells));

  // S^{p_k} = S is one copy of A_k = S.
  PartitionCertificate current;
  current.ground = inst.ground;
  current.dimension = 1;
  for (const auto& [id, set] : inst.family) current.members.push_back({id, set});
  current.members.push_back({"A", inst.everything()});
  current.region = Region::of(Box{{inst.everything()}});
  current.tiles.push_back({static_cast<std::uint32_t>(current.members.size() - 1), 0, {0}});
  current = relabel(std::move(current), {});

  for (const auto& stage : result.stages) {
    const std::string& b_id = result.cover[static_cast<std::size_t>(stage.index)];
    PartitionCertificate cQ = relabel(stage.main_certificate, {{"B", Member{b_id, stage.instance.b}}});
    current = buildbigger(current, cQ, limits);
  }
  const std::string& b1 = result.cover.front();
  current = relabel(std::move(current), {{"A", Member{b1, inst.member(b1)}}});
  result.certificate = std::move(current);
  return result;
}

}  // namespace boolpart
