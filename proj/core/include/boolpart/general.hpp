#pragma once

#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "boolpart/product.hpp"

namespace boolpart {

enum class GeneralMode {
  Full,  // expand the final certificate or throw BudgetExceeded
  Plan,  // stop after the per-stage certificates
  Auto,  // expand when |S|^{p_1} fits the cell budget, otherwise plan
};

GeneralMode parse_general_mode(const std::string& text);
std::string to_string(GeneralMode mode);

/// One step of the reverse induction: partition of S^2 x A_{i+1}^q into
/// members of F u {A_i, B_{i+1}}, with "A" = A_i and "B" = B_{i+1}.
struct GeneralStage {
  int index = 0;  // i, 1-based
  ProductInstance instance;
  mpz_class p;  // p_i = p_{i+1} q + 2
  PartitionCertificate main_certificate;
};

struct GeneralResult {
  std::vector<std::string> cover;  // B_1..B_k
  int q = 0;
  std::vector<mpz_class> p;  // p_1..p_k
  std::vector<GeneralStage> stages;
  std::optional<PartitionCertificate> certificate;  // S^{p_1} over F
  bool plan_only = false;

  const mpz_class& dimension() const { return p.front(); }
};

/// Greedy cover of S by members of the r-partition witness: repeatedly take
/// the member adding the most uncovered elements, ties by witness order.
std::vector<std::string> general_cover(const ProductInstance& inst);

GeneralResult partition_general(const ProductInstance& inst, GeneralMode mode, const Limits& limits = {});

}  // namespace boolpart
