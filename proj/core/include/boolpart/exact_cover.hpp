#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace boolpart {

/// Universe 0..universe_size-1; every candidate is a set of universe indices.
struct CoverProblem {
  std::size_t universe_size = 0;
  std::vector<std::vector<std::size_t>> candidates;
};

enum class CoverMode { First, Count, All };
enum class CoverStatus { Solved, Unsat, BudgetExceeded };

const char* to_string(CoverStatus status);
CoverMode parse_cover_mode(const std::string& text);

struct CoverResult {
  CoverStatus status = CoverStatus::Unsat;
  /// Candidate indices of each solution, ascending. Empty in Count mode.
  std::vector<std::vector<std::size_t>> solutions;
  std::uint64_t count = 0;
  std::uint64_t nodes = 0;
};

/// Dancing-links Algorithm X. Column choice: fewest candidates, ties by
/// universe order; rows tried in candidate order. Exceeding `max_nodes`
/// search nodes yields BudgetExceeded, never Unsat.
CoverResult exact_cover_solve(const CoverProblem& problem, CoverMode mode, std::uint64_t max_nodes);

}  // namespace boolpart
