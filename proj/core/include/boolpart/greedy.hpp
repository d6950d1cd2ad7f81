#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include <gmpxx.h>

#include "boolpart/weights.hpp"

namespace boolpart {

/// State of the integer-scaled working function at the start of one batched
/// phase of greedy_t_subset_weights.
struct GreedyPhase {
  std::vector<mpz_class> values;      // working function, scaled to integers
  mpz_class level;                    // N, with sum(values) == N * t
  std::vector<std::size_t> chosen;    // the t-set A, sorted
  mpz_class step;                     // how many unit steps this phase covers
};

using GreedyObserver = std::function<void(const GreedyPhase&)>;

/// Weight function on t-element subsets of {0..|f|-1} whose multiplicities
/// equal f exactly. Requires t * max f <= sum f and nonnegative f.
///
/// Scales f to integers with sum divisible by t, then repeatedly picks
/// A = T padded with the largest remaining values (T = values equal to N,
/// ties by smallest index) and decrements A by the largest step that keeps
/// every value nonnegative and max <= N.
WeightFunction greedy_t_subset_weights(std::span<const mpq_class> f, std::size_t t,
                                       const GreedyObserver& observer = {});

/// Sorts `levels` and deals position i, i+d, i+2d, ... to output i.
/// Each output is d-scattered. Throws if d does not divide |levels|.
std::vector<std::vector<int>> split_scattered(std::span<const int> levels, int d);

}  // namespace boolpart
