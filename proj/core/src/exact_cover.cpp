#include "boolpart/exact_cover.hpp"

#include <algorithm>

#include "boolpart/error.hpp"

namespace boolpart {

const char* to_string(CoverStatus status) {
  switch (status) {
    case CoverStatus::Solved: return "solved";
    case CoverStatus::Unsat: return "unsat";
    case CoverStatus::BudgetExceeded: return "budget-exceeded";
  }
  return "?";
}

CoverMode parse_cover_mode(const std::string& text) {
  if (text == "first") return CoverMode::First;
  if (text == "count") return CoverMode::Count;
  if (text == "all") return CoverMode::All;
  throw InvalidArgument("unknown cover mode '" + text + "' (expected first, count or all)");
}

namespace {

// Node 0 is the root; nodes 1..columns are column headers.
class Dlx {
 public:
  Dlx(const CoverProblem& p, CoverMode mode, std::uint64_t max_nodes)
      : columns_(p.universe_size), mode_(mode), max_nodes_(max_nodes) {
    const std::size_t headers = columns_ + 1;
    left_.resize(headers);
    right_.resize(headers);
    up_.resize(headers);
    down_.resize(headers);
    col_.resize(headers);
    row_.resize(headers, 0);
    size_.assign(headers, 0);
    for (std::size_t i = 0; i < headers; ++i) {
      left_[i] = (i + headers - 1) % headers;
      right_[i] = (i + 1) % headers;
      up_[i] = down_[i] = i;
      col_[i] = i;
    }
    for (std::size_t r = 0; r < p.candidates.size(); ++r) {
      std::vector<std::size_t> cells = p.candidates[r];
      std::sort(cells.begin(), cells.end());
      if (cells.empty()) throw InvalidArgument("candidate #" + std::to_string(r) + " is empty");
      if (std::adjacent_find(cells.begin(), cells.end()) != cells.end())
        throw InvalidArgument("candidate #" + std::to_string(r) + " repeats an element");
      if (cells.back() >= columns_) throw InvalidArgument("candidate #" + std::to_string(r) + " leaves the universe");
      std::size_t first = 0;
      for (std::size_t c : cells) {
        const std::size_t h = c + 1;
        const std::size_t node = left_.size();
        left_.push_back(node);
        right_.push_back(node);
        up_.push_back(up_[h]);
        down_.push_back(h);
        col_.push_back(h);
        row_.push_back(r);
        down_[up_[h]] = node;
        up_[h] = node;
        ++size_[h];
        if (first == 0) {
          first = node;
        } else {
          left_[node] = left_[first];
          right_[node] = first;
          right_[left_[first]] = node;
          left_[first] = node;
        }
      }
    }
  }

  CoverResult run() {
    search();
    if (result_.status != CoverStatus::BudgetExceeded)
      result_.status = result_.count > 0 ? CoverStatus::Solved : CoverStatus::Unsat;
    return result_;
  }

 private:
  void cover(std::size_t c) {
    right_[left_[c]] = right_[c];
    left_[right_[c]] = left_[c];
    for (std::size_t i = down_[c]; i != c; i = down_[i])
      for (std::size_t j = right_[i]; j != i; j = right_[j]) {
        down_[up_[j]] = down_[j];
        up_[down_[j]] = up_[j];
        --size_[col_[j]];
      }
  }

  void uncover(std::size_t c) {
    for (std::size_t i = up_[c]; i != c; i = up_[i])
      for (std::size_t j = left_[i]; j != i; j = left_[j]) {
        ++size_[col_[j]];
        down_[up_[j]] = j;
        up_[down_[j]] = j;
      }
    right_[left_[c]] = c;
    left_[right_[c]] = c;
  }

  // Returns true to stop the search.
  bool search() {
    if (++result_.nodes > max_nodes_) {
      result_.status = CoverStatus::BudgetExceeded;
      return true;
    }
    if (right_[0] == 0) {
      ++result_.count;
      if (mode_ != CoverMode::Count) {
        std::vector<std::size_t> sol = partial_;
        std::sort(sol.begin(), sol.end());
        result_.solutions.push_back(std::move(sol));
      }
      return mode_ == CoverMode::First;
    }
    std::size_t best = right_[0];
    for (std::size_t c = right_[best]; c != 0; c = right_[c])
      if (size_[c] < size_[best]) best = c;
    if (size_[best] == 0) return false;
    cover(best);
    for (std::size_t r = down_[best]; r != best; r = down_[r]) {
      partial_.push_back(row_[r]);
      for (std::size_t j = right_[r]; j != r; j = right_[j]) cover(col_[j]);
      bool stop = search();
      for (std::size_t j = left_[r]; j != r; j = left_[j]) uncover(col_[j]);
      partial_.pop_back();
      if (stop) {
        uncover(best);
        return true;
      }
    }
    uncover(best);
    return false;
  }

  std::size_t columns_;
  CoverMode mode_;
  std::uint64_t max_nodes_;
  std::vector<std::size_t> left_, right_, up_, down_, col_, row_, size_;
  std::vector<std::size_t> partial_;
  CoverResult result_;
};

}  // namespace

CoverResult exact_cover_solve(const CoverProblem& problem, CoverMode mode, std::uint64_t max_nodes) {
  return Dlx(problem, mode, max_nodes).run();
}

}  // namespace boolpart
