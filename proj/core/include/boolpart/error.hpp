#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace boolpart {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A documented precondition of an operation does not hold.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A configured search, dimension or cell-count cap was hit. Never a claim
/// that no solution exists.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

/// Malformed artifact text. `where()` names the line or field at fault.
class ParseError : public Error {
 public:
  ParseError(const std::string& where, const std::string& what)
      : Error(where.empty() ? what : where + ": " + what), where_(where) {}
  const std::string& where() const noexcept { return where_; }

 private:
  std::string where_;
};

/// An artifact refers to an id that it does not define.
class ReferenceError : public ParseError {
 public:
  using ParseError::ParseError;
};

/// Caps applied by searches and constructions. Exceeding any of them raises
/// BudgetExceeded rather than truncating.
struct Limits {
  int max_base_dimension = 12;         // find_base_embedding
  int max_enumeration_dimension = 24;  // enumerate_copies, lattice verification
  int max_weak_dimension = 62;         // build_r_certificate
  std::uint64_t max_cells = 10'000'000;
  std::uint64_t max_nodes = 50'000'000;
};

}  // namespace boolpart
