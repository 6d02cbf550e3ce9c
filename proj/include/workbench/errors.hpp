#pragma once

#include <stdexcept>
#include <string>

namespace wb {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A cover family contains the empty set or the whole space.
struct TrivialCover : Error {
  using Error::Error;
};

// cofinality() precondition: some member of B has no superset in A.
struct NotCofinal : Error {
  using Error::Error;
};

// A strategy was queried on a history it has no decision for.
struct MalformedStrategy : Error {
  using Error::Error;
};

// An exhaustive search would exceed the configured node budget.
struct BudgetExceeded : Error {
  long long nodes;
  explicit BudgetExceeded(long long n)
      : Error("node budget exceeded: " + std::to_string(n) + " nodes required"), nodes(n) {}
};

struct NotUsco : Error {
  using Error::Error;
};

struct DomainMismatch : Error {
  using Error::Error;
};

// cusco_agree_patch chain a <= v <= cl(v) <= u violated.
struct ChainViolation : Error {
  using Error::Error;
};

struct UnregisteredUniverse : Error {
  using Error::Error;
};

struct TransferUnsound : Error {
  using Error::Error;
};

struct ParseError : Error {
  std::string where;
  ParseError(std::string at, const std::string& what)
      : Error(at + ": " + what), where(std::move(at)) {}
};

struct ValidationError : Error {
  using Error::Error;
};

}  // namespace wb
