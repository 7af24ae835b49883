#ifndef ZEROONE_ERROR_HPP
#define ZEROONE_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace zeroone {

/// Failure categories. The CLI maps them onto exit codes: syntax and usage
/// problems are 1, validation failures 2 and exhausted work budgets 3.
enum class ErrorKind {
  Usage,
  Parse,
  Vocab,
  NotRectifiable,
  UnboundVariable,
  NotModelDefining,
  MissingAtom,
  OutOfCarrier,
  DuplicateElements,
  ShapeMismatch,
  InfiniteCarrier,
  UnsupportedKind,
  UnsupportedOrder,
  NotAbsorptive,
  NotALattice,
  UnhousedIndeterminate,
  HasIndeterminates,
  NotASentence,
  NotIrreducible,
  UnsupportedDistribution,
  BadDistribution,
  Unclassifiable,
  ResourceLimit,
  Io,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace zeroone

#endif  // ZEROONE_ERROR_HPP
