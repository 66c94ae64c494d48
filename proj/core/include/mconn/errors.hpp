#pragma once

#include <stdexcept>
#include <string>

namespace mconn {

/// Base class for all errors raised by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A subset references an element index at or beyond the ground-set size.
class OutOfRange : public Error {
 public:
  using Error::Error;
};

/// Two sets that must be disjoint (Q/R, S/T, deleted/contracted) intersect.
class OverlappingSets : public Error {
 public:
  using Error::Error;
};

/// The element to classify lies inside Q or R.
class ElementInPair : public Error {
 public:
  using Error::Error;
};

/// A candidate element passed to the intertwining checks is not free.
class ElementNotFree : public Error {
 public:
  using Error::Error;
};

/// A nested-sequence build was asked to place a flexible element.
class FlexibleElement : public Error {
 public:
  using Error::Error;
};

/// Backtracking exhausted all candidates for a certificate that must exist.
class CertificateNotFound : public Error {
 public:
  using Error::Error;
};

/// The greedy linking-pair shrink found no removable element although a side
/// still exceeds the target size. Signals an implementation bug.
class ShrinkStuck : public Error {
 public:
  using Error::Error;
};

/// A grid instance was built whose computed connectivities differ from the
/// values its construction promises.
class KappaMismatch : public Error {
 public:
  using Error::Error;
};

/// Ground set larger than the supported element cap.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

/// A search exceeded its per-instance time budget.
class BudgetExhausted : public Error {
 public:
  using Error::Error;
};

/// Text input could not be parsed or validated; carries a 1-based line number
/// (0 when no specific line applies).
class ParseError : public Error {
 public:
  ParseError(int line, const std::string& message)
      : Error(message), line_(line) {}

  int line() const noexcept { return line_; }

 private:
  int line_;
};

}  // namespace mconn
