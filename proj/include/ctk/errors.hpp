#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ctk {

/// Base class for all toolkit errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Pairwise statistics describe no valid two-variable joint (a cell < -1e-9).
struct InvalidStats : Error {
  using Error::Error;
};

/// A probability vector failed validation (size, negativity, normalization).
struct InvalidDistribution : Error {
  using Error::Error;
};

struct EmptyKeepSet : Error {
  using Error::Error;
};

/// A required measurement context has no records.
struct MissingContext : Error {
  MissingContext(int i, int j)
      : Error("missing context C" + std::to_string(i) + std::to_string(j)),
        context_i(i),
        context_j(j) {}
  int context_i;
  int context_j;
};

/// A click record failed validation; `line` is 1-based in the source file
/// (the CSV header is line 1).
struct MalformedRecord : Error {
  MalformedRecord(std::size_t line_no, const std::string& what_arg)
      : Error("line " + std::to_string(line_no) + ": " + what_arg), line(line_no) {}
  std::size_t line;
};

struct InsufficientData : Error {
  using Error::Error;
};

struct DimensionMismatch : Error {
  using Error::Error;
};

/// The simplex could not continue without pivoting on an element smaller
/// than the pivot tolerance, or a returned solution violates its residual
/// contract.
struct NumericalBreakdown : Error {
  using Error::Error;
};

/// The JPD feasibility oracle refuses marginally inconsistent input.
struct SignalingInput : Error {
  using Error::Error;
};

struct EvenNegativeSigns : Error {
  using Error::Error;
};

struct CrossCommutationViolated : Error {
  using Error::Error;
};

struct NotCommuting : Error {
  using Error::Error;
};

struct NonHermitian : Error {
  using Error::Error;
};

}  // namespace ctk
