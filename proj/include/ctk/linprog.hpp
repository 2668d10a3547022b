#pragma once

#include <iosfwd>
#include <vector>

#include "ctk/errors.hpp"

namespace ctk::lp {

/// minimize objective . x  subject to  matrix x = rhs, x >= 0.
///
/// Equality form only; callers encode inequalities with explicit slack
/// variables. All entries must be finite.
struct LinearProgram {
  std::vector<double> objective;            // length n
  std::vector<std::vector<double>> matrix;  // m rows of length n
  std::vector<double> rhs;                  // length m
};

enum class Status { Optimal, Infeasible, Unbounded };

struct Solution {
  Status status = Status::Infeasible;
  std::vector<double> x;       // length n when Optimal
  double objective_value = 0.0;
  std::vector<double> duals;   // simplex multipliers, length m when Optimal
  int iterations = 0;          // total pivots across both phases
  double residual_inf = 0.0;   // ||matrix x - rhs||inf of the returned x
};

struct Options {
  bool trace = false;           // dump the tableau after every pivot
  std::ostream* trace_out = nullptr;  // defaults to std::cerr when trace set
};

/// Two-phase primal simplex with Bland's anti-cycling rule (lowest-index
/// entering column; ties in the ratio test broken by lowest basic index).
/// Identical inputs produce identical pivot sequences and outputs.
///
/// Throws DimensionMismatch on shape errors and NumericalBreakdown when a
/// pivot below 1e-11 in magnitude cannot be avoided or a returned solution
/// would violate its residual contract (||Ax-b||inf <= 1e-8, x >= -1e-12).
Solution solve(const LinearProgram& lp, const Options& options = {});

/// Phase-1-only entry point: decides whether {matrix x = rhs, x >= 0} has a
/// solution. Returns Status::Optimal with a basic feasible witness, or
/// Status::Infeasible.
Solution feasibility(const std::vector<std::vector<double>>& matrix,
                     const std::vector<double>& rhs, const Options& options = {});

}  // namespace ctk::lp
