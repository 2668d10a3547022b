#include "ctk/linprog.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <string>

namespace ctk::lp {

namespace {

constexpr double kReducedCostTol = 1e-9;  // entering-column threshold
constexpr double kPivotTol = 1e-11;       // smallest acceptable pivot magnitude
constexpr double kPhase1FeasTol = 1e-9;   // artificial objective at feasibility
constexpr double kResidualTol = 1e-8;
constexpr int kPivotCap = 200000;

void validate(const LinearProgram& lp) {
  std::size_t m = lp.matrix.size();
  std::size_t n = lp.objective.size();
  if (m < 1 || n < 1) throw DimensionMismatch("LP needs m >= 1 and n >= 1");
  if (lp.rhs.size() != m) throw DimensionMismatch("rhs length != row count");
  for (const auto& row : lp.matrix)
    if (row.size() != n) throw DimensionMismatch("matrix row length != objective length");
  for (double v : lp.objective)
    if (!std::isfinite(v)) throw Error("non-finite objective entry");
  for (double v : lp.rhs)
    if (!std::isfinite(v)) throw Error("non-finite rhs entry");
  for (const auto& row : lp.matrix)
    for (double v : row)
      if (!std::isfinite(v)) throw Error("non-finite matrix entry");
}

/// Dense tableau: one row per active constraint plus a cost row. Columns are
/// the n structural variables, then m artificials, then the rhs. Rows whose
/// rhs was negative are sign-flipped on entry so the artificial basis is
/// feasible; `flip_` remembers the factor for dual recovery.
class Tableau {
 public:
  Tableau(const LinearProgram& lp, const Options& options)
      : lp_(lp),
        options_(options),
        n_(static_cast<int>(lp.objective.size())),
        m_(static_cast<int>(lp.matrix.size())) {
    int cols = n_ + m_ + 1;
    rows_.assign(static_cast<std::size_t>(m_), std::vector<double>(static_cast<std::size_t>(cols), 0.0));
    cost_.assign(static_cast<std::size_t>(cols), 0.0);
    basis_.resize(static_cast<std::size_t>(m_));
    origin_.resize(static_cast<std::size_t>(m_));
    flip_.resize(static_cast<std::size_t>(m_));
    for (int i = 0; i < m_; ++i) {
      std::size_t si = static_cast<std::size_t>(i);
      double flip = lp.rhs[si] < 0.0 ? -1.0 : 1.0;
      for (int j = 0; j < n_; ++j)
        rows_[si][static_cast<std::size_t>(j)] = flip * lp.matrix[si][static_cast<std::size_t>(j)];
      rows_[si][static_cast<std::size_t>(n_ + i)] = 1.0;
      rows_[si][rhs_col()] = flip * lp.rhs[si];
      basis_[si] = n_ + i;
      origin_[si] = i;
      flip_[si] = flip;
    }
  }

  /// Runs phase 1 (minimize the artificial sum). Returns true when feasible;
  /// on success redundant rows are dropped and artificials leave the basis.
  bool phase1() {
    std::fill(cost_.begin(), cost_.end(), 0.0);
    // Reduced costs for the all-artificial basis: price out each row.
    for (const auto& row : rows_) {
      for (int j = 0; j < n_; ++j) cost_[static_cast<std::size_t>(j)] -= row[static_cast<std::size_t>(j)];
      cost_[rhs_col()] -= row[rhs_col()];
    }
    iterate(n_ + m_);
    if (unbounded_) throw NumericalBreakdown("phase 1 reported unbounded");
    if (-cost_[rhs_col()] > kPhase1FeasTol) return false;
    drop_or_pivot_artificials();
    return true;
  }

  void phase2() {
    std::fill(cost_.begin(), cost_.end(), 0.0);
    for (int j = 0; j < n_; ++j) cost_[static_cast<std::size_t>(j)] = lp_.objective[static_cast<std::size_t>(j)];
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      double coef = cost_[static_cast<std::size_t>(basis_[i])];
      if (coef != 0.0) {
        axpy(cost_, rows_[i], -coef);
        cost_[static_cast<std::size_t>(basis_[i])] = 0.0;
      }
    }
    iterate(n_);  // artificial columns are ineligible in phase 2
  }

  Solution extract(bool with_duals) const {
    Solution sol;
    sol.status = Status::Optimal;
    sol.iterations = pivots_;
    sol.x.assign(static_cast<std::size_t>(n_), 0.0);
    for (std::size_t i = 0; i < rows_.size(); ++i)
      if (basis_[i] < n_) sol.x[static_cast<std::size_t>(basis_[i])] = rows_[i][rhs_col()];

    for (double v : sol.x)
      if (v < -1e-12)
        throw NumericalBreakdown("solution component " + std::to_string(v) + " below -1e-12");

    for (int j = 0; j < n_; ++j)
      sol.objective_value += lp_.objective[static_cast<std::size_t>(j)] * sol.x[static_cast<std::size_t>(j)];

    if (with_duals) {
      // The reduced cost of artificial column k is -y_k for the flipped row;
      // undo the flip and map back to original row order. Dropped rows keep 0.
      sol.duals.assign(static_cast<std::size_t>(m_), 0.0);
      for (std::size_t i = 0; i < rows_.size(); ++i)
        sol.duals[static_cast<std::size_t>(origin_[i])] =
            -cost_[static_cast<std::size_t>(n_ + origin_[i])] * flip_[i];
    }

    for (int i = 0; i < m_; ++i) {
      double ax = 0.0;
      for (int j = 0; j < n_; ++j)
        ax += lp_.matrix[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] *
              sol.x[static_cast<std::size_t>(j)];
      sol.residual_inf = std::max(sol.residual_inf, std::abs(ax - lp_.rhs[static_cast<std::size_t>(i)]));
    }
    if (sol.residual_inf > kResidualTol)
      throw NumericalBreakdown("constraint residual " + std::to_string(sol.residual_inf));
    return sol;
  }

  bool unbounded() const { return unbounded_; }

 private:
  std::size_t rhs_col() const { return static_cast<std::size_t>(n_ + m_); }

  static void axpy(std::vector<double>& target, const std::vector<double>& source, double factor) {
    for (std::size_t j = 0; j < target.size(); ++j) target[j] += factor * source[j];
  }

  /// Bland iterations restricted to the eligible column prefix [0, limit).
  void iterate(int limit) {
    unbounded_ = false;
    for (;;) {
      int entering = -1;
      for (int j = 0; j < limit; ++j)
        if (cost_[static_cast<std::size_t>(j)] < -kReducedCostTol) {
          entering = j;
          break;
        }
      if (entering < 0) return;

      int leaving = -1;
      double best_ratio = 0.0;
      bool saw_positive = false;
      bool saw_usable = false;
      for (std::size_t i = 0; i < rows_.size(); ++i) {
        double a = rows_[i][static_cast<std::size_t>(entering)];
        if (a <= 0.0) continue;
        saw_positive = true;
        if (a <= kPivotTol) continue;
        saw_usable = true;
        double ratio = rows_[i][rhs_col()] / a;
        if (leaving < 0 || ratio < best_ratio ||
            (ratio == best_ratio && basis_[i] < basis_[static_cast<std::size_t>(leaving)]))
        {
          leaving = static_cast<int>(i);
          best_ratio = ratio;
        }
      }
      if (!saw_usable) {
        if (saw_positive)
          throw NumericalBreakdown("pivot magnitude below 1e-11 cannot be avoided in column " +
                                   std::to_string(entering));
        unbounded_ = true;
        return;
      }
      pivot(static_cast<std::size_t>(leaving), entering);
    }
  }

  void pivot(std::size_t r, int col) {
    if (++pivots_ > kPivotCap) throw NumericalBreakdown("pivot limit exceeded");
    auto& prow = rows_[r];
    double inv = 1.0 / prow[static_cast<std::size_t>(col)];
    for (double& v : prow) v *= inv;
    prow[static_cast<std::size_t>(col)] = 1.0;
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      if (i == r) continue;
      double f = rows_[i][static_cast<std::size_t>(col)];
      if (f != 0.0) {
        axpy(rows_[i], prow, -f);
        rows_[i][static_cast<std::size_t>(col)] = 0.0;
      }
    }
    double fc = cost_[static_cast<std::size_t>(col)];
    if (fc != 0.0) {
      axpy(cost_, prow, -fc);
      cost_[static_cast<std::size_t>(col)] = 0.0;
    }
    basis_[r] = col;
    if (options_.trace) dump(r, col);
  }

  /// After phase 1: pivot leftover artificials out on any structural column,
  /// or drop the row as redundant when none exists.
  void drop_or_pivot_artificials() {
    for (std::size_t i = 0; i < rows_.size();) {
      if (basis_[i] < n_) {
        ++i;
        continue;
      }
      int col = -1;
      for (int j = 0; j < n_; ++j)
        if (std::abs(rows_[i][static_cast<std::size_t>(j)]) > kPivotTol) {
          col = j;
          break;
        }
      if (col >= 0) {
        pivot(i, col);
        ++i;
      } else {
        rows_.erase(rows_.begin() + static_cast<std::ptrdiff_t>(i));
        basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(i));
        origin_.erase(origin_.begin() + static_cast<std::ptrdiff_t>(i));
        flip_.erase(flip_.begin() + static_cast<std::ptrdiff_t>(i));
      }
    }
  }

  void dump(std::size_t pivot_row, int pivot_col) const {
    std::ostream& os = options_.trace_out ? *options_.trace_out : std::cerr;
    os << "pivot " << pivots_ << ": row " << pivot_row << " col " << pivot_col << '\n';
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      os << "  b" << basis_[i] << " |";
      for (double v : rows_[i]) os << ' ' << v;
      os << '\n';
    }
    os << "  z  |";
    for (double v : cost_) os << ' ' << v;
    os << '\n';
  }

  const LinearProgram& lp_;
  const Options& options_;
  int n_;
  int m_;
  std::vector<std::vector<double>> rows_;
  std::vector<double> cost_;
  std::vector<int> basis_;
  std::vector<int> origin_;
  std::vector<double> flip_;
  int pivots_ = 0;
  bool unbounded_ = false;
};

}  // namespace

Solution solve(const LinearProgram& lp, const Options& options) {
  validate(lp);
  Tableau t(lp, options);
  if (!t.phase1()) {
    Solution sol;
    sol.status = Status::Infeasible;
    return sol;
  }
  t.phase2();
  if (t.unbounded()) {
    Solution sol;
    sol.status = Status::Unbounded;
    return sol;
  }
  return t.extract(/*with_duals=*/true);
}

Solution feasibility(const std::vector<std::vector<double>>& matrix,
                     const std::vector<double>& rhs, const Options& options) {
  LinearProgram lp;
  lp.matrix = matrix;
  lp.rhs = rhs;
  lp.objective.assign(matrix.empty() ? 1 : matrix.front().size(), 0.0);
  validate(lp);
  Tableau t(lp, options);
  if (!t.phase1()) {
    Solution sol;
    sol.status = Status::Infeasible;
    return sol;
  }
  return t.extract(/*with_duals=*/false);
}

}  // namespace ctk::lp
