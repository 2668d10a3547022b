#pragma once

// Exact-arithmetic reimplementation of the two-phase simplex, used only as a
// test oracle for the double-precision kernel. Bland's rule needs no
// tolerances here: comparisons are exact rationals.

#include <gmpxx.h>

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace oracle {

enum class Status { Optimal, Infeasible, Unbounded };

struct Result {
  Status status = Status::Infeasible;
  mpq_class objective = 0;
  std::vector<mpq_class> x;
};

class RationalSimplex {
 public:
  Result minimize(const std::vector<mpq_class>& c, const std::vector<std::vector<mpq_class>>& a,
                  const std::vector<mpq_class>& b) {
    n_ = c.size();
    m_ = a.size();
    rows_.assign(m_, std::vector<mpq_class>(n_ + m_ + 1, 0));
    basis_.resize(m_);
    for (std::size_t i = 0; i < m_; ++i) {
      mpq_class flip = b[i] < 0 ? -1 : 1;
      for (std::size_t j = 0; j < n_; ++j) rows_[i][j] = flip * a[i][j];
      rows_[i][n_ + i] = 1;
      rows_[i][n_ + m_] = flip * b[i];
      basis_[i] = n_ + i;
    }

    // Phase 1.
    cost_.assign(n_ + m_ + 1, 0);
    for (const auto& row : rows_) {
      for (std::size_t j = 0; j < n_; ++j) cost_[j] -= row[j];
      cost_[n_ + m_] -= row[n_ + m_];
    }
    iterate(n_ + m_);
    if (unbounded_) throw std::logic_error("exact phase 1 cannot be unbounded");
    if (-cost_[n_ + m_] != 0) return Result{Status::Infeasible, 0, {}};

    // Drive artificials out or drop redundant rows.
    for (std::size_t i = 0; i < rows_.size();) {
      if (basis_[i] < n_) {
        ++i;
        continue;
      }
      std::size_t col = n_;
      for (std::size_t j = 0; j < n_; ++j)
        if (rows_[i][j] != 0) {
          col = j;
          break;
        }
      if (col < n_) {
        pivot(i, col);
        ++i;
      } else {
        rows_.erase(rows_.begin() + static_cast<std::ptrdiff_t>(i));
        basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(i));
      }
    }

    // Phase 2.
    cost_.assign(n_ + m_ + 1, 0);
    for (std::size_t j = 0; j < n_; ++j) cost_[j] = c[j];
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      mpq_class coef = cost_[basis_[i]];
      if (coef != 0)
        for (std::size_t j = 0; j <= n_ + m_; ++j) cost_[j] -= coef * rows_[i][j];
    }
    iterate(n_);
    if (unbounded_) return Result{Status::Unbounded, 0, {}};

    Result res;
    res.status = Status::Optimal;
    res.x.assign(n_, 0);
    for (std::size_t i = 0; i < rows_.size(); ++i)
      if (basis_[i] < n_) res.x[basis_[i]] = rows_[i][n_ + m_];
    for (std::size_t j = 0; j < n_; ++j) res.objective += c[j] * res.x[j];
    return res;
  }

 private:
  void iterate(std::size_t limit) {
    unbounded_ = false;
    for (;;) {
      std::size_t entering = limit;
      for (std::size_t j = 0; j < limit; ++j)
        if (cost_[j] < 0) {
          entering = j;
          break;
        }
      if (entering == limit) return;

      std::size_t leaving = rows_.size();
      mpq_class best_ratio = 0;
      for (std::size_t i = 0; i < rows_.size(); ++i) {
        if (rows_[i][entering] <= 0) continue;
        mpq_class ratio = rows_[i][n_ + m_] / rows_[i][entering];
        if (leaving == rows_.size() || ratio < best_ratio ||
            (ratio == best_ratio && basis_[i] < basis_[leaving])) {
          leaving = i;
          best_ratio = ratio;
        }
      }
      if (leaving == rows_.size()) {
        unbounded_ = true;
        return;
      }
      pivot(leaving, entering);
    }
  }

  void pivot(std::size_t r, std::size_t col) {
    mpq_class inv = 1 / rows_[r][col];
    for (auto& v : rows_[r]) v *= inv;
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      if (i == r) continue;
      mpq_class f = rows_[i][col];
      if (f != 0)
        for (std::size_t j = 0; j <= n_ + m_; ++j) rows_[i][j] -= f * rows_[r][j];
    }
    mpq_class fc = cost_[col];
    if (fc != 0)
      for (std::size_t j = 0; j <= n_ + m_; ++j) cost_[j] -= fc * rows_[r][j];
    basis_[r] = col;
  }

  std::size_t n_ = 0;
  std::size_t m_ = 0;
  std::vector<std::vector<mpq_class>> rows_;
  std::vector<mpq_class> cost_;
  std::vector<std::size_t> basis_;
  bool unbounded_ = false;
};

inline Result solve_exact(const std::vector<mpq_class>& c,
                          const std::vector<std::vector<mpq_class>>& a,
                          const std::vector<mpq_class>& b) {
  RationalSimplex s;
  return s.minimize(c, a, b);
}

}  // namespace oracle
