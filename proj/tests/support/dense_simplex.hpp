#pragma once

// Textbook two-phase tableau simplex used only as a test oracle. It shares
// nothing with the production solver path beyond reading the LinearProgram.

#include <cmath>
#include <limits>
#include <vector>

#include <Eigen/Dense>

#include "ldes/lp.hpp"

namespace ldes::testing {

enum class DenseStatus { optimal, infeasible, unbounded, iteration_limit };

template <class Scalar>
struct DenseResult {
  DenseStatus status = DenseStatus::iteration_limit;
  Scalar objective = 0;
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> x;
  long iterations = 0;
};

template <class Scalar = double>
class DenseSimplex {
 public:
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  explicit DenseSimplex(Scalar eps = Scalar(1e-9), long max_iterations = 200000)
      : eps_(eps), max_iterations_(max_iterations) {}

  DenseResult<Scalar> solve(const lp::LinearProgram& lp) {
    build(lp);
    DenseResult<Scalar> result;
    if (!phase_one()) {
      result.status = iterations_ >= max_iterations_ ? DenseStatus::iteration_limit
                                                     : DenseStatus::infeasible;
      result.iterations = iterations_;
      return result;
    }
    const auto phase_two_status = run(cost_row_);
    result.iterations = iterations_;
    if (phase_two_status != DenseStatus::optimal) {
      result.status = phase_two_status;
      return result;
    }
    result.status = DenseStatus::optimal;
    Vector y = Vector::Zero(cols_);
    for (Eigen::Index i = 0; i < rows_; ++i) y[basis_[i]] = tableau_(i, cols_);
    result.x = Vector::Zero(n_orig_);
    for (Eigen::Index j = 0; j < n_orig_; ++j) {
      Scalar v = offset_[j];
      for (const auto& [col, sign] : maps_[j]) v += sign * y[col];
      result.x[j] = v;
    }
    Scalar obj = static_cast<Scalar>(lp.objective().constant);
    for (const auto& t : lp.objective().coefficients) obj += static_cast<Scalar>(t.coef) * result.x[t.var.index];
    result.objective = obj;
    return result;
  }

 private:
  struct Column {
    Eigen::Index col;
    Scalar sign;
  };

  void build(const lp::LinearProgram& lp) {
    n_orig_ = lp.num_variables();
    offset_.assign(n_orig_, Scalar(0));
    maps_.assign(n_orig_, {});

    // Structural columns y >= 0 and variable bound rows.
    struct BoundRow {
      Eigen::Index col;
      Scalar rhs;
    };
    std::vector<BoundRow> bound_rows;
    Eigen::Index n = 0;
    for (Eigen::Index j = 0; j < n_orig_; ++j) {
      const auto& v = lp.variable(lp::VarId{static_cast<std::int32_t>(j)});
      const bool lo = std::isfinite(v.lower);
      const bool up = std::isfinite(v.upper);
      if (lo && up && v.lower == v.upper) {
        offset_[j] = Scalar(v.lower);  // fixed: no column
      } else if (lo) {
        offset_[j] = Scalar(v.lower);
        maps_[j].push_back({n, Scalar(1)});
        if (up) bound_rows.push_back({n, Scalar(v.upper) - Scalar(v.lower)});
        ++n;
      } else if (up) {
        offset_[j] = Scalar(v.upper);
        maps_[j].push_back({n++, Scalar(-1)});
      } else {
        maps_[j].push_back({n++, Scalar(1)});
        maps_[j].push_back({n++, Scalar(-1)});
      }
    }
    const Eigen::Index structural = n;

    // Rows as (coefficients over y, relation, rhs) with rhs >= 0.
    struct Row {
      std::vector<std::pair<Eigen::Index, Scalar>> terms;
      lp::Relation rel;
      Scalar rhs;
    };
    std::vector<Row> rows;
    for (Eigen::Index i = 0; i < lp.num_constraints(); ++i) {
      const auto& c = lp.constraint(lp::RowId{static_cast<std::int32_t>(i)});
      Row r{{}, c.relation, Scalar(c.rhs)};
      for (const auto& t : c.row) {
        r.rhs -= Scalar(t.coef) * offset_[t.var.index];
        for (const auto& [col, sign] : maps_[t.var.index]) r.terms.push_back({col, Scalar(t.coef) * sign});
      }
      rows.push_back(std::move(r));
    }
    for (const auto& b : bound_rows) rows.push_back(Row{{{b.col, Scalar(1)}}, lp::Relation::less_equal, b.rhs});
    for (auto& r : rows) {
      if (r.rhs < 0) {
        r.rhs = -r.rhs;
        for (auto& t : r.terms) t.second = -t.second;
        if (r.rel == lp::Relation::less_equal) {
          r.rel = lp::Relation::greater_equal;
        } else if (r.rel == lp::Relation::greater_equal) {
          r.rel = lp::Relation::less_equal;
        }
      }
    }

    // Slack / surplus columns, then artificial columns where no slack can
    // start in the basis.
    rows_ = static_cast<Eigen::Index>(rows.size());
    Eigen::Index slack_count = 0;
    Eigen::Index artificial_count = 0;
    for (const auto& r : rows) {
      if (r.rel != lp::Relation::equal) ++slack_count;
      if (r.rel != lp::Relation::less_equal) ++artificial_count;
    }
    artificial_begin_ = structural + slack_count;
    cols_ = artificial_begin_ + artificial_count;
    tableau_ = Matrix::Zero(rows_ + 1, cols_ + 1);  // last row: objective, last col: rhs
    basis_.assign(rows_, -1);
    Eigen::Index slack = structural;
    Eigen::Index art = artificial_begin_;
    for (Eigen::Index i = 0; i < rows_; ++i) {
      const auto& r = rows[i];
      for (const auto& [col, coef] : r.terms) tableau_(i, col) += coef;
      tableau_(i, cols_) = r.rhs;
      if (r.rel == lp::Relation::less_equal) {
        tableau_(i, slack) = 1;
        basis_[i] = slack++;
      } else {
        if (r.rel == lp::Relation::greater_equal) tableau_(i, slack++) = -1;
        tableau_(i, art) = 1;
        basis_[i] = art++;
      }
    }

    const Scalar sense = lp.objective().sense == lp::Sense::maximize ? Scalar(-1) : Scalar(1);
    cost_row_ = Vector::Zero(cols_);
    for (const auto& t : lp.objective().coefficients) {
      for (const auto& [col, sign] : maps_[t.var.index]) cost_row_[col] += sense * Scalar(t.coef) * sign;
    }
    iterations_ = 0;
  }

  bool phase_one() {
    if (artificial_begin_ == cols_) return true;
    Vector c = Vector::Zero(cols_);
    for (Eigen::Index j = artificial_begin_; j < cols_; ++j) c[j] = 1;
    if (run(c) != DenseStatus::optimal) return false;
    if (-tableau_(rows_, cols_) > eps_ * std::max<Scalar>(1, tableau_.col(cols_).head(rows_).cwiseAbs().maxCoeff()) * 10) {
      return false;
    }
    // Drive remaining artificials out of the basis; a row with no other
    // usable entry is redundant and its artificial stays at zero.
    for (Eigen::Index i = 0; i < rows_; ++i) {
      if (basis_[i] < artificial_begin_) continue;
      for (Eigen::Index j = 0; j < artificial_begin_; ++j) {
        if (std::abs(tableau_(i, j)) > eps_) {
          pivot(i, j);
          break;
        }
      }
    }
    // Forbid artificials from re-entering.
    tableau_.block(0, artificial_begin_, rows_ + 1, cols_ - artificial_begin_).setZero();
    for (Eigen::Index i = 0; i < rows_; ++i) {
      if (basis_[i] >= artificial_begin_) tableau_(i, basis_[i]) = 1;
    }
    return true;
  }

  // Minimizes c·y from the current basis.
  DenseStatus run(const Vector& c) {
    // Objective row holds reduced costs; last entry holds -objective.
    tableau_.row(rows_).setZero();
    tableau_.row(rows_).head(cols_) = c.transpose();
    for (Eigen::Index i = 0; i < rows_; ++i) {
      const Scalar cb = c[basis_[i]];
      if (cb != 0) tableau_.row(rows_) -= cb * tableau_.row(i);
    }
    long stall = 0;
    Scalar last = tableau_(rows_, cols_);
    while (iterations_ < max_iterations_) {
      const bool bland = stall > 50;
      Eigen::Index enter = -1;
      Scalar best = -eps_;
      for (Eigen::Index j = 0; j < cols_; ++j) {
        const Scalar d = tableau_(rows_, j);
        if (d < best) {
          enter = j;
          if (bland) break;
          best = d;
        }
      }
      if (enter < 0) return DenseStatus::optimal;

      Eigen::Index leave = -1;
      Scalar ratio = std::numeric_limits<Scalar>::infinity();
      for (Eigen::Index i = 0; i < rows_; ++i) {
        const Scalar a = tableau_(i, enter);
        if (a <= eps_) continue;
        const Scalar r = tableau_(i, cols_) / a;
        if (r < ratio - eps_ || (r <= ratio + eps_ && leave >= 0 && basis_[i] < basis_[leave])) {
          ratio = r;
          leave = i;
        }
      }
      if (leave < 0) return DenseStatus::unbounded;
      pivot(leave, enter);
      ++iterations_;
      const Scalar now = tableau_(rows_, cols_);
      stall = std::abs(now - last) <= eps_ ? stall + 1 : 0;
      last = now;
    }
    return DenseStatus::iteration_limit;
  }

  void pivot(Eigen::Index r, Eigen::Index c) {
    tableau_.row(r) /= tableau_(r, c);
    for (Eigen::Index i = 0; i <= rows_; ++i) {
      if (i == r) continue;
      const Scalar f = tableau_(i, c);
      if (f != 0) tableau_.row(i) -= f * tableau_.row(r);
    }
    basis_[r] = c;
  }

  Scalar eps_;
  long max_iterations_;
  long iterations_ = 0;
  Eigen::Index n_orig_ = 0;
  Eigen::Index rows_ = 0;
  Eigen::Index cols_ = 0;
  Eigen::Index artificial_begin_ = 0;
  Matrix tableau_;
  std::vector<Eigen::Index> basis_;
  Vector cost_row_;
  std::vector<Scalar> offset_;
  std::vector<std::vector<Column>> maps_;
};

}  // namespace ldes::testing
