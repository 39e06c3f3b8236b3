#pragma once

#include <cstddef>
#include <vector>

#include "core.hpp"

namespace snakeflip {

enum class Sense { LE, GE, EQ };

struct LinearProgram {
  int num_vars = 0;                       // all variables are >= 0
  std::vector<Rational> objective;        // maximize
  std::vector<std::vector<Rational>> rows;
  std::vector<Sense> senses;
  std::vector<Rational> rhs;

  void add_row(std::vector<Rational> a, Sense s, Rational b) {
    a.resize(static_cast<std::size_t>(num_vars));
    rows.push_back(std::move(a));
    senses.push_back(s);
    rhs.push_back(std::move(b));
  }
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  Rational value;
  std::vector<Rational> x;
  // On infeasibility: row multipliers u with u^T A >= 0 on every variable and
  // u^T b < 0. A certificate when all rows are equalities.
  std::vector<Rational> farkas;
  long pivots = 0;
};

// Dense two-phase primal simplex over the rationals with Bland's rule.
class SimplexSolver {
 public:
  explicit SimplexSolver(const LinearProgram& lp) : lp_(lp) {}

  LpResult solve() {
    build();
    LpResult res;
    if (num_art_ > 0) {
      std::vector<Rational> phase1(static_cast<std::size_t>(cols_), 0);
      for (int j = art_begin_; j < cols_; ++j) phase1[static_cast<std::size_t>(j)] = -1;
      set_objective(phase1);
      if (!run(res.pivots, cols_)) return res;  // cannot be unbounded
      if (obj_value() != 0) {
        res.status = LpStatus::Infeasible;
        res.farkas.resize(static_cast<std::size_t>(m_));
        for (int i = 0; i < m_; ++i) {
          const auto k = static_cast<std::size_t>(i);
          Rational u = art_col_[k] >= 0 ? Rational(-1 - z_[static_cast<std::size_t>(art_col_[k])])
                                        : Rational(-z_[static_cast<std::size_t>(slack_col_[k])]);
          res.farkas[k] = u * row_sign_[k];
        }
        return res;
      }
      drive_out_artificials(res.pivots);
    }
    std::vector<Rational> c(static_cast<std::size_t>(cols_), 0);
    for (int j = 0; j < lp_.num_vars; ++j) c[static_cast<std::size_t>(j)] = lp_.objective[static_cast<std::size_t>(j)];
    set_objective(c);
    if (!run(res.pivots, art_begin_)) {
      res.status = LpStatus::Unbounded;
      return res;
    }
    res.status = LpStatus::Optimal;
    res.value = obj_value();
    res.x.assign(static_cast<std::size_t>(lp_.num_vars), 0);
    for (int i = 0; i < m_; ++i)
      if (basis_[static_cast<std::size_t>(i)] < lp_.num_vars)
        res.x[static_cast<std::size_t>(basis_[static_cast<std::size_t>(i)])] = t_[static_cast<std::size_t>(i)][static_cast<std::size_t>(cols_)];
    return res;
  }

 private:
  const LinearProgram& lp_;
  int m_ = 0, cols_ = 0, art_begin_ = 0, num_art_ = 0;
  std::vector<std::vector<Rational>> t_;  // m rows, cols + rhs
  std::vector<Rational> z_;               // reduced costs, z_[cols] = -objective value
  std::vector<int> basis_;
  std::vector<Rational> cost_;
  std::vector<int> art_col_, slack_col_, row_sign_;

  void build() {
    m_ = static_cast<int>(lp_.rows.size());
    int slack = 0;
    for (auto s : lp_.senses) slack += (s != Sense::EQ);
    std::vector<int> sign(static_cast<std::size_t>(m_), 1);
    int arts = 0;
    for (int i = 0; i < m_; ++i) {
      Sense s = lp_.senses[static_cast<std::size_t>(i)];
      if (lp_.rhs[static_cast<std::size_t>(i)] < 0) {
        sign[static_cast<std::size_t>(i)] = -1;
        s = s == Sense::LE ? Sense::GE : s == Sense::GE ? Sense::LE : Sense::EQ;
      }
      if (s != Sense::LE) ++arts;
    }
    art_begin_ = lp_.num_vars + slack;
    num_art_ = arts;
    cols_ = art_begin_ + arts;
    t_.assign(static_cast<std::size_t>(m_), std::vector<Rational>(static_cast<std::size_t>(cols_ + 1), 0));
    basis_.assign(static_cast<std::size_t>(m_), -1);
    int sc = lp_.num_vars, ac = art_begin_;
    art_col_.assign(static_cast<std::size_t>(m_), -1);
    slack_col_.assign(static_cast<std::size_t>(m_), -1);
    row_sign_ = sign;
    for (int i = 0; i < m_; ++i) {
      auto& row = t_[static_cast<std::size_t>(i)];
      const int sg = sign[static_cast<std::size_t>(i)];
      for (int j = 0; j < lp_.num_vars; ++j) row[static_cast<std::size_t>(j)] = lp_.rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] * sg;
      row[static_cast<std::size_t>(cols_)] = lp_.rhs[static_cast<std::size_t>(i)] * sg;
      Sense s = lp_.senses[static_cast<std::size_t>(i)];
      if (sg < 0) s = s == Sense::LE ? Sense::GE : s == Sense::GE ? Sense::LE : Sense::EQ;
      if (s == Sense::LE) {
        row[static_cast<std::size_t>(sc)] = 1;
        slack_col_[static_cast<std::size_t>(i)] = sc;
        basis_[static_cast<std::size_t>(i)] = sc++;
      } else if (s == Sense::GE) {
        row[static_cast<std::size_t>(sc++)] = -1;
        row[static_cast<std::size_t>(ac)] = 1;
        art_col_[static_cast<std::size_t>(i)] = ac;
        basis_[static_cast<std::size_t>(i)] = ac++;
      } else {
        row[static_cast<std::size_t>(ac)] = 1;
        art_col_[static_cast<std::size_t>(i)] = ac;
        basis_[static_cast<std::size_t>(i)] = ac++;
      }
    }
  }

  void set_objective(const std::vector<Rational>& c) {
    cost_ = c;
    z_.assign(static_cast<std::size_t>(cols_ + 1), 0);
    for (int j = 0; j < cols_; ++j) z_[static_cast<std::size_t>(j)] = c[static_cast<std::size_t>(j)];
    for (int i = 0; i < m_; ++i) {
      const Rational& cb = c[static_cast<std::size_t>(basis_[static_cast<std::size_t>(i)])];
      if (cb == 0) continue;
      for (int j = 0; j <= cols_; ++j) z_[static_cast<std::size_t>(j)] -= cb * t_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    }
  }

  Rational obj_value() const { return -z_[static_cast<std::size_t>(cols_)]; }

  void pivot(int r, int c) {
    auto& pr = t_[static_cast<std::size_t>(r)];
    Rational inv = 1 / pr[static_cast<std::size_t>(c)];
    for (int j = 0; j <= cols_; ++j)
      if (pr[static_cast<std::size_t>(j)] != 0) pr[static_cast<std::size_t>(j)] *= inv;
    std::vector<int> nz;
    for (int j = 0; j <= cols_; ++j)
      if (pr[static_cast<std::size_t>(j)] != 0) nz.push_back(j);
    auto eliminate = [&](std::vector<Rational>& row) {
      if (row[static_cast<std::size_t>(c)] == 0) return;
      Rational f = row[static_cast<std::size_t>(c)];
      for (int j : nz) row[static_cast<std::size_t>(j)] -= f * pr[static_cast<std::size_t>(j)];
    };
    for (int i = 0; i < m_; ++i)
      if (i != r) eliminate(t_[static_cast<std::size_t>(i)]);
    eliminate(z_);
    basis_[static_cast<std::size_t>(r)] = c;
  }

  // Returns false when unbounded. Columns >= limit never enter.
  bool run(long& pivots, int limit) {
    for (;;) {
      int enter = -1;
      for (int j = 0; j < limit; ++j)
        if (z_[static_cast<std::size_t>(j)] > 0) {
          enter = j;
          break;
        }
      if (enter < 0) return true;
      int leave = -1;
      Rational best;
      for (int i = 0; i < m_; ++i) {
        const Rational& a = t_[static_cast<std::size_t>(i)][static_cast<std::size_t>(enter)];
        if (a <= 0) continue;
        Rational ratio = t_[static_cast<std::size_t>(i)][static_cast<std::size_t>(cols_)] / a;
        if (leave < 0 || ratio < best ||
            (ratio == best && basis_[static_cast<std::size_t>(i)] < basis_[static_cast<std::size_t>(leave)])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave < 0) return false;
      pivot(leave, enter);
      ++pivots;
    }
  }

  void drive_out_artificials(long& pivots) {
    for (int i = 0; i < m_; ++i) {
      if (basis_[static_cast<std::size_t>(i)] < art_begin_) continue;
      for (int j = 0; j < art_begin_; ++j)
        if (t_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] != 0) {
          pivot(i, j);
          ++pivots;
          break;
        }
      // A row left with an artificial basic at zero is redundant; zero it.
      if (basis_[static_cast<std::size_t>(i)] >= art_begin_)
        for (int j = 0; j <= cols_; ++j)
          if (j != basis_[static_cast<std::size_t>(i)]) t_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = 0;
    }
  }
};

inline LpResult solve_lp(const LinearProgram& lp) { return SimplexSolver(lp).solve(); }

}  // namespace snakeflip
