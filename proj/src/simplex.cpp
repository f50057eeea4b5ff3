#include "abcprop/simplex.hpp"

#include <string>

#include "abcprop/errors.hpp"

namespace abcprop {

int LinearProgram::add_variable(std::optional<Rational> lower, std::optional<Rational> upper, Rational objective) {
  if (lower && upper && *upper < *lower) throw InputError("variable upper bound below lower bound");
  lower_.push_back(std::move(lower));
  upper_.push_back(std::move(upper));
  objective_.push_back(std::move(objective));
  return num_variables() - 1;
}

void LinearProgram::add_constraint(LinearConstraint constraint) {
  for (const auto& [var, coef] : constraint.terms)
    if (var < 0 || var >= num_variables()) throw InputError("constraint references unknown variable " + std::to_string(var));
  constraints_.push_back(std::move(constraint));
}

void LinearProgram::add_constraint(std::vector<std::pair<int, Rational>> terms, ConstraintSense sense, Rational rhs) {
  add_constraint(LinearConstraint{std::move(terms), sense, std::move(rhs)});
}

void LinearProgram::set_objective(int var, Rational coefficient) {
  if (var < 0 || var >= num_variables()) throw InputError("objective references unknown variable");
  objective_[var] = std::move(coefficient);
}

bool LinearProgram::is_feasible(const std::vector<Rational>& x) const {
  if (static_cast<int>(x.size()) != num_variables()) return false;
  for (int j = 0; j < num_variables(); ++j) {
    if (lower_[j] && x[j] < *lower_[j]) return false;
    if (upper_[j] && x[j] > *upper_[j]) return false;
  }
  for (const auto& c : constraints_) {
    Rational lhs = 0;
    for (const auto& [var, coef] : c.terms) lhs += coef * x[var];
    switch (c.sense) {
      case ConstraintSense::kLessEqual:
        if (lhs > c.rhs) return false;
        break;
      case ConstraintSense::kEqual:
        if (lhs != c.rhs) return false;
        break;
      case ConstraintSense::kGreaterEqual:
        if (lhs < c.rhs) return false;
        break;
    }
  }
  return true;
}

Rational LinearProgram::evaluate(const std::vector<Rational>& x) const {
  Rational total = 0;
  for (int j = 0; j < num_variables(); ++j) total += objective_[j] * x[j];
  return total;
}

namespace {

// Dense tableau in equality form: rows · [columns | rhs], every column >= 0.
class Tableau {
 public:
  Tableau(std::vector<std::vector<Rational>> rows, std::vector<int> basis, int num_cols)
      : rows_(std::move(rows)), basis_(std::move(basis)), num_cols_(num_cols), allowed_(num_cols, true) {}

  void forbid(int col) { allowed_[col] = false; }

  // Installs the cost vector and prices out the current basis.
  void set_costs(const std::vector<Rational>& costs) {
    costs_ = costs;
    reduced_.assign(num_cols_, Rational(0));
    value_ = 0;
    for (int j = 0; j < num_cols_; ++j) reduced_[j] = costs_[j];
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      const Rational& cb = costs_[basis_[i]];
      if (cb == 0) continue;
      for (int j = 0; j < num_cols_; ++j) reduced_[j] -= cb * rows_[i][j];
      value_ += cb * rows_[i][num_cols_];
    }
  }

  // Runs Bland's rule to optimality. Returns false if unbounded.
  bool optimise() {
    while (true) {
      int enter = -1;
      for (int j = 0; j < num_cols_; ++j)
        if (allowed_[j] && reduced_[j] > 0) {
          enter = j;
          break;
        }
      if (enter < 0) return true;
      int leave = -1;
      Rational best_ratio;
      for (std::size_t i = 0; i < rows_.size(); ++i) {
        if (rows_[i][enter] <= 0) continue;
        Rational ratio = rows_[i][num_cols_] / rows_[i][enter];
        if (leave < 0 || ratio < best_ratio || (ratio == best_ratio && basis_[i] < basis_[leave])) {
          leave = static_cast<int>(i);
          best_ratio = ratio;
        }
      }
      if (leave < 0) return false;
      pivot(leave, enter);
    }
  }

  void pivot(int row, int col) {
    auto& pr = rows_[row];
    const Rational inv = 1 / pr[col];
    for (auto& x : pr) x *= inv;
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      if (static_cast<int>(i) == row || rows_[i][col] == 0) continue;
      const Rational f = rows_[i][col];
      for (int j = 0; j <= num_cols_; ++j)
        if (pr[j] != 0) rows_[i][j] -= f * pr[j];
    }
    if (!reduced_.empty() && reduced_[col] != 0) {
      const Rational f = reduced_[col];
      for (int j = 0; j < num_cols_; ++j)
        if (pr[j] != 0) reduced_[j] -= f * pr[j];
      value_ += f * pr[num_cols_];
    }
    basis_[row] = col;
  }

  // Pivots basic columns satisfying `is_artificial` out of the basis, dropping
  // rows that turn out to be redundant.
  template <typename Pred>
  void expel(Pred is_artificial) {
    for (std::size_t i = 0; i < rows_.size();) {
      if (!is_artificial(basis_[i])) {
        ++i;
        continue;
      }
      int col = -1;
      for (int j = 0; j < num_cols_; ++j)
        if (!is_artificial(j) && rows_[i][j] != 0) {
          col = j;
          break;
        }
      if (col >= 0) {
        pivot(static_cast<int>(i), col);
        ++i;
      } else {
        rows_.erase(rows_.begin() + static_cast<std::ptrdiff_t>(i));
        basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(i));
      }
    }
  }

  const Rational& value() const { return value_; }

  std::vector<Rational> primal() const {
    std::vector<Rational> x(num_cols_, Rational(0));
    for (std::size_t i = 0; i < rows_.size(); ++i) x[basis_[i]] = rows_[i][num_cols_];
    return x;
  }

 private:
  std::vector<std::vector<Rational>> rows_;
  std::vector<int> basis_;
  int num_cols_;
  std::vector<bool> allowed_;
  std::vector<Rational> costs_;
  std::vector<Rational> reduced_;
  Rational value_;
};

}  // namespace

LpSolution simplex_max(const LinearProgram& lp) {
  const int nv = lp.num_variables();

  // x_j = offset_j + y_pos - y_neg with y >= 0.
  std::vector<int> pos_col(nv), neg_col(nv, -1);
  std::vector<Rational> offset(nv, Rational(0));
  int ncols = 0;
  for (int j = 0; j < nv; ++j) {
    pos_col[j] = ncols++;
    if (lp.lower()[j])
      offset[j] = *lp.lower()[j];
    else
      neg_col[j] = ncols++;
  }
  const int structural = ncols;

  struct Row {
    std::vector<Rational> coef;
    ConstraintSense sense;
    Rational rhs;
  };
  std::vector<Row> rows;
  auto add_row = [&](const std::vector<std::pair<int, Rational>>& terms, ConstraintSense sense, Rational rhs) {
    Row r{std::vector<Rational>(structural, Rational(0)), sense, std::move(rhs)};
    for (const auto& [var, coef] : terms) {
      r.coef[pos_col[var]] += coef;
      if (neg_col[var] >= 0) r.coef[neg_col[var]] -= coef;
      r.rhs -= coef * offset[var];
    }
    if (r.rhs < 0) {
      for (auto& c : r.coef) c = -c;
      r.rhs = -r.rhs;
      if (r.sense == ConstraintSense::kLessEqual)
        r.sense = ConstraintSense::kGreaterEqual;
      else if (r.sense == ConstraintSense::kGreaterEqual)
        r.sense = ConstraintSense::kLessEqual;
    }
    rows.push_back(std::move(r));
  };
  for (const auto& c : lp.constraints()) add_row(c.terms, c.sense, c.rhs);
  for (int j = 0; j < nv; ++j)
    if (lp.upper()[j]) add_row({{j, Rational(1)}}, ConstraintSense::kLessEqual, *lp.upper()[j]);

  // Column layout: structural | slack or surplus per inequality | artificial.
  int total = structural;
  std::vector<int> slack_col(rows.size(), -1), art_col(rows.size(), -1);
  for (std::size_t i = 0; i < rows.size(); ++i)
    if (rows[i].sense != ConstraintSense::kEqual) slack_col[i] = total++;
  const int first_artificial = total;
  for (std::size_t i = 0; i < rows.size(); ++i)
    if (rows[i].sense != ConstraintSense::kLessEqual) art_col[i] = total++;

  std::vector<std::vector<Rational>> tab(rows.size(), std::vector<Rational>(total + 1, Rational(0)));
  std::vector<int> basis(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (int j = 0; j < structural; ++j) tab[i][j] = rows[i].coef[j];
    if (slack_col[i] >= 0) tab[i][slack_col[i]] = rows[i].sense == ConstraintSense::kLessEqual ? 1 : -1;
    if (art_col[i] >= 0) tab[i][art_col[i]] = 1;
    tab[i][total] = rows[i].rhs;
    basis[i] = art_col[i] >= 0 ? art_col[i] : slack_col[i];
  }

  Tableau t(std::move(tab), std::move(basis), total);
  auto is_artificial = [&](int col) { return col >= first_artificial; };

  LpSolution out;
  if (first_artificial < total) {
    std::vector<Rational> phase1(total, Rational(0));
    for (int j = first_artificial; j < total; ++j) phase1[j] = -1;
    t.set_costs(phase1);
    t.optimise();  // bounded above by 0
    if (t.value() < 0) {
      out.status = LpStatus::kInfeasible;
      return out;
    }
    t.expel(is_artificial);
    for (int j = first_artificial; j < total; ++j) t.forbid(j);
  }

  std::vector<Rational> costs(total, Rational(0));
  Rational constant = 0;
  for (int j = 0; j < nv; ++j) {
    costs[pos_col[j]] = lp.objective()[j];
    if (neg_col[j] >= 0) costs[neg_col[j]] = -lp.objective()[j];
    constant += lp.objective()[j] * offset[j];
  }
  t.set_costs(costs);
  if (!t.optimise()) {
    out.status = LpStatus::kUnbounded;
    return out;
  }
  const auto y = t.primal();
  out.status = LpStatus::kOptimal;
  out.values.resize(nv);
  for (int j = 0; j < nv; ++j) {
    out.values[j] = offset[j] + y[pos_col[j]];
    if (neg_col[j] >= 0) out.values[j] -= y[neg_col[j]];
  }
  out.optimum = t.value() + constant;
  return out;
}

}  // namespace abcprop
