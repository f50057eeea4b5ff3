#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "abcprop/rational.hpp"

namespace abcprop {

enum class ConstraintSense { kLessEqual, kEqual, kGreaterEqual };

struct LinearConstraint {
  std::vector<std::pair<int, Rational>> terms;  // (variable, coefficient)
  ConstraintSense sense = ConstraintSense::kLessEqual;
  Rational rhs;
};

// maximize  objective·x  subject to  constraints,  lower <= x <= upper.
// A missing lower bound makes the variable free.
class LinearProgram {
 public:
  int add_variable(std::optional<Rational> lower = Rational(0), std::optional<Rational> upper = std::nullopt,
                   Rational objective = 0);
  void add_constraint(LinearConstraint constraint);
  void add_constraint(std::vector<std::pair<int, Rational>> terms, ConstraintSense sense, Rational rhs);
  void set_objective(int var, Rational coefficient);

  int num_variables() const { return static_cast<int>(objective_.size()); }
  const std::vector<std::optional<Rational>>& lower() const { return lower_; }
  const std::vector<std::optional<Rational>>& upper() const { return upper_; }
  const std::vector<Rational>& objective() const { return objective_; }
  const std::vector<LinearConstraint>& constraints() const { return constraints_; }

  // Zero-residual check of every constraint and bound.
  bool is_feasible(const std::vector<Rational>& x) const;
  Rational evaluate(const std::vector<Rational>& x) const;

 private:
  std::vector<std::optional<Rational>> lower_;
  std::vector<std::optional<Rational>> upper_;
  std::vector<Rational> objective_;
  std::vector<LinearConstraint> constraints_;
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

struct LpSolution {
  LpStatus status = LpStatus::kInfeasible;
  Rational optimum;
  std::vector<Rational> values;
};

// Two-phase tableau simplex over exact rationals with Bland's rule.
LpSolution simplex_max(const LinearProgram& lp);

}  // namespace abcprop
