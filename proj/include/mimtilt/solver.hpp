#pragma once

#include "mimtilt/tilt.hpp"

namespace mimtilt {

enum class ConstraintMode { Equality, Inequality };

/// Usage budget constraint. Exactly one of beta (budget) or alpha (slack)
/// is supplied at construction; the other is derived as alpha = 1 - beta.
class ConstraintSpec {
 public:
  static ConstraintSpec with_budget(double beta, ConstraintMode mode);
  static ConstraintSpec with_slack(double alpha, ConstraintMode mode);

  double beta() const { return beta_; }
  double alpha() const { return alpha_; }
  ConstraintMode mode() const { return mode_; }

 private:
  ConstraintSpec(double beta, double alpha, ConstraintMode mode)
      : beta_(beta), alpha_(alpha), mode_(mode) {}

  double beta_;
  double alpha_;
  ConstraintMode mode_;
};

/// Reachable usage averages: beta(omega) spans (beta_min, beta_max) with the
/// neutral point sum(p_i^2) at omega = 0.
struct FeasibleRange {
  double beta_min;      // min positive probability
  double beta_max;      // max probability
  double beta_neutral;  // sum p_i^2
};

/// The usage average sum(P(a) U*(a)) of the tilt at `omega`. Strictly
/// decreasing in omega: d beta / d omega = -Var_{U*}(P).
double beta_of_omega(const Pmf& source, ImportanceCoefficient omega);

/// Invert beta(omega) on the equality family by bracketed bisection.
/// Requires mode Equality and beta strictly inside (beta_min, beta_max);
/// budgets within 1e-12 of an endpoint are rejected (unreachable at finite
/// omega; use limit_distribution for the endpoints).
ImportanceCoefficient solve_omega(const Pmf& source, const ConstraintSpec& spec);

/// Minimize D(U||P) subject to sum(P(a) U(a)) <= beta (mode Inequality).
/// When beta >= sum(p_i^2) the constraint is inactive and the unconstrained
/// minimizer U = P is returned with omega = 0; otherwise the constraint
/// binds and the result is the tilt at solve_omega(beta), with omega > 0.
TiltResult solve_budget(const Pmf& source, const ConstraintSpec& spec);

FeasibleRange feasible_range(const Pmf& source);

}  // namespace mimtilt
