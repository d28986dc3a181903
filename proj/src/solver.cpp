#include "mimtilt/solver.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace mimtilt {

namespace {

constexpr double kBetaTol = 1e-12;
constexpr double kEndpointTol = 1e-12;
constexpr int kMaxIterations = 200;

void require_non_degenerate(const Pmf& source) {
  const double lo = source.min_positive_prob();
  const double hi = source.max_prob();
  if (hi - lo <= 1e-15)
    fail(ErrorCode::DegeneratePmf,
         "all positive probabilities are equal; beta(omega) is constant");
}

std::string range_text(double lo, double hi) {
  std::ostringstream out;
  out << "[" << lo << ", " << hi << "]";
  return out.str();
}

}  // namespace

ConstraintSpec ConstraintSpec::with_budget(double beta, ConstraintMode mode) {
  if (!std::isfinite(beta)) fail(ErrorCode::InvalidArgument, "budget must be finite");
  return ConstraintSpec(beta, 1.0 - beta, mode);
}

ConstraintSpec ConstraintSpec::with_slack(double alpha, ConstraintMode mode) {
  if (!std::isfinite(alpha)) fail(ErrorCode::InvalidArgument, "slack must be finite");
  return ConstraintSpec(1.0 - alpha, alpha, mode);
}

FeasibleRange feasible_range(const Pmf& source) {
  require_non_degenerate(source);
  return {source.min_positive_prob(), source.max_prob(), source.probs().square().sum()};
}

double beta_of_omega(const Pmf& source, ImportanceCoefficient omega) {
  require_non_degenerate(source);
  return tilt(source, omega).beta;
}

ImportanceCoefficient solve_omega(const Pmf& source, const ConstraintSpec& spec) {
  if (spec.mode() != ConstraintMode::Equality)
    fail(ErrorCode::InvalidArgument, "solve_omega expects an equality-mode constraint");
  const FeasibleRange range = feasible_range(source);
  const double target = spec.beta();
  if (target <= range.beta_min + kEndpointTol || target >= range.beta_max - kEndpointTol)
    fail(ErrorCode::BetaOutOfRange,
         "budget " + std::to_string(target) + " is not strictly inside the feasible range " +
             range_text(range.beta_min, range.beta_max));

  const auto beta_at = [&](double w) { return tilt(source, ImportanceCoefficient(w)).beta; };

  // beta(omega) is strictly decreasing; widen [lo, hi] until it straddles
  // the target, then bisect.
  double lo = -1.0, hi = 1.0;
  int guard = 0;
  while (beta_at(hi) > target) {
    lo = hi;
    hi *= 2.0;
    if (++guard > kMaxIterations) fail(ErrorCode::NoConvergence, "bracketing ran away (+)");
  }
  guard = 0;
  while (beta_at(lo) < target) {
    hi = lo;
    lo *= 2.0;
    if (++guard > kMaxIterations) fail(ErrorCode::NoConvergence, "bracketing ran away (-)");
  }

  double best = 0.5 * (lo + hi);
  double best_gap = std::numeric_limits<double>::infinity();
  for (int it = 0; it < kMaxIterations; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double beta_mid = beta_at(mid);
    const double gap = std::abs(beta_mid - target);
    if (gap < best_gap) {
      best_gap = gap;
      best = mid;
    }
    if (beta_mid > target)
      lo = mid;
    else
      hi = mid;
    const double width_floor =
        1e-9 + 4.0 * std::numeric_limits<double>::epsilon() * std::abs(mid);
    if (best_gap <= kBetaTol && hi - lo <= width_floor) break;
  }
  if (best_gap > kBetaTol)
    fail(ErrorCode::NoConvergence, "bisection failed to match the budget to 1e-12");
  return ImportanceCoefficient(best);
}

TiltResult solve_budget(const Pmf& source, const ConstraintSpec& spec) {
  if (spec.mode() != ConstraintMode::Inequality)
    fail(ErrorCode::InvalidArgument, "solve_budget expects an inequality-mode constraint");

  const double budget = spec.beta();
  const double beta_min = source.min_positive_prob();
  if (budget < beta_min - kEndpointTol)
    fail(ErrorCode::InfeasibleBudget,
         "budget " + std::to_string(budget) + " is below the smallest reachable average " +
             std::to_string(beta_min) + "; feasible budgets lie in " +
             range_text(beta_min, 1.0));

  const double beta_neutral = source.probs().square().sum();
  if (budget >= beta_neutral) {
    // Inactive constraint: the unconstrained minimizer U = P already
    // satisfies sum(P U) = beta_neutral <= budget.
    return tilt(source, ImportanceCoefficient(0.0));
  }
  return tilt(source, solve_omega(source, ConstraintSpec::with_budget(
                                              budget, ConstraintMode::Equality)));
}

}  // namespace mimtilt
