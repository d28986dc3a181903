#include "mimtilt/divergence.hpp"

#include <cmath>

namespace mimtilt {

double kl(const Pmf& usage, const Pmf& source) {
  if (usage.labels() != source.labels())
    fail(ErrorCode::LabelMismatch, "usage and source label sets differ");

  double sum = 0.0;
  for (Eigen::Index i = 0; i < usage.size(); ++i) {
    const double u = usage[i];
    if (u == 0.0) continue;
    const double p = source[i];
    if (p == 0.0)
      fail(ErrorCode::SupportViolation,
           "usage puts mass on '" + usage.labels()[i] + "' which has zero source probability");
    sum += u * std::log(u / p);
  }
  return sum < 0.0 ? 0.0 : sum;  // clamp roundoff for usage ~ source
}

SanovBound sanov_bound(const Pmf& source, const ConstraintSpec& spec, long n) {
  if (n < 1) fail(ErrorCode::InvalidArgument, "sequence length must be >= 1");

  const TiltResult minimizer = solve_budget(
      source, ConstraintSpec::with_budget(spec.beta(), ConstraintMode::Inequality));
  const double d_nats = minimizer.kl_to_source;
  const long alphabet = static_cast<long>(source.size());

  const double log_bound =
      static_cast<double>(alphabet) * std::log(static_cast<double>(n) + 1.0) -
      static_cast<double>(n) * d_nats;
  return {n, alphabet, d_nats, static_cast<double>(n) * d_nats / std::log(2.0),
          std::exp(log_bound)};
}

}  // namespace mimtilt
