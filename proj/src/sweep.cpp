#include "mimtilt/sweep.hpp"

#include <cmath>
#include <cstdio>

namespace mimtilt {

namespace {

std::vector<double> grid_points(const SweepRange& range) {
  if (!(std::isfinite(range.start) && std::isfinite(range.stop) && std::isfinite(range.step)))
    fail(ErrorCode::InvalidArgument, "sweep range must be finite");
  if (range.step <= 0.0) fail(ErrorCode::InvalidArgument, "sweep step must be positive");
  if (range.stop < range.start)
    fail(ErrorCode::InvalidArgument, "sweep stop must not precede start");

  std::vector<double> points;
  for (long k = 0;; ++k) {
    const double value = range.start + static_cast<double>(k) * range.step;
    if (value > range.stop + 0.5 * range.step) break;
    points.push_back(value);
  }
  return points;
}

std::string format_value(double v) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.17g", v);
  return buffer;
}

}  // namespace

SweepTable sweep_omega(const Pmf& source, const SweepRange& range) {
  SweepTable table;
  table.labels = source.labels();
  for (double omega : grid_points(range)) {
    TiltResult res = tilt(source, ImportanceCoefficient(omega));
    table.rows.push_back({omega, res.beta, res.utility.probs()});
  }
  return table;
}

SweepTable sweep_beta(const Pmf& source, const SweepRange& range) {
  const FeasibleRange feasible = feasible_range(source);
  const std::vector<double> points = grid_points(range);
  for (double beta : points) {
    if (beta <= feasible.beta_min + 1e-12 || beta >= feasible.beta_max - 1e-12)
      fail(ErrorCode::BetaOutOfRange,
           "sweep point " + std::to_string(beta) +
               " leaves the open feasible interval (" + std::to_string(feasible.beta_min) +
               ", " + std::to_string(feasible.beta_max) + ")");
  }

  SweepTable table;
  table.labels = source.labels();
  for (double beta : points) {
    ImportanceCoefficient omega =
        solve_omega(source, ConstraintSpec::with_budget(beta, ConstraintMode::Equality));
    TiltResult res = tilt(source, omega);
    table.rows.push_back({omega.value(), res.beta, res.utility.probs()});
  }
  return table;
}

std::string sweep_to_csv(const SweepTable& table) {
  std::string out = "omega,beta";
  for (const auto& label : table.labels) {
    out += ',';
    out += label;
  }
  out += '\n';
  for (const auto& row : table.rows) {
    out += format_value(row.omega);
    out += ',';
    out += format_value(row.beta);
    for (Eigen::Index i = 0; i < row.utility.size(); ++i) {
      out += ',';
      out += format_value(row.utility[i]);
    }
    out += '\n';
  }
  return out;
}

}  // namespace mimtilt
