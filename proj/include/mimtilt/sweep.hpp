#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mimtilt/solver.hpp"

namespace mimtilt {

struct SweepRow {
  double omega;
  double beta;
  Eigen::ArrayXd utility;
};

/// Ordered sweep of the tilted family, one row per grid point. Omega-axis
/// sweeps are ordered by omega ascending; beta-axis sweeps by beta ascending
/// (omega then descends, since beta(omega) is strictly decreasing).
struct SweepTable {
  std::vector<SweepRow> rows;
  std::vector<std::string> labels;
  std::uint64_t source_hash = 0;
};

/// Inclusive range start:stop:step; stop is included within step/2.
struct SweepRange {
  double start;
  double stop;
  double step;
};

SweepTable sweep_omega(const Pmf& source, const SweepRange& range);

/// Every grid point must lie strictly inside the feasible interval
/// (beta_min, beta_max); each point is inverted through solve_omega.
SweepTable sweep_beta(const Pmf& source, const SweepRange& range);

/// CSV with header `omega,beta,<label_1>,...,<label_k>` and values printed
/// with 17 significant digits, so identical inputs give identical bytes.
std::string sweep_to_csv(const SweepTable& table);

}  // namespace mimtilt
