#include "mimtilt/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <vector>

#include "mimtilt/divergence.hpp"

namespace mimtilt {

namespace {

constexpr double kFeasSlack = 1e-12;

struct Support {
  std::vector<Eigen::Index> index;  // positions of positive atoms
  Eigen::ArrayXd p;                 // their probabilities
};

Support support_of(const Pmf& source) {
  Support s;
  for (Eigen::Index i = 0; i < source.size(); ++i)
    if (source[i] > 0.0) s.index.push_back(i);
  s.p.resize(static_cast<Eigen::Index>(s.index.size()));
  for (Eigen::Index k = 0; k < s.p.size(); ++k) s.p[k] = source[s.index[k]];
  return s;
}

Pmf embed(const Pmf& source, const Support& s, const Eigen::ArrayXd& q) {
  Eigen::ArrayXd full = Eigen::ArrayXd::Zero(source.size());
  for (Eigen::Index k = 0; k < q.size(); ++k) full[s.index[k]] = q[k];
  return Pmf::from_probs(source.labels(), std::move(full), /*renormalize=*/true);
}

double kl_restricted(const Eigen::ArrayXd& q, const Eigen::ArrayXd& p) {
  double sum = 0.0;
  for (Eigen::Index i = 0; i < q.size(); ++i)
    if (q[i] > 0.0) sum += q[i] * std::log(q[i] / p[i]);
  return sum < 0.0 ? 0.0 : sum;
}

bool feasible(double dot, double beta, ConstraintMode mode, double slack) {
  if (mode == ConstraintMode::Inequality) return dot <= beta + slack;
  return std::abs(dot - beta) <= slack;
}

// --- exact Euclidean projection onto {x >= 0, sum x = 1 [, p.x constrained]} ---

Eigen::ArrayXd project_simplex(const Eigen::ArrayXd& y) {
  std::vector<double> sorted(y.data(), y.data() + y.size());
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  double css = 0.0, tau = 0.0;
  for (std::size_t k = 0; k < sorted.size(); ++k) {
    css += sorted[k];
    const double t = (css - 1.0) / static_cast<double>(k + 1);
    if (sorted[k] - t > 0.0) tau = t;
  }
  return (y - tau).max(0.0);
}

// Projection onto the simplex intersected with the budget constraint. The
// active-constraint solution is project_simplex(y - nu p) with nu chosen so
// the dot product meets beta; p.x(nu) is monotone in nu, so bisect.
Eigen::ArrayXd project_constrained(const Eigen::ArrayXd& y, const Eigen::ArrayXd& p,
                                   double beta, ConstraintMode mode) {
  Eigen::ArrayXd x = project_simplex(y);
  const double dot = (p * x).sum();
  const bool needs_down = dot > beta + 1e-15;
  const bool needs_up = mode == ConstraintMode::Equality && dot < beta - 1e-15;
  if (!needs_down && !needs_up) return x;

  const double direction = needs_down ? 1.0 : -1.0;
  const auto dot_at = [&](double nu) {
    return (p * project_simplex(y - (direction * nu) * p)).sum();
  };

  double lo = 0.0, hi = 1.0;
  for (int guard = 0; guard < 200; ++guard) {
    const double d = dot_at(hi);
    if (needs_down ? d <= beta : d >= beta) break;
    lo = hi;
    hi *= 2.0;
  }
  for (int it = 0; it < 120; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double d = dot_at(mid);
    if (needs_down ? d > beta : d < beta)
      lo = mid;
    else
      hi = mid;
  }
  return project_simplex(y - (direction * hi) * p);
}

}  // namespace

GridMinimizerResult grid_minimize_kl(const Pmf& source, const ConstraintSpec& spec,
                                     double grid_step) {
  if (source.size() > 4)
    fail(ErrorCode::AlphabetTooLarge, "grid oracle is capped at 4 atoms");
  if (!(grid_step >= 1e-4 - 1e-15 && grid_step <= 1e-1 + 1e-15))
    fail(ErrorCode::InvalidArgument, "grid_step must lie in [1e-4, 1e-1]");

  const Support s = support_of(source);
  const long d = static_cast<long>(s.p.size());
  const long m = std::lround(1.0 / grid_step);
  const double step = 1.0 / static_cast<double>(m);

  // lattice size C(m + d - 1, d - 1); keep the scan under ~5e8 points
  double points = 1.0;
  for (long i = 1; i < d; ++i) points *= static_cast<double>(m + i) / static_cast<double>(i);
  if (points > 5e8)
    fail(ErrorCode::InvalidArgument,
         "lattice too large for this alphabet/step combination; coarsen grid_step");

  const double beta = spec.beta();
  const double slack = spec.mode() == ConstraintMode::Inequality
                           ? kFeasSlack
                           : step * (s.p.maxCoeff() - s.p.minCoeff()) + kFeasSlack;

  // per-coordinate tables over lattice values q = k/m
  std::vector<std::vector<double>> kl_term(d), dot_term(d);
  for (long i = 0; i < d; ++i) {
    kl_term[i].resize(m + 1);
    dot_term[i].resize(m + 1);
    for (long k = 0; k <= m; ++k) {
      const double q = static_cast<double>(k) * step;
      kl_term[i][k] = k == 0 ? 0.0 : q * std::log(q / s.p[i]);
      dot_term[i][k] = s.p[i] * q;
    }
  }

  double best = std::numeric_limits<double>::infinity();
  std::array<long, 4> best_k{};
  long checked = 0;

  const auto consider = [&](const std::array<long, 4>& k, double kl_sum, double dot) {
    if (!feasible(dot, beta, spec.mode(), slack)) return;
    ++checked;
    if (kl_sum < best) {
      best = kl_sum;
      best_k = k;
    }
  };

  if (d == 1) {
    consider({m, 0, 0, 0}, kl_term[0][m], dot_term[0][m]);
  } else if (d == 2) {
    for (long k0 = 0; k0 <= m; ++k0)
      consider({k0, m - k0, 0, 0}, kl_term[0][k0] + kl_term[1][m - k0],
               dot_term[0][k0] + dot_term[1][m - k0]);
  } else if (d == 3) {
    for (long k0 = 0; k0 <= m; ++k0)
      for (long k1 = 0; k1 <= m - k0; ++k1)
        consider({k0, k1, m - k0 - k1, 0},
                 kl_term[0][k0] + kl_term[1][k1] + kl_term[2][m - k0 - k1],
                 dot_term[0][k0] + dot_term[1][k1] + dot_term[2][m - k0 - k1]);
  } else {
    const double* kl2 = kl_term[2].data();
    const double* kl3 = kl_term[3].data();
    const double* dot2 = dot_term[2].data();
    const double* dot3 = dot_term[3].data();
    for (long k0 = 0; k0 <= m; ++k0) {
      for (long k1 = 0; k1 <= m - k0; ++k1) {
        const double kl01 = kl_term[0][k0] + kl_term[1][k1];
        const double dot01 = dot_term[0][k0] + dot_term[1][k1];
        const long rem = m - k0 - k1;
        for (long k2 = 0; k2 <= rem; ++k2) {
          const double dot = dot01 + dot2[k2] + dot3[rem - k2];
          if (!feasible(dot, beta, spec.mode(), slack)) continue;
          ++checked;
          const double v = kl01 + kl2[k2] + kl3[rem - k2];
          if (v < best) {
            best = v;
            best_k = {k0, k1, k2, rem - k2};
          }
        }
      }
    }
  }

  if (checked == 0)
    fail(ErrorCode::NoFeasiblePoint, "no lattice point satisfies the constraint");

  Eigen::ArrayXd q(d);
  for (long i = 0; i < d; ++i) q[i] = static_cast<double>(best_k[i]) * step;
  Pmf argmin = embed(source, s, q);
  return {argmin, kl(argmin, source), step, checked};
}

GridMinimizerResult refine_minimize_kl(const Pmf& source, const ConstraintSpec& spec,
                                       const Pmf& seed) {
  if (seed.labels() != source.labels())
    fail(ErrorCode::LabelMismatch, "seed and source label sets differ");

  const Support s = support_of(source);
  const double beta = spec.beta();

  Eigen::ArrayXd u0(s.p.size());
  double off_support = 0.0;
  for (Eigen::Index k = 0; k < u0.size(); ++k) u0[k] = seed[s.index[k]];
  for (Eigen::Index i = 0; i < seed.size(); ++i)
    if (source[i] == 0.0) off_support += seed[i];
  if (off_support > 1e-12)
    fail(ErrorCode::InfeasibleSeed, "seed puts mass outside the source support");

  const double seed_dot = (s.p * u0).sum();
  if (spec.mode() == ConstraintMode::Inequality) {
    if (seed_dot > beta + 1e-9) fail(ErrorCode::InfeasibleSeed, "seed violates the budget");
  } else {
    if (beta < s.p.minCoeff() - 1e-12 || beta > s.p.maxCoeff() + 1e-12)
      fail(ErrorCode::InfeasibleBudget,
           "no distribution meets the equality constraint at this budget");
    // grid seeds in equality mode carry up to one coarsest-step of slack
    const double tol = 0.1 * (s.p.maxCoeff() - s.p.minCoeff()) + 1e-9;
    if (std::abs(seed_dot - beta) > tol)
      fail(ErrorCode::InfeasibleSeed, "seed is too far from the equality constraint");
  }

  const auto project = [&](const Eigen::ArrayXd& y) {
    return project_constrained(y, s.p, beta, spec.mode());
  };

  Eigen::ArrayXd u = project(u0);
  double d_current = kl_restricted(u, s.p);
  double d_best = d_current;
  Eigen::ArrayXd best = u;
  long evaluated = 1;

  double step = 0.1;
  constexpr long kMaxIterations = 100000;
  for (long it = 0; it < kMaxIterations; ++it) {
    Eigen::ArrayXd grad = (u.max(1e-300) / s.p).log() + 1.0;
    bool improved = false;
    Eigen::ArrayXd candidate;
    double d_candidate = 0.0;
    for (int bt = 0; bt < 60; ++bt) {
      candidate = project(u - step * grad);
      d_candidate = kl_restricted(candidate, s.p);
      ++evaluated;
      if (d_candidate < d_current) {
        improved = true;
        break;
      }
      step *= 0.5;
    }
    if (!improved) break;
    const double gain = d_current - d_candidate;
    u = candidate;
    d_current = d_candidate;
    if (d_current < d_best) {
      d_best = d_current;
      best = u;
    }
    step *= 1.4;
    if (gain < 1e-13) break;
  }

  // never worse than the (projected) seed
  Pmf argmin = embed(source, s, best);
  return {argmin, kl(argmin, source), 1e-9, evaluated};
}

TypeEnumeration enumerate_types(const Pmf& source, const ConstraintSpec& spec, long n) {
  if (source.size() > 3)
    fail(ErrorCode::TooLarge, "type enumeration is capped at 3 atoms");
  if (n > 12) fail(ErrorCode::TooLarge, "type enumeration is capped at n = 12");
  if (n < 1) fail(ErrorCode::InvalidArgument, "sequence length must be >= 1");

  std::array<double, 13> factorial{};
  factorial[0] = 1.0;
  for (long k = 1; k <= 12; ++k)
    factorial[k] = factorial[k - 1] * static_cast<double>(k);

  const Eigen::ArrayXd& p = source.probs();
  const long d = static_cast<long>(p.size());
  const double beta = spec.beta();

  double probability = 0.0;
  long in_event = 0;
  std::array<long, 3> counts{};

  const auto visit = [&](const std::array<long, 3>& k) {
    double dot = 0.0;
    for (long i = 0; i < d; ++i) dot += p[i] * static_cast<double>(k[i]);
    dot /= static_cast<double>(n);
    if (dot > beta + kFeasSlack) return;
    ++in_event;
    double term = factorial[n];
    for (long i = 0; i < d; ++i)
      term = term / factorial[k[i]] * std::pow(p[i], static_cast<double>(k[i]));
    probability += term;
  };

  if (d == 2) {
    for (long k0 = 0; k0 <= n; ++k0) {
      counts = {k0, n - k0, 0};
      visit(counts);
    }
  } else {
    for (long k0 = 0; k0 <= n; ++k0)
      for (long k1 = 0; k1 <= n - k0; ++k1) {
        counts = {k0, k1, n - k0 - k1};
        visit(counts);
      }
  }

  return {n, std::clamp(probability, 0.0, 1.0), in_event};
}

}  // namespace mimtilt
