#pragma once

#include <Eigen/Core>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mimtilt/errors.hpp"

namespace mimtilt {

/// Validated finite discrete distribution with ordered, unique labels.
///
/// Invariants after construction: probabilities are nonnegative, sum to one
/// within 1e-12, at least two atoms, labels unique. Atoms with zero
/// probability are allowed; `min_positive_prob` ignores them.
/// Immutable after construction.
class Pmf {
 public:
  /// Build from explicit probabilities. Unless `renormalize` is set, the sum
  /// must already be within 1e-9 of one; the stored vector is then divided by
  /// its sum so downstream code sees an exactly normalized distribution.
  static Pmf from_probs(std::vector<std::string> labels, Eigen::ArrayXd probs,
                        bool renormalize = false);

  const std::vector<std::string>& labels() const { return labels_; }
  const Eigen::ArrayXd& probs() const { return probs_; }
  Eigen::Index size() const { return probs_.size(); }
  double operator[](Eigen::Index i) const { return probs_[i]; }

  /// Smallest probability over positive atoms.
  double min_positive_prob() const;
  double max_prob() const;
  Eigen::Index support_size() const { return (probs_ > 0.0).count(); }

 private:
  Pmf(std::vector<std::string> labels, Eigen::ArrayXd probs)
      : labels_(std::move(labels)), probs_(std::move(probs)) {}

  std::vector<std::string> labels_;
  Eigen::ArrayXd probs_;
};

/// Unnormalized usage counts, kept alongside the normalized Pmf so the raw
/// scale survives ingestion. `budget_raw` is an optional budget in the same
/// units as the counts.
struct RawUsage {
  std::vector<std::string> labels;
  Eigen::ArrayXd counts;
  std::optional<double> budget_raw;

  double total() const { return counts.sum(); }
};

enum class FairnessClass { Underused, Fair, Overused };

/// Per-label usage/occurrence ratios with a three-way classification.
struct FairnessReport {
  Eigen::ArrayXd ratios;  // U(a)/P(a); defined as 1 where both are zero
  std::vector<FairnessClass> classification;
  double tolerance;
};

/// Normalize usage counts into a Pmf, preserving the raw counts.
std::pair<Pmf, RawUsage> pmf_from_counts(std::vector<std::string> labels,
                                         Eigen::ArrayXd counts);

/// Classify each atom as overused/fair/underused by the ratio U(a)/P(a).
/// Atoms with P(a)=0 and U(a)=0 are fair with ratio 1; U(a)>0 where P(a)=0
/// is a SupportMismatch error.
FairnessReport fairness(const Pmf& source, const Pmf& usage, double tol = 1e-9);

struct BetaAlpha {
  double beta;
  double alpha;  // 1 - beta
};

/// P-weighted average usage of the normalized counts: beta = sum P(a) U(a).
BetaAlpha beta_from_raw(const Pmf& source, const RawUsage& raw);

}  // namespace mimtilt
