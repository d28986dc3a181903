#include "mimtilt/pmf.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <unordered_set>

namespace mimtilt {

namespace {

void check_labels_unique(const std::vector<std::string>& labels) {
  std::unordered_set<std::string> seen;
  for (const auto& l : labels) {
    if (!seen.insert(l).second) fail(ErrorCode::DuplicateLabel, "duplicate label '" + l + "'");
  }
}

}  // namespace

Pmf Pmf::from_probs(std::vector<std::string> labels, Eigen::ArrayXd probs, bool renormalize) {
  if (static_cast<Eigen::Index>(labels.size()) != probs.size())
    fail(ErrorCode::LabelMismatch, "labels and probabilities have different lengths");
  if (probs.size() < 2) fail(ErrorCode::TooFewAtoms, "a distribution needs at least 2 atoms");
  check_labels_unique(labels);

  for (Eigen::Index i = 0; i < probs.size(); ++i) {
    if (std::isnan(probs[i]) || probs[i] == std::numeric_limits<double>::infinity())
      fail(ErrorCode::NotNormalized, "probability for '" + labels[i] + "' is not finite");
    if (probs[i] < 0.0)
      fail(ErrorCode::NegativeProb, "probability for '" + labels[i] + "' is negative");
  }

  const double sum = probs.sum();
  if (sum <= 0.0) fail(ErrorCode::NotNormalized, "probabilities sum to zero");
  if (!renormalize && std::abs(sum - 1.0) > 1e-9) {
    std::ostringstream msg;
    msg << "probabilities sum to " << sum << ", not 1 (pass renormalize to accept)";
    fail(ErrorCode::NotNormalized, msg.str());
  }
  probs /= sum;  // exact normalization; a no-op up to roundoff when sum ~ 1

  return Pmf(std::move(labels), std::move(probs));
}

double Pmf::min_positive_prob() const {
  double m = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < probs_.size(); ++i)
    if (probs_[i] > 0.0 && probs_[i] < m) m = probs_[i];
  return m;
}

double Pmf::max_prob() const { return probs_.maxCoeff(); }

std::pair<Pmf, RawUsage> pmf_from_counts(std::vector<std::string> labels, Eigen::ArrayXd counts) {
  if (static_cast<Eigen::Index>(labels.size()) != counts.size())
    fail(ErrorCode::LabelMismatch, "labels and counts have different lengths");
  for (Eigen::Index i = 0; i < counts.size(); ++i) {
    if (!std::isfinite(counts[i]))
      fail(ErrorCode::NotNormalized, "count for '" + labels[i] + "' is not finite");
    if (counts[i] < 0.0) fail(ErrorCode::NegativeProb, "count for '" + labels[i] + "' is negative");
  }
  const double total = counts.sum();
  if (total <= 0.0) fail(ErrorCode::AllZeroCounts, "all counts are zero");

  Pmf pmf = Pmf::from_probs(labels, counts / total, /*renormalize=*/true);
  RawUsage raw{std::move(labels), std::move(counts), std::nullopt};
  return {std::move(pmf), std::move(raw)};
}

FairnessReport fairness(const Pmf& source, const Pmf& usage, double tol) {
  if (source.labels() != usage.labels())
    fail(ErrorCode::LabelMismatch, "source and usage label sets differ");

  const Eigen::Index n = source.size();
  FairnessReport report;
  report.ratios.resize(n);
  report.classification.resize(n);
  report.tolerance = tol;

  for (Eigen::Index i = 0; i < n; ++i) {
    const double p = source[i];
    const double u = usage[i];
    if (p == 0.0) {
      if (u > 0.0)
        fail(ErrorCode::SupportMismatch,
             "usage puts mass on '" + source.labels()[i] + "' which has zero probability");
      report.ratios[i] = 1.0;  // both zero: fair by convention
    } else {
      report.ratios[i] = u / p;
    }
    const double r = report.ratios[i];
    report.classification[i] = r > 1.0 + tol   ? FairnessClass::Overused
                               : r < 1.0 - tol ? FairnessClass::Underused
                                               : FairnessClass::Fair;
  }
  return report;
}

BetaAlpha beta_from_raw(const Pmf& source, const RawUsage& raw) {
  if (source.labels() != raw.labels)
    fail(ErrorCode::LabelMismatch, "source and usage label sets differ");
  const double total = raw.total();
  if (total <= 0.0) fail(ErrorCode::AllZeroCounts, "all usage counts are zero");

  const double beta = (source.probs() * (raw.counts / total)).sum();
  return {beta, 1.0 - beta};
}

}  // namespace mimtilt
