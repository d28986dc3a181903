#include "mimtilt/tilt.hpp"

#include <cmath>
#include <limits>

namespace mimtilt {

namespace {

struct TiltCore {
  Eigen::ArrayXd utility;
  double beta;
  double log_mim;
};

// Shared log-domain evaluation. Zero atoms must end up with exactly zero
// tilted mass; vectorized exp may map their -inf log-weight to a denormal,
// so they are masked explicitly.
TiltCore tilt_core(const Eigen::ArrayXd& p, double omega) {
  Eigen::ArrayXd log_w = p.log() + omega * (1.0 - p);
  const double shift = log_w.maxCoeff();
  Eigen::ArrayXd w = (p > 0.0).select((log_w - shift).exp(), 0.0);
  const double s = w.sum();

  TiltCore core;
  core.utility = w / s;
  core.beta = (p * core.utility).sum();
  core.log_mim = shift + std::log(s);
  return core;
}

MimTotal mim_from_log(double log_mim) {
  const double value = std::exp(log_mim);
  const bool representable = std::isfinite(value) && value > 0.0;
  return {representable ? value : std::numeric_limits<double>::quiet_NaN(), log_mim,
          !representable};
}

}  // namespace

ImportanceCoefficient::ImportanceCoefficient(double omega) : omega_(omega) {
  if (!std::isfinite(omega))
    fail(ErrorCode::InvalidArgument, "importance coefficient must be finite");
}

TiltResult tilt(const Pmf& source, ImportanceCoefficient omega) {
  if (source.support_size() < 1) fail(ErrorCode::DegeneratePmf, "no positive atoms");

  const double w = omega.value();
  TiltCore core = tilt_core(source.probs(), w);
  MimTotal mim = mim_from_log(core.log_mim);

  // D(U*||P) = omega * (1 - beta) - ln Z; tiny negative roundoff clamped.
  double kl = w * (1.0 - core.beta) - core.log_mim;
  if (kl < 0.0) kl = 0.0;

  return TiltResult{Pmf::from_probs(source.labels(), std::move(core.utility)),
                    w,
                    core.beta,
                    1.0 - core.beta,
                    mim.value,
                    mim.log_value,
                    mim.overflow,
                    kl};
}

MimTotal mim_total(const Pmf& source, ImportanceCoefficient omega) {
  if (source.support_size() < 1) fail(ErrorCode::DegeneratePmf, "no positive atoms");
  return mim_from_log(tilt_core(source.probs(), omega.value()).log_mim);
}

Renyi2 renyi2_identity(const Pmf& source) {
  const double beta0 = source.probs().square().sum();
  return {beta0, -std::log(beta0)};
}

Pmf limit_distribution(const Pmf& source, LimitSign sign) {
  const Eigen::ArrayXd& p = source.probs();
  const double extremum =
      sign == LimitSign::PositiveInfinity ? source.min_positive_prob() : source.max_prob();

  // Atoms tied with the extremum keep exactly equal weights at every finite
  // omega, so the limit splits evenly among them.
  Eigen::ArrayXd limit = Eigen::ArrayXd::Zero(p.size());
  for (Eigen::Index i = 0; i < p.size(); ++i)
    if (p[i] > 0.0 && std::abs(p[i] - extremum) <= 1e-12 * extremum) limit[i] = 1.0;

  return Pmf::from_probs(source.labels(), std::move(limit), /*renormalize=*/true);
}

}  // namespace mimtilt
