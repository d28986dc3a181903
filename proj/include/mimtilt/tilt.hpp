#pragma once

#include "mimtilt/pmf.hpp"

namespace mimtilt {

/// Tilting parameter. Finite by construction; the infinite endpoints are
/// exposed through `limit_distribution` instead.
class ImportanceCoefficient {
 public:
  explicit ImportanceCoefficient(double omega);
  double value() const { return omega_; }

 private:
  double omega_;
};

enum class LimitSign { PositiveInfinity, NegativeInfinity };

/// Total message importance sum(p_i * exp(omega * (1 - p_i))). When the sum
/// is not representable as a positive double, `value` is NaN, `overflow` is
/// set, and `log_value` carries the result.
struct MimTotal {
  double value;
  double log_value;  // nats, always valid
  bool overflow;
};

/// The tilted utility distribution together with its scalar summaries.
struct TiltResult {
  Pmf utility;          // u_j = p_j exp(omega (1 - p_j)) / Z
  double omega;
  double beta;          // sum P(a) u(a), in [p_min, p_max]
  double alpha;         // 1 - beta
  double mim_total;     // Z; NaN when mim_overflow is set
  double log_mim_total; // ln Z
  bool mim_overflow;
  double kl_to_source;  // D(utility || source), nats; 0 iff omega = 0
};

/// Closed-form tilt. Computed in the log domain with a maximum-exponent
/// shift, so any finite omega is safe.
TiltResult tilt(const Pmf& source, ImportanceCoefficient omega);

/// The tilt normalizer on its own. Shares the tilt code path, so it matches
/// TiltResult::mim_total to the last bit.
MimTotal mim_total(const Pmf& source, ImportanceCoefficient omega);

struct Renyi2 {
  double beta0;  // sum p_i^2 = exp(-h2), the neutral usage average
  double h2;     // second-order Renyi entropy, nats
};

Renyi2 renyi2_identity(const Pmf& source);

/// Limit of the tilted family: uniform over the atoms attaining the minimum
/// positive probability (omega -> +inf) or the maximum (omega -> -inf).
/// Reduces to a one-hot vector when the extremum is unique.
Pmf limit_distribution(const Pmf& source, LimitSign sign);

}  // namespace mimtilt
