#pragma once

#include "mimtilt/pmf.hpp"
#include "mimtilt/solver.hpp"

namespace mimtilt {

/// Relative entropy D(U||P) in nats, with the 0 ln 0 = 0 convention.
/// U must be absolutely continuous w.r.t. P (SupportViolation otherwise).
double kl(const Pmf& usage, const Pmf& source);

/// Upper bound on the probability that the empirical type of n i.i.d. draws
/// from P lands in {T : sum P(a) T(a) <= beta}.
struct SanovBound {
  long n;
  long alphabet_size;
  double divergence_nats;  // D(U*||P) of the constrained minimizer
  double exponent_bits;    // n * D(U*||P) / ln 2
  double bound;            // (n+1)^alphabet_size * 2^(-exponent_bits), may exceed 1
};

/// The bound is computed in the log domain. The constraint is interpreted in
/// inequality mode regardless of spec.mode().
SanovBound sanov_bound(const Pmf& source, const ConstraintSpec& spec, long n);

}  // namespace mimtilt
