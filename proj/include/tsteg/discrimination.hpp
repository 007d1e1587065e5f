#pragma once

#include <boost/math/distributions/poisson.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <stdexcept>

#include "tsteg/rates.hpp"
#include "tsteg/state.hpp"
#include "tsteg/thermal.hpp"

namespace tsteg {

// |<alpha0|alpha1>| = exp(-|alpha0 - alpha1|^2 / 2).
inline double coherent_overlap(const CoherentAmplitude& a0,
                               const CoherentAmplitude& a1) {
  const double d = std::abs(a0.value() - a1.value());
  return std::exp(-0.5 * d * d);
}

// Error bound for the opposite-phase encoding at the best state choice
// (r0 = 0, r1 = split median): (1/2)(1 - sqrt(1 - 2^-n_bar)).
inline double vertical_angle_perr_bound(double n_bar) {
  if (n_bar < 0.0) throw std::invalid_argument("n_bar must be >= 0");
  return 0.5 * (1.0 - std::sqrt(1.0 - std::pow(2.0, -n_bar)));
}

// Two pure coherent states with prior f on alpha1.
struct PureStatePair {
  CoherentAmplitude alpha0;
  CoherentAmplitude alpha1;
  double prior_f = 0.5;
};

namespace detail {

inline void check_pair(const PureStatePair& pair) {
  if (!(pair.prior_f > 0.0 && pair.prior_f < 1.0))
    throw std::invalid_argument("prior_f must be in (0,1)");
}

// Eigenvalues of M = (1-f)|a0><a0| - f|a1><a1| restricted to the span,
// with the overlap taken real nonnegative.
struct HelstromEigen {
  double eta, lambda_plus, lambda_minus;
  double a, b, d;  // matrix in the orthogonalized {|a0>, |a0_perp>} basis
};

inline HelstromEigen helstrom_eigen(const PureStatePair& pair) {
  const double f = pair.prior_f;
  const double eta = coherent_overlap(pair.alpha0, pair.alpha1);
  const double a = (1.0 - f) - f * eta * eta;
  const double b = -f * eta * std::sqrt(std::max(0.0, 1.0 - eta * eta));
  const double d = -f * (1.0 - eta * eta);
  const double tr = a + d;
  const double disc = std::sqrt(std::max(tr * tr - 4.0 * (a * d - b * b), 0.0));
  return {eta, 0.5 * (tr + disc), 0.5 * (tr - disc), a, b, d};
}

}  // namespace detail

// Minimum-error probability for the pair: (1/2)(1 - sum |eigenvalues|).
// Bounded above by min(f, 1-f).
inline double helstrom_perr_pure(const PureStatePair& pair) {
  detail::check_pair(pair);
  const auto e = detail::helstrom_eigen(pair);
  return 0.5 * (1.0 - (std::abs(e.lambda_plus) + std::abs(e.lambda_minus)));
}

struct MeasurementProbs {
  double p00 = 1.0;  // P(decide 0 | alpha0)
  double p01 = 0.0;  // P(decide 0 | alpha1)
};

// Projections of both states onto the positive eigenvector of M. Identical
// states degenerate to the prior guess: always decide the likelier bit.
inline MeasurementProbs helstrom_measurement_probs(const PureStatePair& pair) {
  detail::check_pair(pair);
  const auto e = detail::helstrom_eigen(pair);
  if (e.eta >= 1.0 - 1e-15) {
    const double always0 = pair.prior_f <= 0.5 ? 1.0 : 0.0;
    return {always0, always0};
  }
  // Eigenvector of the larger eigenvalue; lambda_plus - d > 0 off degeneracy.
  double vx = e.lambda_plus - e.d;
  double vy = e.b;
  const double norm = std::hypot(vx, vy);
  vx /= norm;
  vy /= norm;
  const double p00 = vx * vx;
  const double ortho = std::sqrt(std::max(0.0, 1.0 - e.eta * e.eta));
  const double amp1 = e.eta * vx + ortho * vy;
  return {p00, amp1 * amp1};
}

// Poisson law and its CDF.
struct PoissonLaw {
  double lambda = 0.0;
};

inline double poisson_cdf(const PoissonLaw& law, std::size_t n) {
  if (law.lambda < 0.0) throw std::invalid_argument("lambda must be >= 0");
  if (law.lambda == 0.0) return 1.0;
  boost::math::poisson_distribution<double> p(law.lambda);
  return boost::math::cdf(p, static_cast<double>(n));
}

// Trace distance between the bit-0 and bit-1 split components, by direct
// truncated summation. Ground truth for the closed form below.
inline double distribution_trace_distance_direct(double n_bar, double f,
                                                 std::size_t cutoff) {
  const auto w0 = split_component_state(n_bar, f, 0, cutoff);
  const auto w1 = split_component_state(n_bar, f, 1, cutoff);
  return trace_distance_diagonal(w0, w1);
}

namespace detail {
// Smallest n with Poisson CDF >= 1/2 at lambda = (n_bar+1) ln 2.
inline std::size_t poisson_half_index(double lambda) {
  const PoissonLaw law{lambda};
  std::size_t n = 0;
  while (poisson_cdf(law, n) < 0.5) ++n;
  return n;
}
}  // namespace detail

// Closed-form expression for the f = 1/2 trace distance,
//   2 (1 + (2 Q_N - 1) (n_bar/(n_bar+1))^{N+1} - Qtilde_N),
// with Q at lambda = (n_bar+1) ln 2, Qtilde at lambda = n_bar ln 2 and N the
// Poisson median index. Evaluated verbatim for comparison against the direct
// sum; the two disagree by a non-constant factor, which callers report.
inline double distribution_trace_distance_closed(double n_bar) {
  if (!(n_bar > 0.0)) throw std::invalid_argument("n_bar must be > 0");
  const double lambda = (n_bar + 1.0) * std::numbers::ln2;
  const double lambda_t = n_bar * std::numbers::ln2;
  const std::size_t nh = detail::poisson_half_index(lambda);
  const double Q = poisson_cdf({lambda}, nh);
  const double Qt = poisson_cdf({lambda_t}, nh);
  const double q = n_bar / (n_bar + 1.0);
  return 2.0 * (1.0 + (2.0 * Q - 1.0) * std::pow(q, double(nh) + 1.0) - Qt);
}

// Rate of the keyless distribution scheme: p_err = (1 - T)/2 from the direct
// trace distance at the median split, R = 1 - h(p_err).
inline RateReport distribution_rate_no_key(double n_bar) {
  if (!(n_bar > 0.0)) throw std::invalid_argument("n_bar must be > 0");
  const double T = distribution_trace_distance_direct(
      n_bar, 0.5, split_component_cutoff(n_bar, 0.5));
  const double p_err = 0.5 * (1.0 - T);
  return RateReport::from(p_err, rate_from_perr(p_err), 0.0);
}

}  // namespace tsteg
