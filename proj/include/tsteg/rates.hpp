#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>

#include "tsteg/codec.hpp"

namespace tsteg {

// Outcome bundle every scheme evaluator produces.
struct RateReport {
  double p_err = 0.0;  // in [0, 1/2]
  double R = 0.0;      // message bits per channel use
  double K = 0.0;      // secret-key bits per channel use
  double ratio = std::numeric_limits<double>::infinity();  // R/K

  static RateReport from(double p_err, double R, double K) {
    RateReport rep{p_err, R, K,
                   std::numeric_limits<double>::infinity()};
    if (K > 0.0) rep.ratio = R / K;
    return rep;
  }
};

// Binary channel seen by the receiver: p00 = P(decide 0 | sent 0),
// p01 = P(decide 0 | sent 1), f = prior of sending 1.
struct ChannelProbs {
  double p00 = 1.0;
  double p01 = 0.0;
  double f = 0.5;
};

// Binary symmetric channel rate 1 - h(p_err).
inline double rate_from_perr(double p_err) {
  return 1.0 - binary_entropy(p_err);
}

// Total probability of deciding 0: q = (1-f) p00 + f p01.
inline double mixture_q(const ChannelProbs& c) {
  return (1.0 - c.f) * c.p00 + c.f * c.p01;
}

namespace detail {
// Mutual information h(q) - h(q|x) of the binary channel, unclamped.
inline double channel_information(const ChannelProbs& c) {
  return binary_entropy(mixture_q(c)) -
         (c.f * binary_entropy(c.p01) + (1.0 - c.f) * binary_entropy(c.p00));
}
}  // namespace detail

// Communication rate of the binary channel; negative values (possible only
// through noise in estimated probabilities) clamp to zero.
inline double rate_general(const ChannelProbs& c) {
  return std::max(0.0, detail::channel_information(c));
}

// Secret-key consumption h(f) - I(X;Y) needed to make the transmitted
// ensemble look thermal. Nonnegative for every valid channel.
inline double key_rate_distribution(const ChannelProbs& c) {
  return binary_entropy(c.f) - binary_entropy(mixture_q(c)) +
         c.f * binary_entropy(c.p01) + (1.0 - c.f) * binary_entropy(c.p00);
}

// Extra key to name one of the (1-f)M x fM state pairs per transmitted bit.
inline double pairwise_key_overhead(double f, std::size_t M) {
  if (!(f > 0.0 && f < 1.0)) throw std::invalid_argument("f must be in (0,1)");
  if (M < 2) throw std::invalid_argument("M must be >= 2");
  return std::log2(f * (1.0 - f) * double(M) * double(M));
}

}  // namespace tsteg
