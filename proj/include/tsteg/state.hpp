#pragma once

#include <cmath>
#include <cstddef>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace tsteg {

// Truncation budget: state constructors choose their Fock cutoff so the
// discarded tail mass stays below this.
inline constexpr double kTailEps = 1e-12;

// Probability weights over Fock occupation numbers n = 0..cutoff-1.
struct NumberDiagonalState {
  std::vector<double> probs;

  std::size_t cutoff() const { return probs.size(); }
  double total() const {
    return std::accumulate(probs.begin(), probs.end(), 0.0);
  }
};

namespace detail {
inline void require_same_cutoff(const NumberDiagonalState& p,
                                const NumberDiagonalState& q) {
  if (p.cutoff() != q.cutoff())
    throw std::invalid_argument("diagonal states have mismatched cutoffs");
}
}  // namespace detail

// Fidelity of two commuting (Fock-diagonal) states: (sum_n sqrt(p_n q_n))^2.
inline double fidelity_diagonal(const NumberDiagonalState& p,
                                const NumberDiagonalState& q) {
  detail::require_same_cutoff(p, q);
  double s = 0.0;
  for (std::size_t n = 0; n < p.cutoff(); ++n)
    s += std::sqrt(p.probs[n] * q.probs[n]);
  return s * s;
}

// Trace distance of two Fock-diagonal states: (1/2) sum_n |p_n - q_n|.
inline double trace_distance_diagonal(const NumberDiagonalState& p,
                                      const NumberDiagonalState& q) {
  detail::require_same_cutoff(p, q);
  double s = 0.0;
  for (std::size_t n = 0; n < p.cutoff(); ++n)
    s += std::abs(p.probs[n] - q.probs[n]);
  return 0.5 * s;
}

}  // namespace tsteg
