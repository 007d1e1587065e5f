#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <vector>

#include "tsteg/radial.hpp"
#include "tsteg/rng.hpp"

namespace tsteg {

// Balanced homodyne parameters: local-oscillator amplitude and the decision
// cutoff on the photocount difference m.
struct HomodyneModel {
  double beta = 100.0;
  double m_c = 0.0;
};

struct SimConfig {
  std::size_t samples = 100000;
  std::uint64_t seed = 12345;
};

// Local-oscillator amplitude used by experiment drivers when none is given.
inline double default_beta(double n_bar) {
  return 100.0 * std::sqrt(std::max(n_bar, 1.0));
}

// Gaussian law of the photocount difference for signal radius r (signed):
// mean 2 beta r, variance beta^2 + r^2.
struct OutcomeLaw {
  double mean = 0.0;
  double variance = 0.0;
};

inline OutcomeLaw outcome_law(double r, double beta) {
  if (!(beta > 0.0)) throw std::invalid_argument("beta must be > 0");
  return {2.0 * beta * r, beta * beta + r * r};
}

// Radial and outcome moments of a conditional law under the Gaussian model:
// mean_m = 2 beta E[r], var_m = 4 beta^2 Var(r) + beta^2 + E[r^2].
struct EnsembleStats {
  double mean_r = 0.0;
  double mean_r2 = 0.0;
  double var_r = 0.0;
  double mean_m = 0.0;
  double var_m = 0.0;
};

inline EnsembleStats ensemble_stats(const RadialLaw& law, double beta) {
  if (!(beta > 0.0)) throw std::invalid_argument("beta must be > 0");
  EnsembleStats st;
  st.mean_r = radial_expectation(law, [](double r) { return r; });
  st.mean_r2 = radial_expectation(law, [](double r) { return r * r; });
  st.var_r = st.mean_r2 - st.mean_r * st.mean_r;
  st.mean_m = 2.0 * beta * st.mean_r;
  st.var_m = 4.0 * beta * beta * st.var_r + beta * beta + st.mean_r2;
  return st;
}

namespace detail {

inline double normal_cdf(double x, double mean, double variance) {
  return 0.5 * std::erfc((mean - x) / std::sqrt(2.0 * variance));
}

// Golden-section minimizer for unimodal risks.
template <class F>
double golden_minimize(F f, double lo, double hi, double tol) {
  const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = lo, b = hi;
  double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  while (b - a > tol) {
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - phi * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + phi * (b - a);
      f2 = f(x2);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace detail

// Equal-prior error probability of thresholding m at m_c between the
// outcome Gaussians of radii r0 > r1 (deciding 0 iff m >= m_c):
//   (1/4) (2 + erf((m_c-2 beta r0)/sqrt(2(beta^2+r0^2)))
//            - erf((m_c-2 beta r1)/sqrt(2(beta^2+r1^2)))).
inline double closed_form_perr_pair(double r0, double r1, double beta,
                                    double m_c) {
  if (!(r0 > r1)) throw std::invalid_argument("requires r0 > r1");
  if (!(beta > 0.0)) throw std::invalid_argument("beta must be > 0");
  const double z0 =
      (m_c - 2.0 * beta * r0) / std::sqrt(2.0 * (beta * beta + r0 * r0));
  const double z1 =
      (m_c - 2.0 * beta * r1) / std::sqrt(2.0 * (beta * beta + r1 * r1));
  const double p = 0.25 * (2.0 + std::erf(z0) - std::erf(z1));
  return std::clamp(p, 0.0, 0.5);
}

// Near-optimal cutoff for priors (1-f, f) under the large-oscillator
// Gaussian model: beta (r0 + r1) + beta ln(f/(1-f)) / (2 (r0 - r1)). As
// f -> 0 the cutoff runs to -inf and the receiver never guesses 1.
inline double weighted_cutoff(double r0, double r1, double beta, double f) {
  if (r0 == r1) throw std::invalid_argument("requires r0 != r1");
  if (!(f > 0.0 && f < 1.0)) throw std::invalid_argument("f must be in (0,1)");
  return beta * (r0 + r1) -
         beta * std::log(1.0 / f - 1.0) / (2.0 * (r0 - r1));
}

// Prior-weighted risk (1-f) P(m < m_c | r0) + f P(m >= m_c | r1).
inline double closed_form_perr_weighted(double r0, double r1, double beta,
                                        double m_c, double f) {
  if (!(r0 > r1)) throw std::invalid_argument("requires r0 > r1");
  if (!(f >= 0.0 && f <= 1.0))
    throw std::invalid_argument("f must be in [0,1]");
  const auto g0 = outcome_law(r0, beta);
  const auto g1 = outcome_law(r1, beta);
  return (1.0 - f) * detail::normal_cdf(m_c, g0.mean, g0.variance) +
         f * (1.0 - detail::normal_cdf(m_c, g1.mean, g1.variance));
}

// Cutoff minimizing the pair risk, by golden-section refinement between the
// two outcome means.
inline double optimal_cutoff_pair(double r0, double r1, double beta) {
  const double lo = 2.0 * beta * r1, hi = 2.0 * beta * r0;
  return detail::golden_minimize(
      [&](double m) { return closed_form_perr_pair(r0, r1, beta, m); }, lo,
      hi, 1e-9 * (hi - lo) + 1e-12);
}

inline double optimal_cutoff_weighted(double r0, double r1, double beta,
                                      double f) {
  const double span = 2.0 * beta * (r0 - r1);
  const double lo = 2.0 * beta * r1 - span, hi = 2.0 * beta * r0 + span;
  return detail::golden_minimize(
      [&](double m) { return closed_form_perr_weighted(r0, r1, beta, m, f); },
      lo, hi, 1e-9 * (hi - lo) + 1e-12);
}

// Measurement settings tuned to a known pair at equal priors.
inline HomodyneModel optimal_homodyne_model(double r0, double r1,
                                            double beta) {
  return {beta, optimal_cutoff_pair(r0, r1, beta)};
}

namespace detail {

// Quadrature-operator moment polynomial: F_k(r) equals the k-th moment of a
// unit-variance Gaussian centered at 2r, expressed with the coefficient form
//   even k: sum_j k! 2^{3j-k/2} / ((2j)! (k/2-j)!) r^{2j}
//   odd  k: sum_j k! 2^{3j-(k-3)/2} / ((2j+1)! ((k-1)/2-j)!) r^{2j+1}.
inline double fk_polynomial(unsigned k, double r) {
  auto fact = [](unsigned m) { return std::tgamma(double(m) + 1.0); };
  const int ik = static_cast<int>(k);
  double sum = 0.0;
  if (k % 2 == 0) {
    for (unsigned j = 0; j <= k / 2; ++j)
      sum += fact(k) * std::ldexp(1.0, 3 * int(j) - ik / 2) /
             (fact(2 * j) * fact(k / 2 - j)) * std::pow(r, 2.0 * j);
  } else {
    for (unsigned j = 0; j <= (k - 1) / 2; ++j)
      sum += fact(k) * std::ldexp(1.0, 3 * int(j) - (ik - 3) / 2) /
             (fact(2 * j + 1) * fact((k - 1) / 2 - j)) *
             std::pow(r, 2.0 * j + 1.0);
  }
  return sum;
}

}  // namespace detail

// Leading-order outcome moment E[m^k] = beta^k E_law[F_k(r)]; exact up to
// O(r^2/beta^2) relative corrections from the oscillator approximation.
inline double moment_m(unsigned k, double beta, const RadialLaw& law) {
  if (k < 1) throw std::invalid_argument("moment order must be >= 1");
  if (!(beta > 0.0)) throw std::invalid_argument("beta must be > 0");
  const double expect = radial_expectation(
      law, [&](double r) { return detail::fk_polynomial(k, r); });
  return std::pow(beta, double(k)) * expect;
}

// Central moment M_n = sum_k C(n,k) (-1)^{n-k} E[m^k] mean^{n-k} from the
// leading-order raw moments.
inline double central_moment_m(unsigned n, double beta, const RadialLaw& law) {
  const double mean = moment_m(1, beta, law);
  double sum = (n % 2 == 0 ? 1.0 : -1.0) * std::pow(mean, double(n));  // k = 0
  double binom = 1.0;
  for (unsigned k = 1; k <= n; ++k) {
    binom = binom * double(n - k + 1) / double(k);
    const double sign = ((n - k) % 2 == 0) ? 1.0 : -1.0;
    sum += binom * sign * moment_m(k, beta, law) *
           std::pow(mean, double(n - k));
  }
  return sum;
}

// Two-sided moment (Markov) bound on the equal-prior error probability at
// cutoff m_c strictly between the two outcome means:
//   (1/2) [ M_n(m1) / (m_c - mean1)^n + M_n(m0) / (mean0 - m_c)^n ].
inline double markov_bound_perr(unsigned n_order, double n_bar, double beta,
                                double m_c) {
  if (n_order < 2 || n_order % 2 != 0)
    throw std::invalid_argument("moment order must be even and >= 2");
  const RadialLaw law0 = RadialLaw::left(n_bar, 0.5);
  const RadialLaw law1 = RadialLaw::right_flipped(n_bar, 0.5);
  const double mean0 = moment_m(1, beta, law0);
  const double mean1 = moment_m(1, beta, law1);
  if (!(m_c > mean1 && m_c < mean0))
    throw std::invalid_argument("m_c must lie strictly between the means");
  const double m0 = central_moment_m(n_order, beta, law0);
  const double m1 = central_moment_m(n_order, beta, law1);
  return 0.5 * (m1 / std::pow(m_c - mean1, double(n_order)) +
                m0 / std::pow(mean0 - m_c, double(n_order)));
}

// One cell of the simulated error-probability surface.
struct SurfacePoint {
  double n_bar = 0.0;
  double r_c = 0.0;
  double p_err = 0.0;
  double std_err = 0.0;
};

// Monte-Carlo transmission simulation over a (n_bar, r_c) grid. Bits carry
// prior f; bit 0 draws from Left(f), bit 1 from RightFlipped(f); the
// receiver decides 0 iff m >= m_c with m_c = -2 beta sqrt(n_bar) r_c.
// Each grid cell uses its own counter stream, so results do not depend on
// evaluation order. beta <= 0 selects default_beta(n_bar).
inline std::vector<SurfacePoint> simulate_perr_surface(
    std::span<const double> n_bar_grid, std::span<const double> r_c_grid,
    double beta, double f, const SimConfig& cfg) {
  if (n_bar_grid.empty() || r_c_grid.empty())
    throw std::invalid_argument("grids must be nonempty");
  if (cfg.samples < 1) throw std::invalid_argument("samples must be >= 1");
  std::vector<SurfacePoint> table;
  table.reserve(n_bar_grid.size() * r_c_grid.size());
  for (std::size_t i = 0; i < n_bar_grid.size(); ++i) {
    const double nb = n_bar_grid[i];
    const double b = beta > 0.0 ? beta : default_beta(nb);
    const RadialLaw law0 = RadialLaw::left(nb, f);
    const RadialLaw law1 = RadialLaw::right_flipped(nb, f);
    for (std::size_t j = 0; j < r_c_grid.size(); ++j) {
      const double rc = r_c_grid[j];
      const double m_c = -2.0 * b * std::sqrt(nb) * rc;
      Philox4x32 rng(cfg.seed, i * r_c_grid.size() + j);
      std::normal_distribution<double> gauss(0.0, 1.0);
      std::size_t errors = 0;
      for (std::size_t s = 0; s < cfg.samples; ++s) {
        const bool bit1 = uniform_unit(rng) < f;
        const double r = sample_radius(bit1 ? law1 : law0, rng);
        const auto lawm = outcome_law(r, b);
        const double m = lawm.mean + std::sqrt(lawm.variance) * gauss(rng);
        const bool decide1 = m < m_c;
        errors += decide1 != bit1;
      }
      const double p = double(errors) / double(cfg.samples);
      table.push_back(
          {nb, rc, p, std::sqrt(p * (1.0 - p) / double(cfg.samples))});
    }
  }
  return table;
}

}  // namespace tsteg
