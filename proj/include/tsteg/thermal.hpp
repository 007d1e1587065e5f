#pragma once

#include <boost/math/distributions/poisson.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "tsteg/radial.hpp"
#include "tsteg/rng.hpp"
#include "tsteg/state.hpp"

namespace tsteg {

// Single-mode thermal channel with mean photon number n_bar, truncated at
// `cutoff` Fock levels (exclusive).
struct ThermalModel {
  double n_bar = 0.0;
  std::size_t cutoff = 1;
};

// Smallest cutoff C with geometric tail mass (n_bar/(n_bar+1))^C < tail_eps.
inline std::size_t thermal_cutoff(double n_bar, double tail_eps = kTailEps) {
  if (n_bar < 0.0) throw std::invalid_argument("n_bar must be >= 0");
  if (n_bar == 0.0) return 1;
  const double q = n_bar / (n_bar + 1.0);
  return static_cast<std::size_t>(std::ceil(std::log(tail_eps) / std::log(q)));
}

inline ThermalModel make_thermal_model(double n_bar,
                                       double tail_eps = kTailEps) {
  return {n_bar, thermal_cutoff(n_bar, tail_eps)};
}

// Smallest cutoff C with Poisson(lambda) tail mass P(X >= C) < tail_eps.
inline std::size_t poisson_cutoff(double lambda, double tail_eps = kTailEps) {
  if (lambda < 0.0) throw std::invalid_argument("lambda must be >= 0");
  if (lambda == 0.0) return 1;
  boost::math::poisson_distribution<double> law(lambda);
  const double k = boost::math::quantile(law, 1.0 - tail_eps);
  return static_cast<std::size_t>(k) + 2;
}

namespace detail {

// Poisson weights exp(-lambda) lambda^n / n!, evaluated in log space so large
// means do not underflow term by term.
inline std::vector<double> poisson_pmf_vector(double lambda,
                                              std::size_t cutoff) {
  std::vector<double> p(cutoff, 0.0);
  if (lambda == 0.0) {
    p[0] = 1.0;
    return p;
  }
  const double ll = std::log(lambda);
  for (std::size_t n = 0; n < cutoff; ++n) {
    const double d = static_cast<double>(n);
    p[n] = std::exp(-lambda + d * ll - std::lgamma(d + 1.0));
  }
  return p;
}

}  // namespace detail

// Geometric Fock weights of the thermal state:
// p_n = (1/(n_bar+1)) (n_bar/(n_bar+1))^n.
inline NumberDiagonalState thermal_fock_distribution(const ThermalModel& m) {
  if (m.n_bar < 0.0) throw std::invalid_argument("n_bar must be >= 0");
  if (m.cutoff < thermal_cutoff(m.n_bar))
    throw std::domain_error("thermal cutoff too small for tail budget");
  NumberDiagonalState st;
  st.probs.resize(m.cutoff);
  const double q = m.n_bar / (m.n_bar + 1.0);
  double w = 1.0 / (m.n_bar + 1.0);
  for (std::size_t n = 0; n < m.cutoff; ++n) {
    st.probs[n] = w;
    w *= q;
  }
  return st;
}

// Amplitude alpha = r e^{i theta} of a coherent state.
struct CoherentAmplitude {
  double r = 0.0;
  double theta = 0.0;

  std::complex<double> value() const { return std::polar(r, theta); }
};

// Fock weights of |alpha| = r: Poisson with mean r^2.
inline NumberDiagonalState coherent_fock_distribution(double r,
                                                      std::size_t cutoff) {
  if (r < 0.0) throw std::invalid_argument("radius must be >= 0");
  if (cutoff < poisson_cutoff(r * r))
    throw std::domain_error("coherent cutoff too small for tail budget");
  return {detail::poisson_pmf_vector(r * r, cutoff)};
}

// Uniform mixture of phase-averaged coherent states with the given radii.
// The cutoff is taken as given; callers wanting the tail budget honored
// should size it with poisson_cutoff(max r^2).
inline NumberDiagonalState phase_averaged_mixture(
    const std::vector<double>& radii, std::size_t cutoff) {
  if (radii.empty())
    throw std::invalid_argument("mixture needs at least one radius");
  NumberDiagonalState st;
  st.probs.assign(cutoff, 0.0);
  for (double r : radii) {
    const auto p = detail::poisson_pmf_vector(r * r, cutoff);
    for (std::size_t n = 0; n < cutoff; ++n) st.probs[n] += p[n];
  }
  const double inv = 1.0 / static_cast<double>(radii.size());
  for (double& w : st.probs) w *= inv;
  return st;
}

// Mixture of coherent states at L equally spaced phases per radius. Builds
// the full cutoff x cutoff matrix, whose entries vanish unless n - n' is a
// multiple of L, and returns the diagonal. For L > cutoff this reduces to
// phase_averaged_mixture. Intended for small cutoffs.
inline NumberDiagonalState discretized_circle_state(
    const std::vector<double>& radii, std::size_t L, std::size_t cutoff) {
  if (radii.empty())
    throw std::invalid_argument("mixture needs at least one radius");
  if (L == 0) throw std::invalid_argument("L must be >= 1");

  std::vector<std::complex<double>> mat(cutoff * cutoff, 0.0);
  const double norm = 1.0 / (static_cast<double>(radii.size()) *
                             static_cast<double>(L));
  for (double r : radii) {
    for (std::size_t k = 0; k < L; ++k) {
      const double phase = 2.0 * std::numbers::pi * static_cast<double>(k) /
                           static_cast<double>(L);
      for (std::size_t n = 0; n < cutoff; ++n) {
        for (std::size_t np = 0; np < cutoff; ++np) {
          // <n|alpha><alpha|n'> with alpha = r e^{i phase}, in log space.
          const double dn = static_cast<double>(n);
          const double dnp = static_cast<double>(np);
          double mag;
          if (r == 0.0) {
            mag = (n == 0 && np == 0) ? 1.0 : 0.0;
          } else {
            mag = std::exp(-r * r + (dn + dnp) * std::log(r) -
                           0.5 * (std::lgamma(dn + 1.0) +
                                  std::lgamma(dnp + 1.0)));
          }
          mat[n * cutoff + np] +=
              norm * mag *
              std::exp(std::complex<double>(0.0, phase * (dn - dnp)));
        }
      }
    }
  }
  NumberDiagonalState st;
  st.probs.resize(cutoff);
  for (std::size_t n = 0; n < cutoff; ++n)
    st.probs[n] = mat[n * cutoff + n].real();
  return st;
}

// Fock weights of a phase-averaged, radially truncated coherent mixture: the
// bit-0 (left of the split radius) or bit-1 (right of it) component of the
// thermal state's Rayleigh decomposition. Each entry is the quadrature
// integral of the conditional radial density against Poisson_n(r^2).
inline NumberDiagonalState split_component_state(double n_bar, double f,
                                                 int bit, std::size_t cutoff) {
  if (bit != 0 && bit != 1) throw std::invalid_argument("bit must be 0 or 1");
  const RadialLaw law = bit == 0 ? RadialLaw::left(n_bar, f)
                                 : RadialLaw::right(n_bar, f);
  NumberDiagonalState st;
  st.probs.resize(cutoff);
  for (std::size_t n = 0; n < cutoff; ++n) {
    const double dn = static_cast<double>(n);
    st.probs[n] = radial_expectation(law, [&](double r) {
      const double rr = r * r;
      if (rr == 0.0) return n == 0 ? 1.0 : 0.0;
      return std::exp(-rr + dn * std::log(rr) - std::lgamma(dn + 1.0));
    });
  }
  return st;
}

// Tail-safe cutoff for split components: both halves decay at least as fast
// as thermal weights divided by the component mass.
inline std::size_t split_component_cutoff(double n_bar, double f,
                                          double tail_eps = kTailEps) {
  const double mass = std::min(f, 1.0 - f);
  return thermal_cutoff(n_bar, tail_eps * mass);
}

// Monte-Carlo estimate of sqrt(fidelity) between the thermal state and a
// uniform mixture of M phase-averaged coherent states with Rayleigh radii.
struct McFidelityResult {
  double mean_sqrt_fidelity = 0.0;
  double std_err = 0.0;
};

inline McFidelityResult mc_fidelity_bound(double n_bar, std::size_t M,
                                          std::size_t ensembles,
                                          std::uint64_t seed) {
  if (M < 1 || ensembles < 1)
    throw std::invalid_argument("M and ensembles must be >= 1");
  const RadialLaw law = RadialLaw::full(n_bar);
  double sum = 0.0, sum2 = 0.0;
  std::vector<double> radii(M);
  for (std::size_t e = 0; e < ensembles; ++e) {
    Philox4x32 rng(seed, e);  // one stream per ensemble
    double lam_max = 0.0;
    for (auto& r : radii) {
      r = sample_radius(law, rng);
      lam_max = std::max(lam_max, r * r);
    }
    const std::size_t cutoff =
        std::max(thermal_cutoff(n_bar), poisson_cutoff(lam_max));
    const auto mix = phase_averaged_mixture(radii, cutoff);
    const auto th = thermal_fock_distribution({n_bar, cutoff});
    const double s = std::sqrt(fidelity_diagonal(mix, th));
    sum += s;
    sum2 += s * s;
  }
  const double n = static_cast<double>(ensembles);
  const double mean = sum / n;
  double var = (sum2 - n * mean * mean) / std::max(n - 1.0, 1.0);
  var = std::max(var, 0.0);
  return {mean, std::sqrt(var / n)};
}

}  // namespace tsteg
