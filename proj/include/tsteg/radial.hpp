#pragma once

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "tsteg/rng.hpp"

namespace tsteg {

// Median of the Rayleigh radial density p(r) = (2/n_bar) r exp(-r^2/n_bar).
inline double rayleigh_median(double n_bar) {
  if (n_bar < 0.0) throw std::invalid_argument("n_bar must be >= 0");
  return std::sqrt(n_bar * std::numbers::ln2);
}

// Radius r_f leaving a fraction f of the Rayleigh mass on [r_f, inf):
// r_f = sqrt(n_bar ln(1/f)).
inline double split_radius(double n_bar, double f) {
  if (n_bar < 0.0) throw std::invalid_argument("n_bar must be >= 0");
  if (!(f > 0.0 && f < 1.0)) throw std::invalid_argument("f must be in (0,1)");
  return std::sqrt(-n_bar * std::log(f));
}

// A Rayleigh radial density, possibly truncated at the split radius r_f and
// possibly reflected to the negative axis. Each variant is a conditional
// density normalized over its own support:
//   Full          [0, inf)
//   Left          [0, r_f),      mass 1-f of the untruncated law
//   Right         [r_f, inf),    mass f
//   RightFlipped  (-inf, -r_f],  Right mapped r -> -r
struct RadialLaw {
  enum class Support { Full, Left, Right, RightFlipped };

  double n_bar = 0.0;
  Support support = Support::Full;
  double f = 0.5;  // right-tail mass fraction; unused for Full

  static RadialLaw full(double n_bar) { return {n_bar, Support::Full, 0.5}; }
  static RadialLaw left(double n_bar, double f) {
    check(n_bar, f);
    return {n_bar, Support::Left, f};
  }
  static RadialLaw right(double n_bar, double f) {
    check(n_bar, f);
    return {n_bar, Support::Right, f};
  }
  static RadialLaw right_flipped(double n_bar, double f) {
    check(n_bar, f);
    return {n_bar, Support::RightFlipped, f};
  }

  bool flipped() const { return support == Support::RightFlipped; }
  double split() const { return split_radius(n_bar, f); }

 private:
  static void check(double n_bar, double f) {
    if (n_bar < 0.0) throw std::invalid_argument("n_bar must be >= 0");
    if (!(f > 0.0 && f < 1.0))
      throw std::invalid_argument("f must be in (0,1)");
  }
};

// Inverse-CDF draw from the conditional law; RightFlipped yields negative
// values. Exact and rejection-free.
inline double sample_radius(const RadialLaw& law, Philox4x32& rng) {
  const double u = uniform_unit(rng);
  const double nb = law.n_bar;
  if (nb == 0.0) return 0.0;
  switch (law.support) {
    case RadialLaw::Support::Full:
      return std::sqrt(-nb * std::log1p(-u));
    case RadialLaw::Support::Left:
      return std::sqrt(-nb * std::log1p(-(1.0 - law.f) * u));
    case RadialLaw::Support::Right:
      return std::sqrt(-nb * (std::log(law.f) + std::log1p(-u)));
    case RadialLaw::Support::RightFlipped:
      return -std::sqrt(-nb * (std::log(law.f) + std::log1p(-u)));
  }
  throw std::logic_error("unreachable");
}

// E[fn(r)] over the conditional law. Integrates in units t = r / sqrt(n_bar)
// where the density is 2 t exp(-t^2) / mass, so the integrand shape is
// n_bar-independent.
template <class F>
double radial_expectation(const RadialLaw& law, F&& fn,
                          double tolerance = 1e-12) {
  const double s = std::sqrt(law.n_bar);
  if (law.n_bar == 0.0) return fn(0.0);  // degenerate point mass at r = 0

  const double sign = law.flipped() ? -1.0 : 1.0;
  const auto g = [&](double t) {
    const double density = 2.0 * t * std::exp(-t * t);
    if (density == 0.0) return 0.0;  // far tail; avoids 0 * inf probes
    return density * fn(sign * s * t);
  };

  double error = 0.0;
  double value = 0.0;
  switch (law.support) {
    case RadialLaw::Support::Full: {
      boost::math::quadrature::exp_sinh<double> quad;
      value = quad.integrate(g, 0.0,
                             std::numeric_limits<double>::infinity(),
                             tolerance, &error);
      break;
    }
    case RadialLaw::Support::Left: {
      boost::math::quadrature::tanh_sinh<double> quad;
      const double xf = std::sqrt(-std::log(law.f));
      value = quad.integrate(g, 0.0, xf, tolerance, &error) / (1.0 - law.f);
      break;
    }
    case RadialLaw::Support::Right:
    case RadialLaw::Support::RightFlipped: {
      boost::math::quadrature::exp_sinh<double> quad;
      const double xf = std::sqrt(-std::log(law.f));
      value = quad.integrate(g, xf,
                             std::numeric_limits<double>::infinity(),
                             tolerance, &error) /
              law.f;
      break;
    }
  }
  if (!(error < 1e-8))
    throw std::domain_error("radial quadrature did not converge");
  return value;
}

}  // namespace tsteg
