#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <ostream>
#include <span>
#include <stdexcept>
#include <vector>

#include "tsteg/discrimination.hpp"
#include "tsteg/homodyne.hpp"
#include "tsteg/rates.hpp"

namespace tsteg {

enum class Scheme {
  FockCapacity,
  DistributionNoKey,
  VerticalAngle,
  PairwiseHomodyne,
  PairwiseHelstrom,
};

struct SweepConfig {
  double f = 0.5;       // prior of bit 1 for the pairwise schemes
  double beta = -1.0;   // <= 0 selects default_beta(n_bar)
  int pairs = 256;      // sampled (r0, r1) pairs per grid point
  std::uint64_t seed = 12345;
  std::ostream* diag = nullptr;  // clamp events are logged here when set
};

namespace detail {

inline RateReport pairwise_report(bool helstrom, double n_bar,
                                  const SweepConfig& cfg, Philox4x32 rng) {
  const double beta = cfg.beta > 0.0 ? cfg.beta : default_beta(n_bar);
  const RadialLaw law0 = RadialLaw::left(n_bar, cfg.f);
  const RadialLaw law1 = RadialLaw::right_flipped(n_bar, cfg.f);
  double sum_p = 0.0, sum_r = 0.0, sum_k = 0.0;
  for (int i = 0; i < cfg.pairs; ++i) {
    const double r0 = sample_radius(law0, rng);
    const double r1 = sample_radius(law1, rng);
    ChannelProbs probs;
    probs.f = cfg.f;
    double perr;
    if (helstrom) {
      const PureStatePair pair{{r0, 0.0}, {-r1, std::numbers::pi}, cfg.f};
      const auto mp = helstrom_measurement_probs(pair);
      probs.p00 = mp.p00;
      probs.p01 = mp.p01;
      perr = helstrom_perr_pure(pair);
    } else {
      const double m_c = weighted_cutoff(r0, r1, beta, cfg.f);
      const auto g0 = outcome_law(r0, beta);
      const auto g1 = outcome_law(r1, beta);
      probs.p00 = 1.0 - detail::normal_cdf(m_c, g0.mean, g0.variance);
      probs.p01 = 1.0 - detail::normal_cdf(m_c, g1.mean, g1.variance);
      perr = closed_form_perr_weighted(r0, r1, beta, m_c, cfg.f);
    }
    if (cfg.diag && channel_information(probs) < 0.0)
      *cfg.diag << "rate clamped to 0 at n_bar=" << n_bar << " pair " << i
                << '\n';
    sum_p += perr;
    sum_r += rate_general(probs);
    sum_k += key_rate_distribution(probs);
  }
  const double inv = 1.0 / double(cfg.pairs);
  double key = sum_k * inv;
  if (key < 0.0 && key > -1e-12) {
    if (cfg.diag)
      *cfg.diag << "key rate " << key << " clamped to 0 at n_bar=" << n_bar
                << '\n';
    key = 0.0;  // rounding noise; the key rate is nonnegative
  }
  return RateReport::from(sum_p * inv, sum_r * inv, key);
}

}  // namespace detail

// One grid point of a scheme curve; `stream` isolates its random pairs.
inline RateReport scheme_report(Scheme scheme, double n_bar,
                                const SweepConfig& cfg,
                                std::uint64_t stream = 0) {
  switch (scheme) {
    case Scheme::FockCapacity:
      return RateReport::from(0.0, capacity_per_symbol(n_bar), 0.0);
    case Scheme::DistributionNoKey:
      return distribution_rate_no_key(n_bar);
    case Scheme::VerticalAngle: {
      const double p = vertical_angle_perr_bound(n_bar);
      return RateReport::from(p, rate_from_perr(p), 0.0);
    }
    case Scheme::PairwiseHomodyne:
      return detail::pairwise_report(false, n_bar, cfg,
                                     Philox4x32(cfg.seed, stream));
    case Scheme::PairwiseHelstrom:
      return detail::pairwise_report(true, n_bar, cfg,
                                     Philox4x32(cfg.seed, stream));
  }
  throw std::invalid_argument("unknown scheme");
}

// Scheme curve over a mean-photon-number grid. Grid point i draws from
// counter stream i, so two sweeps over the same grid see the same pairs.
inline std::vector<RateReport> scheme_sweep(Scheme scheme,
                                            std::span<const double> n_bar_grid,
                                            const SweepConfig& cfg = {}) {
  if (n_bar_grid.empty()) throw std::invalid_argument("grid must be nonempty");
  std::vector<RateReport> out;
  out.reserve(n_bar_grid.size());
  for (std::size_t i = 0; i < n_bar_grid.size(); ++i)
    out.push_back(scheme_report(scheme, n_bar_grid[i], cfg, i));
  return out;
}

enum class Objective { Rate, RatePerKey };

struct OptimizeResult {
  double f_star = 0.5;
  RateReport report;
};

// Grid search with two shrinking refinement rounds over f in (0,1),
// maximizing R or R/K of the Helstrom pairwise scheme. Every evaluation
// reuses the same counter stream, so the objective is a deterministic
// function of f.
inline OptimizeResult optimize_f(double n_bar, Objective objective,
                                 double beta = -1.0, int pairs = 256,
                                 std::uint64_t seed = 12345) {
  const auto evaluate = [&](double f) {
    SweepConfig cfg;
    cfg.f = f;
    cfg.beta = beta;
    cfg.pairs = pairs;
    cfg.seed = seed;
    return detail::pairwise_report(true, n_bar, cfg, Philox4x32(seed, 0));
  };
  const auto score = [&](const RateReport& rep) {
    return objective == Objective::Rate ? rep.R : rep.ratio;
  };

  double lo = 0.02, hi = 0.98;
  double best_f = lo;
  RateReport best_rep = evaluate(lo);
  for (int round = 0; round < 3; ++round) {
    const int points = round == 0 ? 49 : 13;
    const double step = (hi - lo) / (points - 1);
    for (int i = 0; i < points; ++i) {
      const double f = lo + i * step;
      const auto rep = evaluate(f);
      if (score(rep) > score(best_rep)) {
        best_rep = rep;
        best_f = f;
      }
    }
    lo = std::max(0.005, best_f - step);
    hi = std::min(0.995, best_f + step);
  }
  return {best_f, best_rep};
}

}  // namespace tsteg
