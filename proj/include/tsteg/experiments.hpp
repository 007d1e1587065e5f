#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "tsteg/sweeps.hpp"

namespace tsteg {

// Rectangular numeric table with ordered metadata, the common currency of
// the figure commands.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  std::vector<std::pair<std::string, std::string>> meta;
};

namespace detail {
// 17 significant digits round-trips every double.
inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}
}  // namespace detail

// Comment line with the run parameters, then a header row, then one line per
// record. '.' decimal separator, comma-separated.
inline void write_csv(std::ostream& os, const Table& t) {
  os << "#";
  for (const auto& [k, v] : t.meta) os << " " << k << "=" << v;
  os << "\n";
  for (std::size_t c = 0; c < t.columns.size(); ++c)
    os << (c ? "," : "") << t.columns[c];
  os << "\n";
  for (const auto& row : t.rows) {
    for (std::size_t c = 0; c < row.size(); ++c)
      os << (c ? "," : "") << detail::format_double(row[c]);
    os << "\n";
  }
}

// {"meta": {...}, "records": [{column: value, ...}, ...]}. Non-finite
// values (the R/K ratio can be inf) are written as strings, since JSON has
// no literal for them.
inline void write_json(std::ostream& os, const Table& t) {
  nlohmann::ordered_json j;
  for (const auto& [k, v] : t.meta) j["meta"][k] = v;
  j["records"] = nlohmann::ordered_json::array();
  for (const auto& row : t.rows) {
    nlohmann::ordered_json rec;
    for (std::size_t c = 0; c < t.columns.size(); ++c) {
      if (std::isfinite(row[c]))
        rec[t.columns[c]] = row[c];
      else
        rec[t.columns[c]] = detail::format_double(row[c]);
    }
    j["records"].push_back(std::move(rec));
  }
  os << j.dump(2) << "\n";
}

// Inclusive "lo:hi:step" grid.
inline std::vector<double> make_grid(double lo, double hi, double step) {
  if (!(step > 0.0) || hi < lo) throw std::invalid_argument("bad grid spec");
  std::vector<double> g;
  for (int i = 0;; ++i) {
    const double x = lo + i * step;
    if (x > hi + 0.5 * step) break;
    g.push_back(std::min(x, hi));
  }
  return g;
}

namespace detail {
// Compact grid summary for metadata lines; exact values sit in the rows.
inline std::string grid_string(std::span<const double> g) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%g..%g/%zu", g.front(), g.back(),
                g.size());
  return buf;
}
}  // namespace detail

// Rate curves of the keyed opposite-phase scheme and the keyless
// distribution scheme.
inline Table fig1_table(std::span<const double> n_bar_grid) {
  Table t;
  t.columns = {"n_bar", "R_vertical_angle", "R_distribution_no_key"};
  t.meta = {{"figure", "fig1"},
            {"n_bar_grid", detail::grid_string(n_bar_grid)}};
  const auto key = scheme_sweep(Scheme::VerticalAngle, n_bar_grid);
  const auto nokey = scheme_sweep(Scheme::DistributionNoKey, n_bar_grid);
  for (std::size_t i = 0; i < n_bar_grid.size(); ++i)
    t.rows.push_back({n_bar_grid[i], key[i].R, nokey[i].R});
  return t;
}

// Simulated error-probability surface over (n_bar, r_c).
inline Table fig3_table(std::span<const double> n_bar_grid,
                        std::span<const double> r_c_grid, double beta,
                        double f, const SimConfig& cfg) {
  Table t;
  t.columns = {"n_bar", "r_c", "p_err", "std_err"};
  t.meta = {{"figure", "fig3"},
            {"seed", std::to_string(cfg.seed)},
            {"samples", std::to_string(cfg.samples)},
            {"beta", beta > 0.0 ? detail::format_double(beta) : "auto"},
            {"f", detail::format_double(f)},
            {"n_bar_grid", detail::grid_string(n_bar_grid)},
            {"r_c_grid", detail::grid_string(r_c_grid)}};
  for (const auto& p : simulate_perr_surface(n_bar_grid, r_c_grid, beta, f,
                                             cfg))
    t.rows.push_back({p.n_bar, p.r_c, p.p_err, p.std_err});
  return t;
}

// Per-n_bar prior optimization of the Helstrom pairwise scheme: the best
// rate, the key spent there, and the best rate-per-key prior.
inline Table fig4_table(std::span<const double> n_bar_grid, double beta,
                        int pairs, std::uint64_t seed) {
  Table t;
  t.columns = {"n_bar",        "f_star_rate", "R_opt",    "K_at_R_opt",
               "ratio_at_R_opt", "f_star_ratio", "ratio_opt"};
  t.meta = {{"figure", "fig4"},
            {"seed", std::to_string(seed)},
            {"pairs", std::to_string(pairs)},
            {"beta", beta > 0.0 ? detail::format_double(beta) : "auto"},
            {"n_bar_grid", detail::grid_string(n_bar_grid)}};
  for (double nb : n_bar_grid) {
    const auto rate = optimize_f(nb, Objective::Rate, beta, pairs, seed);
    const auto per_key =
        optimize_f(nb, Objective::RatePerKey, beta, pairs, seed);
    t.rows.push_back({nb, rate.f_star, rate.report.R, rate.report.K,
                      rate.report.ratio, per_key.f_star,
                      per_key.report.ratio});
  }
  return t;
}

// R, K and R/K of both pairwise measurement models over an (n_bar, f) grid.
inline Table fig6_table(std::span<const double> n_bar_grid,
                        std::span<const double> f_grid, double beta,
                        int pairs, std::uint64_t seed) {
  Table t;
  t.columns = {"n_bar",    "f",        "R_helstrom", "K_helstrom",
               "ratio_helstrom", "R_homodyne", "K_homodyne", "ratio_homodyne"};
  t.meta = {{"figure", "fig6"},
            {"seed", std::to_string(seed)},
            {"pairs", std::to_string(pairs)},
            {"beta", beta > 0.0 ? detail::format_double(beta) : "auto"},
            {"n_bar_grid", detail::grid_string(n_bar_grid)},
            {"f_grid", detail::grid_string(f_grid)}};
  SweepConfig cfg;
  cfg.beta = beta;
  cfg.pairs = pairs;
  cfg.seed = seed;
  for (std::size_t i = 0; i < n_bar_grid.size(); ++i) {
    for (double f : f_grid) {
      cfg.f = f;
      const auto hel =
          scheme_report(Scheme::PairwiseHelstrom, n_bar_grid[i], cfg, i);
      const auto hom =
          scheme_report(Scheme::PairwiseHomodyne, n_bar_grid[i], cfg, i);
      t.rows.push_back({n_bar_grid[i], f, hel.R, hel.K, hel.ratio, hom.R,
                        hom.K, hom.ratio});
    }
  }
  return t;
}

// Rate comparison of the Fock encoding against both pairwise coherent
// schemes at a fixed prior.
inline Table fig7_table(std::span<const double> n_bar_grid, double f,
                        double beta, int pairs, std::uint64_t seed) {
  Table t;
  t.columns = {"n_bar", "R_fock", "R_pairwise_helstrom",
               "R_pairwise_homodyne"};
  t.meta = {{"figure", "fig7"},
            {"seed", std::to_string(seed)},
            {"pairs", std::to_string(pairs)},
            {"beta", beta > 0.0 ? detail::format_double(beta) : "auto"},
            {"f", detail::format_double(f)},
            {"n_bar_grid", detail::grid_string(n_bar_grid)}};
  SweepConfig cfg;
  cfg.f = f;
  cfg.beta = beta;
  cfg.pairs = pairs;
  cfg.seed = seed;
  const auto fock = scheme_sweep(Scheme::FockCapacity, n_bar_grid, cfg);
  const auto hel = scheme_sweep(Scheme::PairwiseHelstrom, n_bar_grid, cfg);
  const auto hom = scheme_sweep(Scheme::PairwiseHomodyne, n_bar_grid, cfg);
  for (std::size_t i = 0; i < n_bar_grid.size(); ++i)
    t.rows.push_back({n_bar_grid[i], fock[i].R, hel[i].R, hom[i].R});
  return t;
}

}  // namespace tsteg
