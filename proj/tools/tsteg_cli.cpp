// tsteg: reproduce the toolkit's rate/error tables, run the constant-weight
// codec, and execute the verification suites from the command line.

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "tsteg/codec.hpp"
#include "tsteg/discrimination.hpp"
#include "tsteg/experiments.hpp"
#include "tsteg/homodyne.hpp"
#include "tsteg/rates.hpp"
#include "tsteg/rng.hpp"
#include "tsteg/sweeps.hpp"
#include "tsteg/thermal.hpp"

namespace {

using tsteg::BigInt;

BigInt parse_value(const std::string& text) {
  if (text.rfind("0b", 0) == 0 || text.rfind("0B", 0) == 0) {
    if (text.size() == 2) throw CLI::ValidationError("empty binary literal");
    BigInt v = 0;
    for (std::size_t i = 2; i < text.size(); ++i) {
      if (text[i] != '0' && text[i] != '1')
        throw CLI::ValidationError("binary literal must be over {0,1}");
      v = (v << 1) | (text[i] == '1' ? 1 : 0);
    }
    return v;
  }
  try {
    return BigInt(text);
  } catch (const std::exception&) {
    throw CLI::ValidationError("value must be a decimal or 0b binary literal");
  }
}

std::vector<double> parse_grid(const std::string& spec) {
  double lo = 0.0, hi = 0.0, step = 0.0;
  if (std::sscanf(spec.c_str(), "%lf:%lf:%lf", &lo, &hi, &step) != 3)
    throw CLI::ValidationError("grid must be lo:hi:step");
  return tsteg::make_grid(lo, hi, step);
}

unsigned bit_length(const BigInt& v) {
  if (v == 0) return 1;
  return static_cast<unsigned>(boost::multiprecision::msb(v)) + 1;
}

int emit_table(const tsteg::Table& table, const std::string& out,
               const std::string& format) {
  std::ostream* os = &std::cout;
  std::ofstream file;
  if (!out.empty()) {
    file.open(out, std::ios::binary);
    if (!file) {
      std::cerr << "error: cannot open output file " << out << "\n";
      return 1;
    }
    os = &file;
  }
  if (format == "csv")
    tsteg::write_csv(*os, table);
  else
    tsteg::write_json(*os, table);
  if (!*os) {
    std::cerr << "error: write failed\n";
    return 1;
  }
  return 0;
}

// Verification suites: every line is one named check with measured values.
class Checker {
 public:
  void check(bool ok, const std::string& name, const std::string& detail) {
    std::cout << (ok ? "[PASS] " : "[FAIL] ") << name
              << (detail.empty() ? "" : " " + detail) << "\n";
    all_ok_ &= ok;
  }
  bool all_ok() const { return all_ok_; }

 private:
  bool all_ok_ = true;
};

int verify_codec() {
  Checker c;
  const tsteg::ConstantWeightCode code{8, 5};
  c.check(tsteg::unrank(41, code) == "10001100", "unrank_worked_example",
          "rank 41 -> " + tsteg::unrank(41, code));
  c.check(tsteg::rank("10001100", code) == 41, "rank_worked_example", "");

  bool bijective = true;
  std::string prev;
  for (unsigned r = 1; r <= 56; ++r) {
    const auto s = tsteg::unrank(r, code);
    bijective &= tsteg::rank(s, code) == r;
    bijective &= r == 1 || prev < s;
    prev = s;
  }
  c.check(bijective, "exhaustive_bijection", "all C(8,3)=56 codewords");

  bool stocking = true;
  for (std::size_t n = 0; n <= 32 && stocking; ++n) {
    for (std::size_t k = 1; k <= 32; ++k) {
      BigInt lhs = 0;
      for (std::size_t i = 0; i < k; ++i) lhs += tsteg::binomial(n + i, i);
      if (lhs != tsteg::binomial(k + n, k - 1)) {
        stocking = false;
        break;
      }
    }
  }
  c.check(stocking, "christmas_stocking_identity", "n,k <= 32");

  tsteg::Philox4x32 rng(5, 0);
  bool round_trip = true;
  const auto big = tsteg::code_for(1.0, 48);
  for (int t = 0; t < 200; ++t) {
    const BigInt v = BigInt(rng()) % (BigInt(1) << 48);
    round_trip &= tsteg::decode_message(
                      tsteg::encode_message({v, 48}, big), big) == v;
  }
  c.check(round_trip, "message_round_trip", "200 random 48-bit values");
  return c.all_ok() ? 0 : 1;
}

int verify_fidelity(std::uint64_t seed) {
  Checker c;
  for (double nbar : {0.5, 1.0, 5.0}) {
    for (std::size_t M : {10u, 50u, 200u}) {
      const auto res = tsteg::mc_fidelity_bound(nbar, M, 400, seed);
      const double bound = 1.0 - nbar / (2.0 * double(M));
      char buf[160];
      std::snprintf(buf, sizeof(buf),
                    "mean=%.8f se=%.2e bound=%.8f (n_bar=%g M=%zu)",
                    res.mean_sqrt_fidelity, res.std_err, bound, nbar, M);
      c.check(res.mean_sqrt_fidelity + 3.0 * res.std_err >= bound,
              "sqrt_fidelity_bound", buf);
    }
  }
  return c.all_ok() ? 0 : 1;
}

int verify_trace_distance() {
  Checker c;
  double prev = 0.0;
  bool monotone = true, in_range = true;
  for (double nbar : {0.25, 0.5, 1.0, 2.0, 5.0, 8.0, 20.0}) {
    const double direct = tsteg::distribution_trace_distance_direct(
        nbar, 0.5, tsteg::split_component_cutoff(nbar, 0.5));
    const double closed = tsteg::distribution_trace_distance_closed(nbar);
    monotone &= direct > prev;
    in_range &= direct >= 0.0 && direct <= 1.0;
    prev = direct;
    char buf[120];
    std::snprintf(buf, sizeof(buf),
                  "n_bar=%g direct=%.9f closed=%.9f ratio=%.6f", nbar, direct,
                  closed, closed / direct);
    c.check(true, "closed_vs_direct", buf);
  }
  c.check(monotone, "direct_monotone_in_n_bar", "");
  c.check(in_range, "direct_within_unit_interval", "");
  return c.all_ok() ? 0 : 1;
}

int verify_markov(std::uint64_t seed) {
  Checker c;
  const double nbar = 1.0, beta = 100.0;
  const auto st0 =
      tsteg::ensemble_stats(tsteg::RadialLaw::left(nbar, 0.5), beta);
  const auto st1 =
      tsteg::ensemble_stats(tsteg::RadialLaw::right_flipped(nbar, 0.5), beta);
  tsteg::Philox4x32 rng(seed, 0);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (double frac : {0.35, 0.5, 0.65}) {
    const double mc = st1.mean_m + frac * (st0.mean_m - st1.mean_m);
    int errors = 0;
    const int n = 100000;
    for (int i = 0; i < n; ++i) {
      const bool bit1 = tsteg::uniform_unit(rng) < 0.5;
      const auto law = bit1 ? tsteg::RadialLaw::right_flipped(nbar, 0.5)
                            : tsteg::RadialLaw::left(nbar, 0.5);
      const double r = tsteg::sample_radius(law, rng);
      const auto g = tsteg::outcome_law(r, beta);
      const double m = g.mean + std::sqrt(g.variance) * gauss(rng);
      errors += (m < mc) != bit1;
    }
    const double emp = double(errors) / n;
    for (unsigned order : {2u, 4u}) {
      const double bound = tsteg::markov_bound_perr(order, nbar, beta, mc);
      char buf[120];
      std::snprintf(buf, sizeof(buf),
                    "order=%u frac=%.2f bound=%.4f mc_perr=%.4f", order, frac,
                    bound, emp);
      c.check(bound >= emp, "moment_bound_dominates", buf);
    }
  }
  return c.all_ok() ? 0 : 1;
}

int verify_helstrom() {
  Checker c;
  double max_dev = 0.0;
  for (double nbar : {0.1, 0.5, 1.0, 2.0, 5.0}) {
    const tsteg::PureStatePair pair{
        {0.0, 0.0}, {tsteg::rayleigh_median(nbar), std::numbers::pi}, 0.5};
    max_dev = std::max(max_dev,
                       std::abs(tsteg::helstrom_perr_pure(pair) -
                                tsteg::vertical_angle_perr_bound(nbar)));
  }
  char buf[80];
  std::snprintf(buf, sizeof(buf), "max |dev| = %.2e", max_dev);
  c.check(max_dev < 1e-12, "vertical_angle_consistency", buf);

  double max_recombine = 0.0;
  bool ordered = true;
  for (double f : {0.2, 0.5, 0.8}) {
    for (double r0 : {0.1, 0.5}) {
      for (double r1 : {-2.0, -0.9}) {
        const tsteg::PureStatePair pair{{r0, 0.0}, {-r1, std::numbers::pi}, f};
        const auto probs = tsteg::helstrom_measurement_probs(pair);
        const double perr = tsteg::helstrom_perr_pure(pair);
        max_recombine = std::max(
            max_recombine, std::abs((1.0 - f) * (1.0 - probs.p00) +
                                    f * probs.p01 - perr));
        const double beta = 100.0;
        const double mstar = tsteg::optimal_cutoff_weighted(r0, r1, beta, f);
        ordered &= tsteg::closed_form_perr_weighted(r0, r1, beta, mstar, f) >=
                   perr - 1e-12;
      }
    }
  }
  std::snprintf(buf, sizeof(buf), "max |dev| = %.2e", max_recombine);
  c.check(max_recombine < 1e-12, "measurement_prob_recombination", buf);
  c.check(ordered, "homodyne_risk_dominates_helstrom", "");
  return c.all_ok() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Thermal-noise steganography toolkit"};
  app.require_subcommand(1);

  // Environment variables with the TSTEG_ prefix override defaults in CI.
  double nbar = 1.0, f = 0.5, beta = -1.0;
  std::string nbar_grid_spec, rc_grid_spec = "0:0.7:0.01";
  std::size_t samples = 100000;
  int pairs = 256;
  std::uint64_t seed = 12345;
  std::string out, format = "csv";

  auto* encode = app.add_subcommand(
      "encode", "Encode a message value as a constant-weight codeword");
  std::string value_text;
  bool rank_mode = false;
  unsigned bits = 0;
  encode->add_option("--value", value_text,
                     "Message value (decimal or 0b binary)")
      ->required()
      ->envname("TSTEG_VALUE");
  encode->add_flag("--rank-mode", rank_mode,
                   "Treat the value as a 1-based codebook rank");
  encode->add_option("--bits", bits,
                     "Message bit length (default: the value's bit length)");
  encode->add_option("--nbar", nbar, "Mean thermal photon number")
      ->envname("TSTEG_NBAR");
  encode->add_option("--seed", seed, "Seed for the Fock symbol draw")
      ->envname("TSTEG_SEED");

  auto* decode = app.add_subcommand(
      "decode", "Recover rank and value from a codeword");
  std::string codeword;
  decode->add_option("codeword", codeword, "Constant-weight codeword")
      ->required();
  decode->add_option("--nbar", nbar, "Mean thermal photon number (unused)")
      ->envname("TSTEG_NBAR");

  auto* figure =
      app.add_subcommand("figure", "Write one figure's data table");
  std::string figure_name;
  figure->add_option("name", figure_name, "fig1|fig3|fig4|fig6|fig7")
      ->required();
  figure->add_option("--nbar-grid", nbar_grid_spec, "Grid lo:hi:step")
      ->envname("TSTEG_NBAR_GRID");
  figure->add_option("--rc-grid", rc_grid_spec, "Cutoff grid lo:hi:step")
      ->envname("TSTEG_RC_GRID");
  figure->add_option("--f", f, "Prior of bit 1")->envname("TSTEG_F");
  figure->add_option("--beta", beta, "Local oscillator amplitude (<=0: auto)")
      ->envname("TSTEG_BETA");
  figure->add_option("--samples", samples, "Monte-Carlo samples per cell")
      ->envname("TSTEG_SAMPLES");
  figure->add_option("--pairs", pairs, "State pairs per grid point")
      ->envname("TSTEG_PAIRS");
  figure->add_option("--seed", seed, "RNG seed")->envname("TSTEG_SEED");
  figure->add_option("--out", out, "Output path (default stdout)")
      ->envname("TSTEG_OUT");
  figure->add_option("--format", format, "csv|json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->envname("TSTEG_FORMAT");

  auto* verify = app.add_subcommand("verify", "Run a verification suite");
  std::string suite;
  verify->add_option("suite", suite,
                     "fidelity|trace_distance|markov|helstrom|codec")
      ->required();
  verify->add_option("--seed", seed, "RNG seed")->envname("TSTEG_SEED");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp")
      return app.exit(e);
    app.exit(e);
    return 2;
  }

  try {
    if (*encode) {
      const BigInt value = parse_value(value_text);
      tsteg::ConstantWeightCode code;
      BigInt codeword_rank;
      if (rank_mode) {
        if (value < 1) {
          std::cerr << "error: rank must be >= 1\n";
          return 2;
        }
        code = tsteg::smallest_code_covering(nbar, value);
        codeword_rank = value;
      } else {
        const unsigned nbits = bits > 0 ? bits : bit_length(value);
        if (value >= BigInt(1) << nbits) {
          std::cerr << "error: value does not fit in " << nbits << " bits\n";
          return 2;
        }
        code = tsteg::code_for(nbar, nbits);
        codeword_rank = value + 1;
      }
      const std::string word = tsteg::unrank(codeword_rank, code);
      std::cout << "code: N=" << code.length << " n_z=" << code.zeros
                << " weight=" << code.weight()
                << " codebook=" << code.codebook_size() << "\n";
      std::cout << "rank: " << codeword_rank << "\n";
      std::cout << "codeword: " << word << "\n";
      tsteg::Philox4x32 rng(seed, 0);
      const auto plan = tsteg::sample_fock_symbols(word, nbar, rng);
      std::cout << "fock_symbols:";
      for (auto n : plan) std::cout << " " << n;
      std::cout << "\n";
      return 0;
    }

    if (*decode) {
      const auto ones = static_cast<std::size_t>(
          std::count(codeword.begin(), codeword.end(), '1'));
      const tsteg::ConstantWeightCode code{codeword.size(),
                                           codeword.size() - ones};
      const BigInt r = tsteg::rank(codeword, code);
      std::cout << "code: N=" << code.length << " n_z=" << code.zeros
                << " weight=" << code.weight() << "\n";
      std::cout << "rank: " << r << "\n";
      std::cout << "value: " << r - 1 << "\n";
      return 0;
    }

    if (*figure) {
      tsteg::Table table;
      if (figure_name == "fig1") {
        table = tsteg::fig1_table(
            parse_grid(nbar_grid_spec.empty() ? "0.1:5:0.1" : nbar_grid_spec));
      } else if (figure_name == "fig3") {
        table = tsteg::fig3_table(
            parse_grid(nbar_grid_spec.empty() ? "0.5:5:0.5" : nbar_grid_spec),
            parse_grid(rc_grid_spec), beta, f, {samples, seed});
      } else if (figure_name == "fig4") {
        table = tsteg::fig4_table(
            parse_grid(nbar_grid_spec.empty() ? "0.25:5:0.25"
                                              : nbar_grid_spec),
            beta, pairs, seed);
      } else if (figure_name == "fig6") {
        table = tsteg::fig6_table(
            parse_grid(nbar_grid_spec.empty() ? "0.25:5:0.25"
                                              : nbar_grid_spec),
            tsteg::make_grid(0.05, 0.95, 0.05), beta, pairs, seed);
      } else if (figure_name == "fig7") {
        table = tsteg::fig7_table(
            parse_grid(nbar_grid_spec.empty() ? "0.1:5:0.1" : nbar_grid_spec),
            f, beta, pairs, seed);
      } else {
        std::cerr << "error: unknown figure " << figure_name << "\n";
        return 2;
      }
      return emit_table(table, out, format);
    }

    if (*verify) {
      if (suite == "codec") return verify_codec();
      if (suite == "fidelity") return verify_fidelity(seed);
      if (suite == "trace_distance") return verify_trace_distance();
      if (suite == "markov") return verify_markov(seed);
      if (suite == "helstrom") return verify_helstrom();
      std::cerr << "error: unknown suite " << suite << "\n";
      return 2;
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
