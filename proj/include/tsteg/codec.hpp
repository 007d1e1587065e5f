#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "tsteg/rng.hpp"

namespace tsteg {

using BigInt = boost::multiprecision::cpp_int;

// Exact binomial coefficient, multiplicative form with exact intermediate
// divisions.
inline BigInt binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  BigInt c = 1;
  for (std::size_t i = 1; i <= k; ++i) {
    c *= static_cast<unsigned long>(n - k + i);
    c /= static_cast<unsigned long>(i);
  }
  return c;
}

// Binary entropy h(p) in bits, with 0 log 0 = 0.
inline double binary_entropy(double p) {
  if (!(p >= 0.0 && p <= 1.0))
    throw std::invalid_argument("entropy argument must be in [0,1]");
  if (p == 0.0 || p == 1.0) return 0.0;
  return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

// Fixed-composition binary code: length N symbols of which `zeros` are 0.
struct ConstantWeightCode {
  std::size_t length = 0;
  std::size_t zeros = 0;

  std::size_t weight() const { return length - zeros; }
  BigInt codebook_size() const { return binomial(length, zeros); }
};

// Message bits per channel use of the constant-weight encoding matched to a
// thermal channel: h(1/(n_bar+1)).
inline double capacity_per_symbol(double n_bar) {
  if (n_bar < 0.0) throw std::invalid_argument("n_bar must be >= 0");
  return binary_entropy(1.0 / (n_bar + 1.0));
}

// Zero count for a length-N codeword: round(N/(n_bar+1)), ties rounded down.
inline std::size_t zeros_for_length(double n_bar, std::size_t length) {
  const double x = static_cast<double>(length) / (n_bar + 1.0);
  double z = std::ceil(x - 0.5);
  z = std::min(std::max(z, 0.0), static_cast<double>(length));
  return static_cast<std::size_t>(z);
}

// Smallest code whose codebook covers `count` codewords.
inline ConstantWeightCode smallest_code_covering(double n_bar,
                                                 const BigInt& count) {
  if (n_bar <= 0.0)
    throw std::invalid_argument("n_bar must be > 0 to carry nonzero symbols");
  if (count < 1) throw std::invalid_argument("count must be >= 1");
  for (std::size_t n = 1;; ++n) {
    ConstantWeightCode code{n, zeros_for_length(n_bar, n)};
    if (code.codebook_size() >= count) return code;
  }
}

// Smallest code able to carry every message of the given bit length.
inline ConstantWeightCode code_for(double n_bar, unsigned message_bits) {
  if (message_bits < 1)
    throw std::invalid_argument("message_bits must be >= 1");
  return smallest_code_covering(n_bar, BigInt(1) << message_bits);
}

// The rank-th smallest (1-based, by numeric value, most significant bit
// first) length-N bit string with the code's weight. Walks one Pascal row
// per output bit: with `len` positions and `ones` ones left, there are
// C(len-1, ones) strings starting with 0; the running coefficient is updated
// multiplicatively, so the whole walk costs O(N) big-integer operations.
inline std::string unrank(BigInt rank, const ConstantWeightCode& code) {
  if (rank < 1 || rank > code.codebook_size())
    throw std::out_of_range("rank outside the codebook");
  const std::size_t N = code.length;
  std::size_t ones = code.weight();
  std::string s(N, '0');
  BigInt with_zero = binomial(N - 1, ones);
  for (std::size_t i = 0; i < N; ++i) {
    const std::size_t a = N - 1 - i;  // positions after this one
    if (rank <= with_zero) {
      if (a > 0) with_zero = with_zero * (a - ones) / a;
    } else {
      rank -= with_zero;
      s[i] = '1';
      if (a > 0) with_zero = with_zero * ones / a;
      --ones;
    }
  }
  if (rank != 1) throw std::logic_error("unrank walk did not terminate at 1");
  return s;
}

// Inverse of unrank.
inline BigInt rank(std::string_view s, const ConstantWeightCode& code) {
  if (s.size() != code.length)
    throw std::invalid_argument("codeword length mismatch");
  std::size_t ones = 0;
  for (char c : s) {
    if (c != '0' && c != '1')
      throw std::invalid_argument("codeword must be over {0,1}");
    ones += c == '1';
  }
  if (ones != code.weight())
    throw std::invalid_argument("codeword weight mismatch");

  BigInt r = 1;
  BigInt with_zero = binomial(code.length - 1, ones);
  for (std::size_t i = 0; i < code.length; ++i) {
    const std::size_t a = code.length - 1 - i;
    if (s[i] == '0') {
      if (a > 0) with_zero = with_zero * (a - ones) / a;
    } else {
      r += with_zero;
      if (a > 0) with_zero = with_zero * ones / a;
      --ones;
    }
  }
  return r;
}

// Message word: a value of known bit length.
struct MessageWord {
  BigInt value;
  unsigned bit_length = 0;
};

// Value w maps to the (w+1)-th smallest codeword, so value 0 is encodable.
inline std::string encode_message(const MessageWord& msg,
                                  const ConstantWeightCode& code) {
  if (msg.value < 0) throw std::invalid_argument("message value must be >= 0");
  if (msg.value + 1 > code.codebook_size())
    throw std::out_of_range("message value too large for code");
  return unrank(msg.value + 1, code);
}

inline BigInt decode_message(std::string_view codeword,
                             const ConstantWeightCode& code) {
  return rank(codeword, code) - 1;
}

// Elementwise XOR of two equal-length bit strings; involution under the same
// key.
inline std::string scramble(std::string_view s, std::string_view key) {
  if (s.size() != key.size())
    throw std::invalid_argument("scramble key length mismatch");
  std::string out(s.size(), '0');
  for (std::size_t i = 0; i < s.size(); ++i) {
    if ((s[i] != '0' && s[i] != '1') || (key[i] != '0' && key[i] != '1'))
      throw std::invalid_argument("scramble inputs must be over {0,1}");
    out[i] = (s[i] != key[i]) ? '1' : '0';
  }
  return out;
}

// Fock occupation plan for a codeword: '0' carries the vacuum, '1' carries a
// level n >= 1 drawn with the thermal weights restricted to n >= 1, so the
// per-symbol marginal is exactly thermal.
inline std::vector<unsigned> sample_fock_symbols(std::string_view codeword,
                                                 double n_bar,
                                                 Philox4x32& rng) {
  std::vector<unsigned> plan(codeword.size(), 0);
  const double q = n_bar / (n_bar + 1.0);
  for (std::size_t i = 0; i < codeword.size(); ++i) {
    if (codeword[i] == '0') continue;
    if (codeword[i] != '1')
      throw std::invalid_argument("codeword must be over {0,1}");
    if (n_bar <= 0.0)
      throw std::invalid_argument("n_bar must be > 0 to carry a 1 symbol");
    // n = 1 + Geometric(q): thermal weights conditioned on n >= 1.
    const double u = uniform_unit(rng);
    plan[i] = 1 + static_cast<unsigned>(std::log1p(-u) / std::log(q));
  }
  return plan;
}

}  // namespace tsteg
