// Bit-channel reliability ranking.
//
// Primary engine: Gaussian-approximation density evolution with the standard
// two-piece phi approximation, tracking the mean LLR of each synthetic
// channel through the n polarization stages (check update
// m' = phi^{-1}(1 - (1 - phi(m))^2), variable update m' = 2m).  phi and its
// inverse are evaluated in the log domain so deeply polarized channels do
// not underflow.  Validation engine: Monte-Carlo genie-aided SC over
// all-zero codewords, counting decision errors per bit index.  The stage
// order matches the decoder's recursion: the first (most significant) index
// bit selects check vs variable at the root split.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "polarlink/capacity.hpp"
#include "polarlink/code_config.hpp"
#include "polarlink/errors.hpp"
#include "polarlink/rng.hpp"
#include "polarlink/sc_decoder.hpp"

namespace polarlink {

// All N bit-channel indices, most reliable first, plus provenance.
struct ReliabilityOrder {
  struct Meta {
    int big_n = 0;
    double snr_db = 0.0;
    std::string engine;                 // "ga" or "mc"
    std::optional<long long> seed;      // absent for the deterministic GA
  };
  std::vector<int> order;
  Meta meta;
};

// Mean LLRs are capped here; channels saturating the cap are ranked by the
// ascending-index tie-break.
inline constexpr double kGaSaturation = 1e4;

namespace detail {

// ln phi(x): phi(x) ~ exp(-0.4527 x^0.86 + 0.0218) for 0 < x < 10 and
// sqrt(pi/x) e^{-x/4} (1 - 10/(7x)) for x >= 10; phi(0) = 1.
//
// The curve fit exceeds 1 below x ~ 0.03, which would freeze the check
// update for weak channels instead of degrading them; below kGaStitch the
// fit is replaced by a linear ramp in ln phi hitting the correct phi(0) = 1,
// so polarized-bad means collapse toward zero as exact evolution does.
inline constexpr double kGaStitch = 0.2;

inline double ga_ln_phi(double x) {
  if (x <= 0.0) return 0.0;
  if (x < kGaStitch) {
    constexpr double slope_num = -0.4527, stitch_pow = 0.86, offset = 0.0218;
    static const double slope =
        (slope_num * std::pow(kGaStitch, stitch_pow) + offset) / kGaStitch;
    return slope * x;
  }
  if (x < 10.0) return -0.4527 * std::pow(x, 0.86) + 0.0218;
  return 0.5 * (std::log(std::acos(-1.0)) - std::log(x)) - 0.25 * x +
         std::log1p(-10.0 / (7.0 * x));
}

// Inverse on the log scale by bisection over [0, kGaSaturation].
inline double ga_ln_phi_inv(double target_ln) {
  if (target_ln >= 0.0) return 0.0;
  double lo = 0.0, hi = kGaSaturation;
  if (ga_ln_phi(hi) >= target_ln) return hi;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (ga_ln_phi(mid) > target_ln)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

// Check-node mean update, computed as ln phi(m') = ln phi(m) + ln(2 - phi(m)).
inline double ga_check_update(double m) {
  const double ln_phi = ga_ln_phi(m);
  const double target = ln_phi + std::log(2.0 - std::exp(ln_phi));
  return std::min(m, ga_ln_phi_inv(target));
}

inline void require_block_length(int big_n) {
  if (big_n < 2 || !is_power_of_two(static_cast<std::size_t>(big_n)))
    throw std::invalid_argument("construction: N must be a power of two >= 2");
}

}  // namespace detail

// Per-index GA mean LLRs after full polarization, in natural index order.
// Exposed for diagnostics and the polarization tests; ga_construct ranks it.
inline std::vector<double> ga_mean_llrs(int big_n, const SnrPoint& snr) {
  detail::require_block_length(big_n);
  const double m0 = std::min(kGaSaturation, 2.0 * snr.gamma_linear);
  std::vector<double> means(static_cast<std::size_t>(big_n), m0);
  for (int block = big_n; block >= 2; block /= 2) {
    const int half = block / 2;
    for (int start = 0; start < big_n; start += block) {
      const double m = means[static_cast<std::size_t>(start)];
      const double check = detail::ga_check_update(m);
      const double var = std::min(kGaSaturation, 2.0 * m);
      for (int k = 0; k < half; ++k) {
        means[static_cast<std::size_t>(start + k)] = check;
        means[static_cast<std::size_t>(start + half + k)] = var;
      }
    }
  }
  return means;
}

inline ReliabilityOrder ga_construct(int big_n, const SnrPoint& snr) {
  const std::vector<double> means = ga_mean_llrs(big_n, snr);
  ReliabilityOrder qs;
  qs.order.resize(static_cast<std::size_t>(big_n));
  std::iota(qs.order.begin(), qs.order.end(), 0);
  std::stable_sort(qs.order.begin(), qs.order.end(), [&](int a, int b) {
    return means[static_cast<std::size_t>(a)] > means[static_cast<std::size_t>(b)];
  });
  qs.meta = {big_n, snr.gamma_db, "ga", std::nullopt};
  return qs;
}

// Genie-aided Monte-Carlo ranking: transmit all-zero codewords, decode with
// every decision corrected to the true bit, and count decision errors per
// index.  Iterations are split across `shards`, each with its own RNG
// stream, so the result is reproducible for a fixed (seed, shard count).
inline ReliabilityOrder mc_construct(int big_n, const SnrPoint& snr,
                                     const std::optional<FadingDistribution>& dist,
                                     long iters, std::uint64_t seed,
                                     int shards = 1) {
  detail::require_block_length(big_n);
  if (iters < 1) throw std::invalid_argument("mc_construct: iters must be >= 1");
  if (shards < 1) throw std::invalid_argument("mc_construct: shards must be >= 1");

  std::vector<int> all(static_cast<std::size_t>(big_n));
  std::iota(all.begin(), all.end(), 0);
  ScDecoder decoder(CodeConfig(big_n, all));

  const double root_gamma = snr.amplitude();
  const std::vector<std::uint8_t> zero_u(static_cast<std::size_t>(big_n), 0);
  std::vector<std::uint64_t> counts(static_cast<std::size_t>(big_n), 0);
  std::vector<double> llrs(static_cast<std::size_t>(big_n));
  std::vector<std::uint8_t> errors;

  for (int s = 0; s < shards; ++s) {
    const long share = iters / shards + (s < iters % shards ? 1 : 0);
    std::mt19937_64 rng =
        make_stream(seed, StreamTag::kConstruction, static_cast<std::uint64_t>(s));
    for (long it = 0; it < share; ++it) {
      std::normal_distribution<double> gauss(0.0, 1.0);
      for (std::size_t i = 0; i < llrs.size(); ++i) {
        const double h = dist ? dist->draw_abs(rng) : 1.0;
        const double y = h * root_gamma + gauss(rng);
        llrs[i] = clamp_llr(2.0 * h * root_gamma * y);
      }
      decoder.genie(llrs, zero_u, errors);
      for (std::size_t i = 0; i < counts.size(); ++i) counts[i] += errors[i];
    }
  }

  ReliabilityOrder qs;
  qs.order.resize(static_cast<std::size_t>(big_n));
  std::iota(qs.order.begin(), qs.order.end(), 0);
  std::stable_sort(qs.order.begin(), qs.order.end(), [&](int a, int b) {
    return counts[static_cast<std::size_t>(a)] < counts[static_cast<std::size_t>(b)];
  });
  qs.meta = {big_n, snr.gamma_db, "mc", static_cast<long long>(seed)};
  return qs;
}

// First K entries of the ranking, sorted ascending as CodeConfig requires.
inline std::vector<int> select_info_set(const ReliabilityOrder& qs, int k) {
  if (k < 0 || static_cast<std::size_t>(k) > qs.order.size())
    throw std::invalid_argument("select_info_set: K out of range");
  std::vector<int> a(qs.order.begin(), qs.order.begin() + k);
  std::sort(a.begin(), a.end());
  return a;
}

namespace detail {

inline std::string format_g6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

}  // namespace detail

// Text format: line 1 "polar-qs v1"; line 2 "N=<int> snr_db=<float>
// engine=<ga|mc> seed=<int|->"; then N lines, one 0-based index each, best
// channel first.
inline void save_order(const ReliabilityOrder& qs, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open for writing: " + path);
  out << "polar-qs v1\n";
  out << "N=" << qs.meta.big_n << " snr_db=" << detail::format_g6(qs.meta.snr_db)
      << " engine=" << qs.meta.engine << " seed="
      << (qs.meta.seed ? std::to_string(*qs.meta.seed) : std::string("-"))
      << "\n";
  for (int idx : qs.order) out << idx << "\n";
  if (!out) throw IoError("write failed: " + path);
}

inline ReliabilityOrder load_order(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open for reading: " + path);
  std::string line;
  std::size_t lineno = 0;

  auto next_line = [&](bool required) {
    if (!std::getline(in, line)) {
      if (required) throw ParseError(path, lineno + 1, "unexpected end of file");
      return false;
    }
    if (!line.empty() && line.back() == '\r') line.pop_back();
    ++lineno;
    return true;
  };

  next_line(true);
  if (line != "polar-qs v1")
    throw ParseError(path, lineno, "expected header 'polar-qs v1'");

  next_line(true);
  ReliabilityOrder qs;
  {
    std::istringstream meta(line);
    std::string n_tok, snr_tok, eng_tok, seed_tok, extra;
    if (!(meta >> n_tok >> snr_tok >> eng_tok >> seed_tok) || (meta >> extra))
      throw ParseError(path, lineno, "expected 'N=.. snr_db=.. engine=.. seed=..'");
    auto value_of = [&](const std::string& tok, const std::string& key) {
      if (tok.rfind(key + "=", 0) != 0)
        throw ParseError(path, lineno, "expected '" + key + "=...', got '" + tok + "'");
      return tok.substr(key.size() + 1);
    };
    try {
      qs.meta.big_n = std::stoi(value_of(n_tok, "N"));
      qs.meta.snr_db = std::stod(value_of(snr_tok, "snr_db"));
    } catch (const std::exception&) {
      throw ParseError(path, lineno, "malformed numeric field");
    }
    qs.meta.engine = value_of(eng_tok, "engine");
    if (qs.meta.engine != "ga" && qs.meta.engine != "mc")
      throw ParseError(path, lineno, "engine must be 'ga' or 'mc'");
    const std::string seed_val = value_of(seed_tok, "seed");
    if (seed_val == "-") {
      qs.meta.seed = std::nullopt;
    } else {
      try {
        qs.meta.seed = std::stoll(seed_val);
      } catch (const std::exception&) {
        throw ParseError(path, lineno, "malformed seed field");
      }
    }
    if (qs.meta.big_n < 2)
      throw ParseError(path, lineno, "N must be at least 2");
  }

  std::vector<std::uint8_t> seen(static_cast<std::size_t>(qs.meta.big_n), 0);
  while (next_line(false)) {
    if (line.empty() && in.peek() == std::char_traits<char>::eof()) break;
    std::istringstream row(line);
    long idx;
    std::string extra;
    if (!(row >> idx) || (row >> extra))
      throw ParseError(path, lineno, "expected one index per line");
    if (idx < 0 || idx >= qs.meta.big_n)
      throw ParseError(path, lineno, "index out of range");
    if (seen[static_cast<std::size_t>(idx)])
      throw ParseError(path, lineno, "duplicate index " + std::to_string(idx));
    seen[static_cast<std::size_t>(idx)] = 1;
    qs.order.push_back(static_cast<int>(idx));
  }
  if (qs.order.size() != static_cast<std::size_t>(qs.meta.big_n))
    throw ParseError(path, lineno + 1,
                     "header N=" + std::to_string(qs.meta.big_n) + " but file has " +
                         std::to_string(qs.order.size()) + " index lines");
  return qs;
}

}  // namespace polarlink
