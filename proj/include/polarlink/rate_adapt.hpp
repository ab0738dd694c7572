// Rate adaptation: when unreliable channel gains are detected, freeze the
// floor(Mi * c) least reliable information channels, where Mi caps the
// number of bad gains counted and c is the channel capacity at the operating
// point — the information those channels would have carried.
//
// A quirk kept on purpose: the gain inspection looks at h at the information
// *positions*, conflating symbol positions with bit-channel indices; that is
// the literal reading of the procedure this implements.  The input ranking
// Q_s is never recomputed, so adapting costs O(N) regardless of alpha or M.
#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "polarlink/capacity.hpp"
#include "polarlink/code_config.hpp"
#include "polarlink/construction.hpp"

namespace polarlink {

struct AdaptConfig {
  double alpha = 0.2;   // gain threshold below which a channel counts as bad
  int cap_m = 64;       // cap M on the number of counted bad channels
  SnrPoint snr;         // operating SNR gamma
  FadingDistribution dist = FadingDistribution::half_normal();
  // Capacity c defaults to C(mu sqrt(gamma)); paper-compat uses the capacity
  // at the flat -8 dB converted SNR instead.
  bool paper_compat = false;
};

struct AdaptedIndexSets {
  std::vector<int> coding_idx;  // ascending indices still carrying data
  std::vector<int> frozen_idx;  // ascending indices now frozen
  int num_dropped = 0;          // Num = floor(Mi * c)
};

// p = Pr{|h| <= alpha}: the expected fraction of unreliable gains.
inline double unreliable_fraction(double alpha, const FadingDistribution& dist) {
  if (alpha < 0.0)
    throw std::invalid_argument("unreliable_fraction: alpha must be >= 0");
  return dist.cdf_abs(alpha);
}

// Capacity value used as the per-channel information estimate c.
inline double adapt_capacity(const AdaptConfig& cfg) {
  if (cfg.paper_compat)
    return biawgn_capacity(
        equivalent_fading_snr(cfg.snr, cfg.dist, true).amplitude());
  return biawgn_capacity(cfg.dist.mu_abs * cfg.snr.amplitude());
}

inline AdaptedIndexSets adapt_indices(const std::vector<double>& h_abs,
                                      const AdaptConfig& cfg, double rate,
                                      const ReliabilityOrder& qs) {
  const int big_n = qs.meta.big_n;
  if (h_abs.size() != static_cast<std::size_t>(big_n) ||
      qs.order.size() != static_cast<std::size_t>(big_n))
    throw std::invalid_argument("adapt_indices: gain/ranking length mismatch");
  if (!(rate > 0.0 && rate <= 1.0))
    throw std::invalid_argument("adapt_indices: rate must lie in (0,1]");
  if (cfg.cap_m < 0 || cfg.cap_m > big_n)
    throw std::invalid_argument("adapt_indices: M must lie in [0,N]");

  const int n_info = static_cast<int>(std::floor(big_n * rate));
  int rm_num = 0;
  for (int t = 0; t < n_info; ++t)
    if (h_abs[static_cast<std::size_t>(qs.order[static_cast<std::size_t>(t)])] <
        cfg.alpha)
      ++rm_num;
  const int mi = std::min(rm_num, cfg.cap_m);
  const double c = adapt_capacity(cfg);
  const int num = static_cast<int>(std::floor(mi * c));

  AdaptedIndexSets sets;
  sets.num_dropped = num;
  const int keep = n_info - num;
  sets.coding_idx.assign(qs.order.begin(), qs.order.begin() + keep);
  sets.frozen_idx.assign(qs.order.begin() + keep, qs.order.end());
  std::sort(sets.coding_idx.begin(), sets.coding_idx.end());
  std::sort(sets.frozen_idx.begin(), sets.frozen_idx.end());
  return sets;
}

// Rebuild the code with the adapted information set; frozen values carry
// over by position, newly frozen channels get zeros.
inline CodeConfig adapted_code_config(const CodeConfig& base,
                                      const AdaptedIndexSets& sets) {
  if (static_cast<std::size_t>(base.block_length()) !=
      sets.coding_idx.size() + sets.frozen_idx.size())
    throw std::invalid_argument("adapted_code_config: inconsistent N");
  std::vector<std::uint8_t> old_u = base.scatter_frozen();
  std::vector<std::uint8_t> frozen;
  frozen.reserve(sets.frozen_idx.size());
  for (int idx : sets.frozen_idx)
    frozen.push_back(base.is_info(idx) ? 0 : old_u[static_cast<std::size_t>(idx)]);
  return CodeConfig(base.block_length(), sets.coding_idx, std::move(frozen));
}

}  // namespace polarlink
