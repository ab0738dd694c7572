// Modulation, block-fading channel realizations, and coherent LLR demapping.
//
// Channel model: y_i = |h_i| sqrt(gamma) x~_i + n_i with x~ in {+1,-1},
// n ~ N(0,1).  The magnitude-only form is the coherent conversion of the
// real-gain channel (the receiver knows h, so the sign is absorbed), and the
// normalization (unit-energy symbols, unit noise, amplitude sqrt(gamma))
// matches the capacity integrand so simulation and analysis share one SNR
// convention.
#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "polarlink/capacity.hpp"
#include "polarlink/rng.hpp"
#include "polarlink/sc_decoder.hpp"

namespace polarlink {

// Per-symbol gain magnitudes, valid for `blocks_remaining` more codewords.
struct ChannelRealization {
  std::vector<double> h_abs;
  int blocks_remaining = 1;
};

struct ReceivedBlock {
  std::vector<double> y;
};

// BPSK map 0 -> +1, 1 -> -1.
inline std::vector<double> modulate(const std::vector<std::uint8_t>& x) {
  std::vector<double> symbols(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) symbols[i] = x[i] ? -1.0 : 1.0;
  return symbols;
}

// Fresh i.i.d. gains for one fading interval of n_blocks codewords.
inline ChannelRealization draw_fading(int big_n, const FadingDistribution& dist,
                                      int n_blocks, std::mt19937_64& rng) {
  if (big_n < 1 || n_blocks < 1)
    throw std::invalid_argument("draw_fading: N and N_b must be >= 1");
  ChannelRealization ch;
  ch.h_abs.resize(static_cast<std::size_t>(big_n));
  for (auto& h : ch.h_abs) h = dist.draw_abs(rng);
  ch.blocks_remaining = n_blocks;
  return ch;
}

// Realization seen by a given codeword index under block fading: blocks are
// grouped in runs of n_blocks sharing one draw, and each group has its own
// seed stream, so any block's channel can be recomputed independently of
// execution order.
inline ChannelRealization fading_for_block(int big_n, const FadingDistribution& dist,
                                           int n_blocks, std::uint64_t seed,
                                           std::uint64_t block_index) {
  if (n_blocks < 1)
    throw std::invalid_argument("fading_for_block: N_b must be >= 1");
  const std::uint64_t group = block_index / static_cast<std::uint64_t>(n_blocks);
  std::mt19937_64 rng = make_stream(seed, StreamTag::kFading, group);
  ChannelRealization ch = draw_fading(big_n, dist, n_blocks, rng);
  ch.blocks_remaining =
      n_blocks - static_cast<int>(block_index % static_cast<std::uint64_t>(n_blocks));
  return ch;
}

inline ReceivedBlock transmit(const std::vector<double>& symbols,
                              const ChannelRealization& ch, const SnrPoint& snr,
                              std::mt19937_64& rng) {
  if (symbols.size() != ch.h_abs.size())
    throw std::invalid_argument("transmit: symbol/gain length mismatch");
  ReceivedBlock out;
  out.y.resize(symbols.size());
  const double amp = snr.amplitude();
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (std::size_t i = 0; i < symbols.size(); ++i)
    out.y[i] = ch.h_abs[i] * amp * symbols[i] + gauss(rng);
  return out;
}

// Test hook: the channel without its noise term.
inline ReceivedBlock transmit_noiseless(const std::vector<double>& symbols,
                                        const ChannelRealization& ch,
                                        const SnrPoint& snr) {
  if (symbols.size() != ch.h_abs.size())
    throw std::invalid_argument("transmit: symbol/gain length mismatch");
  ReceivedBlock out;
  out.y.resize(symbols.size());
  const double amp = snr.amplitude();
  for (std::size_t i = 0; i < symbols.size(); ++i)
    out.y[i] = ch.h_abs[i] * amp * symbols[i];
  return out;
}

// Coherent demapping: llr_i = 2 |h_i| sqrt(gamma) y_i, clamped.  A faded-out
// symbol (h = 0) yields LLR 0 no matter what was observed.
inline std::vector<double> demap_llr(const ReceivedBlock& rx,
                                     const ChannelRealization& ch,
                                     const SnrPoint& snr) {
  if (rx.y.size() != ch.h_abs.size())
    throw std::invalid_argument("demap_llr: length mismatch");
  std::vector<double> llrs(rx.y.size());
  const double amp = snr.amplitude();
  for (std::size_t i = 0; i < rx.y.size(); ++i)
    llrs[i] = clamp_llr(2.0 * ch.h_abs[i] * amp * rx.y[i]);
  return llrs;
}

}  // namespace polarlink
