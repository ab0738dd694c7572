// Successive-cancellation decoding over the F^{(x)n} factor graph.
//
// Messages are LLRs in nats, log P(bit=0|obs)/P(bit=1|obs), clamped to
// +/-40: beyond that decisions are numerically saturated anyway.  The update
// pair is the standard one: f is the tanh rule (evaluated in a log-domain
// form that cannot overflow), g the signed sum.  A min-sum variant of f is
// selectable.  Decisions use "LLR >= 0 decodes to 0", so an exact tie gives
// bit 0 deterministically.
//
// The recursion works on contiguous halves: a node holding LLRs a[0..S)
// sends f(a[k], a[k+S/2]) to its left child and, once the left bits beta_L
// come back, g(a[k], a[k+S/2], beta_L[k]) to its right child; partial sums
// recombine as (beta_L xor beta_R, beta_R).  Depth-first traversal therefore
// decides u_0 .. u_{N-1} in natural order, and the root's recombined bits
// equal the re-encoded codeword.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "polarlink/code_config.hpp"
#include "polarlink/gf2.hpp"

namespace polarlink {

inline constexpr double kLlrClamp = 40.0;

inline double clamp_llr(double v) {
  return std::min(kLlrClamp, std::max(-kLlrClamp, v));
}

// Exact check-node rule 2*atanh(tanh(a/2)*tanh(b/2)).  For small magnitudes
// the tanh form is used directly: it is well conditioned there (|product| <=
// tanh(1/2)) and keeps the true ~a*b/2 magnitude down to subnormals, whereas
// the log-domain rearrangement cancels catastrophically below |v| ~ 1e-16.
// For large magnitudes the rearranged form
// sgn(a)sgn(b)min(|a|,|b|) + log1p(e^{-|a+b|}) - log1p(e^{-|a-b|})
// is algebraically identical and stable for saturated inputs.  A chain of f
// updates squares a small magnitude at every step, so a long chain can
// underflow double range entirely; the result is then pinned to a signed
// 1e-300 so the sign (which carries the decision) is never silently erased.
// Losing it would make genie-aided error counts for the least reliable
// channels read as zero, inverting their ranking.
inline double llr_f(double a, double b) {
  const double m = std::min(std::fabs(a), std::fabs(b));
  if (m < 1.0) {
    double v = 2.0 * std::atanh(std::tanh(0.5 * a) * std::tanh(0.5 * b));
    if (v == 0.0 && a != 0.0 && b != 0.0) {
      const double sgn = ((a < 0.0) != (b < 0.0)) ? -1.0 : 1.0;
      v = sgn * 1e-300;
    }
    return clamp_llr(v);
  }
  const double sgn = ((a < 0.0) != (b < 0.0)) ? -1.0 : 1.0;
  const double v = sgn * m + std::log1p(std::exp(-std::fabs(a + b))) -
                   std::log1p(std::exp(-std::fabs(a - b)));
  return clamp_llr(v);
}

// Min-sum approximation of llr_f.
inline double llr_f_minsum(double a, double b) {
  const double sgn = ((a < 0.0) != (b < 0.0)) ? -1.0 : 1.0;
  return clamp_llr(sgn * std::min(std::fabs(a), std::fabs(b)));
}

// Variable-node rule: b + a when the partial bit is 0, b - a when it is 1.
inline double llr_g(double a, double b, std::uint8_t partial_bit) {
  return clamp_llr(partial_bit ? b - a : b + a);
}

enum class DecoderRule { kExact, kMinSum };

struct DecodeResult {
  std::vector<std::uint8_t> u_hat;     // length N
  std::vector<std::uint8_t> info_hat;  // u_hat restricted to A, length K
};

// One decoder instance owns its scratch buffers: single-threaded per call,
// cheap to construct, so run one instance per worker for parallel trials.
class ScDecoder {
 public:
  explicit ScDecoder(CodeConfig cfg, DecoderRule rule = DecoderRule::kExact)
      : cfg_(std::move(cfg)), rule_(rule) {
    const int n = cfg_.n();
    alpha_.resize(static_cast<std::size_t>(n) + 1);
    beta_.resize(static_cast<std::size_t>(n) + 1);
    beta_left_.resize(static_cast<std::size_t>(n) + 1);
    for (int d = 0; d <= n; ++d) {
      const std::size_t len = static_cast<std::size_t>(cfg_.block_length()) >> d;
      alpha_[static_cast<std::size_t>(d)].resize(len);
      beta_[static_cast<std::size_t>(d)].resize(len);
      beta_left_[static_cast<std::size_t>(d)].resize(len);
    }
    forced_u_ = cfg_.scatter_frozen();
  }

  const CodeConfig& config() const { return cfg_; }

  DecodeResult decode(const std::vector<double>& channel_llrs) {
    run(channel_llrs, /*genie=*/nullptr, /*errors=*/nullptr);
    DecodeResult res;
    res.u_hat = u_hat_;
    res.info_hat.reserve(cfg_.info_set().size());
    for (int idx : cfg_.info_set())
      res.info_hat.push_back(u_hat_[static_cast<std::size_t>(idx)]);
    return res;
  }

  // Decode, re-encode x_hat = u_hat * G, and return x_hat restricted to A:
  // the information estimate for systematically encoded codewords.
  std::vector<std::uint8_t> decode_systematic(
      const std::vector<double>& channel_llrs) {
    run(channel_llrs, nullptr, nullptr);
    std::vector<std::uint8_t> x_hat = u_hat_;
    kron_transform_inplace(x_hat);
    std::vector<std::uint8_t> info;
    info.reserve(cfg_.info_set().size());
    for (int idx : cfg_.info_set())
      info.push_back(x_hat[static_cast<std::size_t>(idx)]);
    return info;
  }

  // Genie-aided pass for construction: every index is treated as an
  // information bit, each raw decision is compared against true_u[i] (error
  // recorded in `errors`), and the true bit is fed onward so later decisions
  // see correct partial sums.
  void genie(const std::vector<double>& channel_llrs,
             const std::vector<std::uint8_t>& true_u,
             std::vector<std::uint8_t>& errors) {
    if (true_u.size() != static_cast<std::size_t>(cfg_.block_length()))
      throw std::invalid_argument("ScDecoder: |true_u| != N");
    errors.assign(true_u.size(), 0);
    run(channel_llrs, &true_u, &errors);
  }

 private:
  void run(const std::vector<double>& channel_llrs,
           const std::vector<std::uint8_t>* genie_u,
           std::vector<std::uint8_t>* errors) {
    if (channel_llrs.size() != static_cast<std::size_t>(cfg_.block_length()))
      throw std::invalid_argument("ScDecoder: |llrs| != N");
    u_hat_.assign(channel_llrs.size(), 0);
    alpha_[0] = channel_llrs;
    genie_u_ = genie_u;
    errors_ = errors;
    node(0, 0);
  }

  void node(int depth, int base) {
    const std::size_t d = static_cast<std::size_t>(depth);
    if (depth == cfg_.n()) {
      leaf(base, alpha_[d][0], &beta_[d][0]);
      return;
    }
    const std::size_t half = alpha_[d].size() / 2;
    for (std::size_t k = 0; k < half; ++k)
      alpha_[d + 1][k] = rule_ == DecoderRule::kExact
                             ? llr_f(alpha_[d][k], alpha_[d][k + half])
                             : llr_f_minsum(alpha_[d][k], alpha_[d][k + half]);
    node(depth + 1, base);
    std::copy(beta_[d + 1].begin(), beta_[d + 1].end(), beta_left_[d + 1].begin());
    for (std::size_t k = 0; k < half; ++k)
      alpha_[d + 1][k] =
          llr_g(alpha_[d][k], alpha_[d][k + half], beta_left_[d + 1][k]);
    node(depth + 1, base + static_cast<int>(half));
    for (std::size_t k = 0; k < half; ++k) {
      beta_[d][k] = beta_left_[d + 1][k] ^ beta_[d + 1][k];
      beta_[d][k + half] = beta_[d + 1][k];
    }
  }

  void leaf(int index, double llr, std::uint8_t* beta_out) {
    const std::size_t i = static_cast<std::size_t>(index);
    std::uint8_t decision = llr >= 0.0 ? 0 : 1;
    std::uint8_t bit;
    if (genie_u_ != nullptr) {
      (*errors_)[i] = decision != (*genie_u_)[i] ? 1 : 0;
      bit = (*genie_u_)[i];
    } else if (cfg_.is_info(index)) {
      bit = decision;
    } else {
      bit = forced_u_[i];
    }
    u_hat_[i] = bit;
    *beta_out = bit;
  }

  CodeConfig cfg_;
  DecoderRule rule_;
  std::vector<std::vector<double>> alpha_;
  std::vector<std::vector<std::uint8_t>> beta_;
  std::vector<std::vector<std::uint8_t>> beta_left_;
  std::vector<std::uint8_t> forced_u_;
  std::vector<std::uint8_t> u_hat_;
  const std::vector<std::uint8_t>* genie_u_ = nullptr;
  std::vector<std::uint8_t>* errors_ = nullptr;
};

}  // namespace polarlink
