// Non-systematic and systematic polar encoding.
//
// Non-systematic: scatter info bits into u at positions A, frozen values at
// A^c, then x = u * G.  Systematic: solve u_A = (info xor u_{A^c} G_{A^c A})
// * (G_AA)^{-1} so that the codeword satisfies x_A = info exactly; the
// subtraction in that formula is XOR over GF(2).  The inverse (G_AA)^{-1}
// and the frozen-bit contribution are cached at construction, so one Encoder
// amortizes the matrix work across a whole simulation sweep and is freely
// shareable across threads afterwards.
#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "polarlink/code_config.hpp"
#include "polarlink/gf2.hpp"

namespace polarlink {

// A codeword together with the input vector that produced it.
struct Codeword {
  std::vector<std::uint8_t> x;  // transmitted bits, length N
  std::vector<std::uint8_t> u;  // pre-transform bits, length N
};

// Projection of x onto the information positions A (ascending).
inline std::vector<std::uint8_t> extract_systematic_info(
    const CodeConfig& cfg, const std::vector<std::uint8_t>& x) {
  if (x.size() != static_cast<std::size_t>(cfg.block_length()))
    throw std::invalid_argument("extract_systematic_info: |x| != N");
  std::vector<std::uint8_t> info;
  info.reserve(cfg.info_set().size());
  for (int idx : cfg.info_set()) info.push_back(x[static_cast<std::size_t>(idx)]);
  return info;
}

class Encoder {
 public:
  explicit Encoder(CodeConfig cfg) : cfg_(std::move(cfg)) {
    const std::vector<int>& a = cfg_.info_set();
    if (!a.empty()) {
      // G_AA is unit lower-triangular for ascending A, hence invertible.
      gaa_inv_ = gf2_invert(generator_submatrix(cfg_.n(), a, a));
      std::vector<int> ac = cfg_.frozen_set();
      if (ac.empty()) {
        frozen_term_.assign(a.size(), 0);
      } else {
        frozen_term_ =
            generator_submatrix(cfg_.n(), ac, a).left_mul(cfg_.frozen_values());
      }
    }
  }

  const CodeConfig& config() const { return cfg_; }

  // x = u * G with info scattered at A and frozen values at A^c.
  Codeword nonsystematic(const std::vector<std::uint8_t>& info) const {
    Codeword cw;
    cw.u = scatter(info);
    cw.x = kron_transform(cw.u);
    return cw;
  }

  // Codeword with x_A = info.
  Codeword systematic(const std::vector<std::uint8_t>& info) const {
    check_info(info);
    std::vector<std::uint8_t> rhs(info);
    for (std::size_t i = 0; i < rhs.size(); ++i) rhs[i] ^= frozen_term_[i];
    Codeword cw;
    cw.u = cfg_.scatter_frozen();
    std::vector<std::uint8_t> u_a = gaa_inv_.left_mul(rhs);
    const std::vector<int>& a = cfg_.info_set();
    for (std::size_t i = 0; i < a.size(); ++i)
      cw.u[static_cast<std::size_t>(a[i])] = u_a[i];
    cw.x = kron_transform(cw.u);
    return cw;
  }

 private:
  std::vector<std::uint8_t> scatter(const std::vector<std::uint8_t>& info) const {
    check_info(info);
    std::vector<std::uint8_t> u = cfg_.scatter_frozen();
    const std::vector<int>& a = cfg_.info_set();
    for (std::size_t i = 0; i < a.size(); ++i)
      u[static_cast<std::size_t>(a[i])] = info[i];
    return u;
  }

  void check_info(const std::vector<std::uint8_t>& info) const {
    if (cfg_.info_count() == 0)
      throw std::invalid_argument("Encoder: K = 0 carries no data");
    if (info.size() != static_cast<std::size_t>(cfg_.info_count()))
      throw std::invalid_argument("Encoder: |info| != K");
  }

  CodeConfig cfg_;
  Gf2Matrix gaa_inv_;                       // (G_AA)^{-1}, K x K
  std::vector<std::uint8_t> frozen_term_;   // u_{A^c} * G_{A^c A}, length K
};

}  // namespace polarlink
