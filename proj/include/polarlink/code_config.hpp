// CodeConfig: the (N, K, A, u_{A^c}) tuple that specifies a polar code.
#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "polarlink/gf2.hpp"

namespace polarlink {

// A polar code of length N = 2^n with information set A (ascending indices)
// and fixed bits frozen_values at the complement positions (ascending order
// as well).  K = 0 is permitted as a degenerate carrier of "all frozen" —
// rate adaptation can reach it — but encoders reject it at use time.
class CodeConfig {
 public:
  CodeConfig(int block_length, std::vector<int> info_set,
             std::vector<std::uint8_t> frozen_values = {})
      : big_n_(block_length), info_set_(std::move(info_set)),
        frozen_values_(std::move(frozen_values)) {
    if (big_n_ < 2 || !is_power_of_two(static_cast<std::size_t>(big_n_)))
      throw std::invalid_argument("CodeConfig: N must be a power of two >= 2");
    n_ = 0;
    while ((1 << n_) < big_n_) ++n_;
    k_ = static_cast<int>(info_set_.size());
    if (k_ > big_n_)
      throw std::invalid_argument("CodeConfig: K exceeds N");
    is_info_.assign(static_cast<std::size_t>(big_n_), 0);
    int prev = -1;
    for (int idx : info_set_) {
      if (idx < 0 || idx >= big_n_)
        throw std::invalid_argument("CodeConfig: info index out of range");
      if (idx <= prev)
        throw std::invalid_argument("CodeConfig: A must be strictly increasing");
      prev = idx;
      is_info_[static_cast<std::size_t>(idx)] = 1;
    }
    if (frozen_values_.empty())
      frozen_values_.assign(static_cast<std::size_t>(big_n_ - k_), 0);
    if (frozen_values_.size() != static_cast<std::size_t>(big_n_ - k_))
      throw std::invalid_argument("CodeConfig: frozen_values must have length N - K");
    for (std::uint8_t b : frozen_values_)
      if (b > 1)
        throw std::invalid_argument("CodeConfig: frozen_values must be bits");
  }

  int n() const { return n_; }
  int block_length() const { return big_n_; }
  int info_count() const { return k_; }
  double rate() const { return static_cast<double>(k_) / big_n_; }
  const std::vector<int>& info_set() const { return info_set_; }
  const std::vector<std::uint8_t>& frozen_values() const { return frozen_values_; }
  bool is_info(int idx) const { return is_info_[static_cast<std::size_t>(idx)] != 0; }

  // Complement of A in ascending order.
  std::vector<int> frozen_set() const {
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(big_n_ - k_));
    for (int i = 0; i < big_n_; ++i)
      if (!is_info_[static_cast<std::size_t>(i)]) out.push_back(i);
    return out;
  }

  // Full-length u with frozen_values placed at A^c and zeros at A.
  std::vector<std::uint8_t> scatter_frozen() const {
    std::vector<std::uint8_t> u(static_cast<std::size_t>(big_n_), 0);
    std::size_t f = 0;
    for (int i = 0; i < big_n_; ++i)
      if (!is_info_[static_cast<std::size_t>(i)]) u[static_cast<std::size_t>(i)] = frozen_values_[f++];
    return u;
  }

 private:
  int big_n_;
  int n_;
  int k_;
  std::vector<int> info_set_;
  std::vector<std::uint8_t> frozen_values_;
  std::vector<std::uint8_t> is_info_;
};

}  // namespace polarlink
