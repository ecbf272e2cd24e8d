#pragma once

#include <cstdint>
#include <vector>

namespace crlcc {

/// GF(2^8) or GF(2^16) with log/antilog tables. Elements are plain integers;
/// addition is xor.
class GaloisField {
 public:
  using Elem = std::uint16_t;

  static const GaloisField& get(unsigned bits);

  unsigned bits() const { return bits_; }
  std::uint32_t size() const { return q_; }

  static Elem add(Elem a, Elem b) { return a ^ b; }
  Elem mul(Elem a, Elem b) const {
    if (a == 0 || b == 0) return 0;
    return exp_[log_[a] + log_[b]];
  }
  Elem div(Elem a, Elem b) const;
  Elem inv(Elem a) const { return div(1, a); }
  /// alpha^i for 0 <= i < 2(q-1).
  Elem exp(std::uint32_t i) const { return exp_[i]; }
  /// Discrete log of a nonzero element.
  std::uint32_t log(Elem a) const { return log_[a]; }

 private:
  GaloisField(unsigned bits, std::uint32_t poly);

  unsigned bits_;
  std::uint32_t q_;
  std::vector<Elem> exp_;
  std::vector<std::uint32_t> log_;
};

}  // namespace crlcc
