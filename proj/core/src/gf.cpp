#include "crlcc/gf.hpp"

#include "crlcc/error.hpp"

namespace crlcc {

GaloisField::GaloisField(unsigned bits, std::uint32_t poly)
    : bits_(bits), q_(1u << bits), exp_(2 * ((1u << bits) - 1)), log_(1u << bits, 0) {
  std::uint32_t x = 1;
  const std::uint32_t order = q_ - 1;
  for (std::uint32_t i = 0; i < order; ++i) {
    exp_[i] = static_cast<Elem>(x);
    if (i > 0 && x == 1) throw ParameterError("GaloisField: polynomial is not primitive");
    log_[x] = i;
    x <<= 1;
    if (x & q_) x ^= poly;
  }
  for (std::uint32_t i = order; i < exp_.size(); ++i) exp_[i] = exp_[i - order];
}

GaloisField::Elem GaloisField::div(Elem a, Elem b) const {
  if (b == 0) throw ParameterError("GaloisField: division by zero");
  if (a == 0) return 0;
  const std::uint32_t order = q_ - 1;
  return exp_[(log_[a] + order - log_[b]) % order];
}

const GaloisField& GaloisField::get(unsigned bits) {
  static const GaloisField f8(8, 0x11D);
  static const GaloisField f16(16, 0x1100B);
  if (bits == 8) return f8;
  if (bits == 16) return f16;
  throw ParameterError("GaloisField: only GF(2^8) and GF(2^16) are provided");
}

}  // namespace crlcc
