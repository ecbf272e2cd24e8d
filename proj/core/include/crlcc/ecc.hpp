#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "crlcc/bits.hpp"
#include "crlcc/rational.hpp"

namespace crlcc {

/// Parameters of the inner binary code used for every codeword block.
///
/// The code is Reed-Solomon over GF(2^8) (GF(2^16) once the block needs more
/// than 256 symbols), evaluated at the points 0..N-1. At rates below 1/2 every
/// byte of every RS symbol is further protected by a fixed systematic
/// [16,8,5] binary code; otherwise the RS symbols are sent as raw bits.
struct EccParams {
  Rational rate{1, 4};
  std::size_t message_bits = 0;
  std::size_t block_bits = 0;
  /// Guaranteed unique-decoding radius as a fraction of block_bits (Delta_J).
  double decode_radius = 0.0;
  /// floor(decode_radius * block_bits): any error of this weight is repaired.
  std::size_t radius_bits = 0;

  unsigned symbol_bits = 8;
  std::size_t rs_n = 0;
  std::size_t rs_k = 0;
  bool inner = true;

  bool operator==(const EccParams&) const = default;
};

/// Builds the parameter set for `message_bits` at rate R. message_bits must
/// be a positive multiple of the symbol size and R must make the block length
/// integral; violations raise ParameterError.
EccParams make_ecc_params(std::size_t message_bits, Rational rate = Rational(1, 4));

BitString ecc_encode(const EccParams& p, const BitString& m);

/// Nearest-codeword message when some codeword lies within the RS
/// unique-decoding radius of the inner-decoded word, std::nullopt otherwise.
std::optional<BitString> ecc_decode(const EccParams& p, const BitString& w);

/// ECC(ECCD(w)).
std::optional<BitString> reencode(const EccParams& p, const BitString& w);

/// A set of radius_bits + 1 block positions whose flip always pushes the
/// block beyond repair: reencode() of the flipped codeword never returns the
/// original. The pattern does not depend on the codeword (the code is linear).
std::vector<std::size_t> beyond_radius_pattern(const EccParams& p, std::mt19937_64& rng);

/// Minimum distance by exhaustive enumeration; only for message_bits <= 16.
std::size_t exhaustive_min_distance(const EccParams& p);

namespace inner {

/// The fixed [16,8,5] inner code: word = data | parity(data) << 8.
std::uint8_t parity(std::uint8_t data);
std::uint16_t encode(std::uint8_t data);
/// Syndrome decoding with minimum-weight coset leaders (maximum likelihood).
std::uint8_t decode(std::uint16_t word);
unsigned min_distance();
/// A minimum-weight nonzero codeword.
std::uint16_t min_weight_codeword();

}  // namespace inner

}  // namespace crlcc
