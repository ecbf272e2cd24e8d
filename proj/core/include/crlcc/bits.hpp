#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace crlcc {

/// Packed bit string. Bit j lives in word j/64 at position j%64, which makes
/// the byte image LSB-first (the on-disk convention for every file format).
/// Positions are 0-based; decoders translate from the 1-based code indices.
class BitString {
 public:
  BitString() = default;
  explicit BitString(std::size_t n) : size_(n), words_((n + 63) / 64, 0) {}

  std::size_t size() const { return size_; }
  bool empty() const { return size_ == 0; }

  bool get(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }
  void set(std::size_t i, bool b) {
    const std::uint64_t m = std::uint64_t{1} << (i & 63);
    if (b) {
      words_[i >> 6] |= m;
    } else {
      words_[i >> 6] &= ~m;
    }
  }
  void flip(std::size_t i) { words_[i >> 6] ^= std::uint64_t{1} << (i & 63); }

  /// Reads `width` (<= 64) bits starting at `pos` as an integer, LSB first.
  std::uint64_t get_bits(std::size_t pos, unsigned width) const;
  void set_bits(std::size_t pos, unsigned width, std::uint64_t value);

  BitString slice(std::size_t pos, std::size_t len) const;
  /// Overwrites bits [pos, pos + src.size()).
  void assign(std::size_t pos, const BitString& src);
  void append(const BitString& other);

  std::size_t popcount() const;
  std::size_t hamming(const BitString& other) const;
  BitString operator^(const BitString& other) const;
  bool operator==(const BitString& other) const {
    return size_ == other.size_ && words_ == other.words_;
  }

  /// LSB-first byte image, ceil(size/8) bytes, trailing bits zero.
  std::vector<std::uint8_t> to_bytes() const;
  void append_bytes_to(std::vector<std::uint8_t>& out) const;
  static BitString from_bytes(std::span<const std::uint8_t> bytes, std::size_t nbits);

  static BitString random(std::size_t n, std::mt19937_64& rng);
  static BitString zeros(std::size_t n) { return BitString(n); }

  std::string to_string() const;  // '0'/'1' characters, position 0 first

  const std::vector<std::uint64_t>& words() const { return words_; }

 private:
  void clear_tail();

  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace crlcc
