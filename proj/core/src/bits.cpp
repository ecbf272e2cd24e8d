#include "crlcc/bits.hpp"

#include <bit>
#include <stdexcept>

namespace crlcc {

std::uint64_t BitString::get_bits(std::size_t pos, unsigned width) const {
  if (width == 0) return 0;
  const std::size_t w = pos >> 6;
  const unsigned off = pos & 63;
  std::uint64_t v = words_[w] >> off;
  if (off + width > 64) v |= words_[w + 1] << (64 - off);
  if (width < 64) v &= (std::uint64_t{1} << width) - 1;
  return v;
}

void BitString::set_bits(std::size_t pos, unsigned width, std::uint64_t value) {
  for (unsigned j = 0; j < width; ++j) set(pos + j, (value >> j) & 1u);
}

BitString BitString::slice(std::size_t pos, std::size_t len) const {
  if (pos + len > size_) throw std::out_of_range("BitString::slice");
  BitString out(len);
  const std::size_t full = len / 64;
  for (std::size_t i = 0; i < full; ++i) out.words_[i] = get_bits(pos + 64 * i, 64);
  const unsigned rest = len % 64;
  if (rest) out.words_[full] = get_bits(pos + 64 * full, rest);
  return out;
}

void BitString::assign(std::size_t pos, const BitString& src) {
  if (pos + src.size_ > size_) throw std::out_of_range("BitString::assign");
  if ((pos & 63) == 0) {
    const std::size_t base = pos >> 6;
    const std::size_t full = src.size_ / 64;
    for (std::size_t i = 0; i < full; ++i) words_[base + i] = src.words_[i];
    for (std::size_t j = 64 * full; j < src.size_; ++j) set(pos + j, src.get(j));
    return;
  }
  for (std::size_t j = 0; j < src.size_; ++j) set(pos + j, src.get(j));
}

void BitString::append(const BitString& other) {
  const std::size_t old = size_;
  size_ += other.size_;
  words_.resize((size_ + 63) / 64, 0);
  assign(old, other);
}

std::size_t BitString::popcount() const {
  std::size_t c = 0;
  for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

std::size_t BitString::hamming(const BitString& other) const {
  if (other.size_ != size_) throw std::invalid_argument("BitString::hamming: size mismatch");
  std::size_t c = 0;
  for (std::size_t i = 0; i < words_.size(); ++i)
    c += static_cast<std::size_t>(std::popcount(words_[i] ^ other.words_[i]));
  return c;
}

BitString BitString::operator^(const BitString& other) const {
  if (other.size_ != size_) throw std::invalid_argument("BitString::xor: size mismatch");
  BitString out(size_);
  for (std::size_t i = 0; i < words_.size(); ++i) out.words_[i] = words_[i] ^ other.words_[i];
  return out;
}

std::vector<std::uint8_t> BitString::to_bytes() const {
  std::vector<std::uint8_t> out;
  out.reserve((size_ + 7) / 8);
  append_bytes_to(out);
  return out;
}

void BitString::append_bytes_to(std::vector<std::uint8_t>& out) const {
  const std::size_t nbytes = (size_ + 7) / 8;
  for (std::size_t b = 0; b < nbytes; ++b)
    out.push_back(static_cast<std::uint8_t>(words_[b >> 3] >> (8 * (b & 7))));
}

BitString BitString::from_bytes(std::span<const std::uint8_t> bytes, std::size_t nbits) {
  if (bytes.size() * 8 < nbits) throw std::invalid_argument("BitString::from_bytes: too few bytes");
  BitString out(nbits);
  const std::size_t nbytes = (nbits + 7) / 8;
  for (std::size_t b = 0; b < nbytes; ++b)
    out.words_[b >> 3] |= std::uint64_t{bytes[b]} << (8 * (b & 7));
  out.clear_tail();
  return out;
}

BitString BitString::random(std::size_t n, std::mt19937_64& rng) {
  BitString out(n);
  for (auto& w : out.words_) w = rng();
  out.clear_tail();
  return out;
}

std::string BitString::to_string() const {
  std::string s(size_, '0');
  for (std::size_t i = 0; i < size_; ++i)
    if (get(i)) s[i] = '1';
  return s;
}

void BitString::clear_tail() {
  const unsigned rest = size_ % 64;
  if (rest && !words_.empty()) words_.back() &= (std::uint64_t{1} << rest) - 1;
}

}  // namespace crlcc
