#include "crlcc/word.hpp"

#include <algorithm>
#include <string>

#include "crlcc/error.hpp"

namespace crlcc {

BlockLayout::BlockLayout(std::vector<BlockRegion> regions) : regions_(std::move(regions)) {
  for (std::uint32_t r = 0; r < regions_.size(); ++r) {
    const auto& reg = regions_[r];
    if (reg.ecc.block_bits == 0) throw ParameterError("BlockLayout: empty block size");
    for (std::size_t j = 0; j < reg.count; ++j) {
      offsets_.push_back(offsets_.back() + reg.ecc.block_bits);
      region_of_.push_back(r);
    }
  }
}

std::size_t BlockLayout::block_of_bit(std::size_t i) const {
  if (i < 1 || i > total_bits()) throw ParameterError("block_of_bit: index out of range");
  std::size_t pos = i - 1;
  std::size_t before = 0;
  for (const auto& reg : regions_) {
    const std::size_t span = reg.count * reg.ecc.block_bits;
    if (pos < span) return before + pos / reg.ecc.block_bits + 1;
    pos -= span;
    before += reg.count;
  }
  throw ParameterError("block_of_bit: index out of range");
}

ReceivedWord::ReceivedWord(BitString bits, BlockLayout layout)
    : bits_(std::move(bits)), layout_(std::move(layout)) {
  if (bits_.size() != layout_.total_bits())
    throw ParameterError("ReceivedWord: expected " + std::to_string(layout_.total_bits()) + " bits, got " +
                         std::to_string(bits_.size()));
  decoded_.resize(layout_.block_count() + 1);
  reencoded_.resize(layout_.block_count() + 1);
}

BitString ReceivedWord::block(std::size_t b) const { return bits_.slice(layout_.offset(b), layout_.bits(b)); }

Decoded ReceivedWord::decoded(std::size_t b) const {
  {
    std::lock_guard<std::mutex> lock(mu_);
    if (decoded_[b]) return decoded_[b];
  }
  auto d = std::make_shared<const std::optional<BitString>>(ecc_decode(layout_.ecc(b), block(b)));
  std::lock_guard<std::mutex> lock(mu_);
  if (!decoded_[b]) decoded_[b] = d;
  return decoded_[b];
}

Decoded ReceivedWord::reencoded(std::size_t b) const {
  {
    std::lock_guard<std::mutex> lock(mu_);
    if (reencoded_[b]) return reencoded_[b];
  }
  const Decoded d = decoded(b);
  std::optional<BitString> r;
  if (d->has_value()) r = ecc_encode(layout_.ecc(b), **d);
  auto out = std::make_shared<const std::optional<BitString>>(std::move(r));
  std::lock_guard<std::mutex> lock(mu_);
  if (!reencoded_[b]) reencoded_[b] = out;
  return reencoded_[b];
}

void ReceivedWord::inherit_caches(const ReceivedWord& other) {
  if (other.layout_.block_count() != layout_.block_count() || other.layout_.total_bits() != layout_.total_bits())
    throw ParameterError("inherit_caches: layout mismatch");
  const std::size_t nb = layout_.block_count();
  std::vector<char> same(nb + 1, 0);
  for (std::size_t b = 1; b <= nb; ++b) same[b] = block(b) == other.block(b);

  std::lock_guard<std::mutex> lock_other(other.mu_);
  std::lock_guard<std::mutex> lock(mu_);
  for (std::size_t b = 1; b <= nb; ++b) {
    if (!same[b]) continue;
    if (other.decoded_[b]) decoded_[b] = other.decoded_[b];
    if (other.reencoded_[b]) reencoded_[b] = other.reencoded_[b];
  }
  for (const auto& [key, m] : other.memo_) {
    bool ok = std::all_of(m.blocks.begin(), m.blocks.end(), [&](std::uint32_t b) { return same[b] != 0; });
    for (std::size_t i : m.bits) ok = ok && bits_.get(i - 1) == other.bits_.get(i - 1);
    if (ok) memo_.emplace(key, m);
  }
}

std::optional<ReceivedWord::Memo> ReceivedWord::find_memo(std::uint64_t key) const {
  std::lock_guard<std::mutex> lock(mu_);
  if (auto it = memo_.find(key); it != memo_.end()) return it->second;
  return std::nullopt;
}

void ReceivedWord::store_memo(std::uint64_t key, Memo m) const {
  std::lock_guard<std::mutex> lock(mu_);
  memo_.emplace(key, std::move(m));
}

Reader::Reader(const ReceivedWord& w) : w_(&w), block_seen_(w.layout().block_count() + 1, 0) {}

void Reader::touch_block(std::size_t b) {
  ++raw_reads_;
  if (!block_seen_[b]) {
    block_seen_[b] = 1;
    blocks_.push_back(static_cast<std::uint32_t>(b));
  }
}

void Reader::touch_bit(std::size_t i) {
  ++raw_reads_;
  bits_.push_back(i);
}

bool Reader::bit(std::size_t i) {
  const std::size_t b = layout().block_of_bit(i);
  if (auto it = overrides_.find(b); it != overrides_.end())
    return it->second.contents.get(i - 1 - layout().offset(b));
  touch_bit(i);
  return w_->bits().get(i - 1);
}

std::optional<bool> Reader::repaired_bit(std::size_t i) {
  const std::size_t b = layout().block_of_bit(i);
  const Decoded re = reencoded(b);
  if (!re->has_value()) return std::nullopt;
  return (*re)->get(i - 1 - layout().offset(b));
}

BitString Reader::block(std::size_t b) {
  if (auto it = overrides_.find(b); it != overrides_.end()) return it->second.contents;
  touch_block(b);
  return w_->block(b);
}

Decoded Reader::decoded(std::size_t b) {
  if (auto it = overrides_.find(b); it != overrides_.end()) return it->second.decoded;
  touch_block(b);
  return w_->decoded(b);
}

Decoded Reader::reencoded(std::size_t b) {
  if (auto it = overrides_.find(b); it != overrides_.end()) return it->second.reencoded;
  touch_block(b);
  return w_->reencoded(b);
}

void Reader::override_block(std::size_t b, BitString contents) {
  const EccParams& p = layout().ecc(b);
  if (contents.size() != p.block_bits) throw ParameterError("override_block: wrong block size");
  Override o;
  auto dec = ecc_decode(p, contents);
  std::optional<BitString> re;
  if (dec) re = ecc_encode(p, *dec);
  o.decoded = std::make_shared<const std::optional<BitString>>(std::move(dec));
  o.reencoded = std::make_shared<const std::optional<BitString>>(std::move(re));
  o.contents = std::move(contents);
  overrides_[b] = std::move(o);
}

std::size_t Reader::bit_queries() const {
  std::size_t total = 0;
  for (std::uint32_t b : blocks_) total += layout().bits(b);
  std::vector<std::size_t> loose;
  loose.reserve(bits_.size());
  for (std::size_t i : bits_)
    if (!block_seen_[layout().block_of_bit(i)]) loose.push_back(i);
  std::sort(loose.begin(), loose.end());
  total += static_cast<std::size_t>(std::unique(loose.begin(), loose.end()) - loose.begin());
  return total;
}

void Reader::absorb(const Reader& other) {
  for (std::uint32_t b : other.blocks_) touch_block(b);
  for (std::size_t i : other.bits_) touch_bit(i);
}

bool Reader::memo(std::uint64_t key, const std::function<bool(Reader&)>& f) {
  if (has_overrides()) return f(*this);
  if (auto m = w_->find_memo(key)) {
    for (std::uint32_t b : m->blocks) touch_block(b);
    for (std::size_t i : m->bits) touch_bit(i);
    return m->value;
  }
  Reader child(*w_);
  ReceivedWord::Memo m;
  const bool value = f(child);
  m.value = value;
  m.blocks = child.blocks_;
  m.bits = child.bits_;
  absorb(child);
  w_->store_memo(key, std::move(m));
  return value;
}

}  // namespace crlcc
