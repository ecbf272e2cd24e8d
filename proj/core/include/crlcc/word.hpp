#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <unordered_map>
#include <vector>

#include "crlcc/bits.hpp"
#include "crlcc/ecc.hpp"

namespace crlcc {

/// `count` consecutive blocks sharing one inner-code parameter set.
struct BlockRegion {
  std::size_t count = 0;
  EccParams ecc;
};

/// Block structure of a codeword. Blocks and bits are 1-based, as in the
/// decoders; block b covers bits [offset(b) + 1, offset(b) + bits(b)].
class BlockLayout {
 public:
  BlockLayout() = default;
  explicit BlockLayout(std::vector<BlockRegion> regions);

  std::size_t block_count() const { return region_of_.size() - 1; }
  std::size_t total_bits() const { return offsets_.back(); }
  std::size_t offset(std::size_t b) const { return offsets_[b - 1]; }
  std::size_t bits(std::size_t b) const { return offsets_[b] - offsets_[b - 1]; }
  const EccParams& ecc(std::size_t b) const { return regions_[region_of_[b]].ecc; }
  /// Block holding 1-based bit i.
  std::size_t block_of_bit(std::size_t i) const;
  const std::vector<BlockRegion>& regions() const { return regions_; }

 private:
  std::vector<BlockRegion> regions_;
  std::vector<std::size_t> offsets_{0};
  std::vector<std::uint32_t> region_of_{0};
};

using Decoded = std::shared_ptr<const std::optional<BitString>>;

/// A received (possibly corrupted) word with thread-safe per-block caches.
///
/// Cached values are pure functions of block contents, so they never change
/// what a decoder returns; query accounting is done separately by Reader.
class ReceivedWord {
 public:
  ReceivedWord(BitString bits, BlockLayout layout);

  const BitString& bits() const { return bits_; }
  const BlockLayout& layout() const { return layout_; }
  std::size_t size() const { return bits_.size(); }

  BitString block(std::size_t b) const;
  Decoded decoded(std::size_t b) const;
  Decoded reencoded(std::size_t b) const;

  /// Copies cache entries from `other` wherever the underlying blocks are
  /// bit-identical. Memo entries survive only if every block they read did.
  void inherit_caches(const ReceivedWord& other);

  struct Memo {
    bool value = false;
    std::vector<std::uint32_t> blocks;
    std::vector<std::size_t> bits;
  };
  std::optional<Memo> find_memo(std::uint64_t key) const;
  void store_memo(std::uint64_t key, Memo m) const;

 private:
  BitString bits_;
  BlockLayout layout_;
  mutable std::mutex mu_;
  mutable std::vector<Decoded> decoded_;
  mutable std::vector<Decoded> reencoded_;
  mutable std::unordered_map<std::uint64_t, Memo> memo_;
};

/// Per-call view of a ReceivedWord that counts distinct queried bits.
///
/// Blocks may be overridden with locally reconstructed contents; reads of an
/// overridden block cost nothing (the reconstruction paid for them already).
class Reader {
 public:
  explicit Reader(const ReceivedWord& w);

  const ReceivedWord& word() const { return *w_; }
  const BlockLayout& layout() const { return w_->layout(); }

  bool bit(std::size_t i);
  /// Bit i of ECC(ECCD(block)) for the block holding i; nullopt when the
  /// block does not decode. Reads the whole block.
  std::optional<bool> repaired_bit(std::size_t i);
  BitString block(std::size_t b);
  Decoded decoded(std::size_t b);
  Decoded reencoded(std::size_t b);

  void override_block(std::size_t b, BitString contents);
  bool has_overrides() const { return !overrides_.empty(); }

  /// Number of distinct codeword bits read so far.
  std::size_t bit_queries() const;
  /// Number of read operations, counting repeats.
  std::size_t raw_reads() const { return raw_reads_; }

  /// Evaluates f on a fresh Reader and caches the result in the word keyed
  /// by `key`, together with the blocks and bits f read. Cached hits charge
  /// this Reader for the same reads. Bypassed while overrides are active.
  bool memo(std::uint64_t key, const std::function<bool(Reader&)>& f);

  void absorb(const Reader& other);

 private:
  void touch_block(std::size_t b);
  void touch_bit(std::size_t i);

  struct Override {
    BitString contents;
    Decoded decoded;
    Decoded reencoded;
  };

  const ReceivedWord* w_;
  std::vector<char> block_seen_;
  std::vector<std::uint32_t> blocks_;
  std::vector<std::size_t> bits_;
  std::size_t raw_reads_ = 0;
  std::map<std::size_t, Override> overrides_;
};

/// Memo key namespaces.
enum class MemoKind : std::uint64_t { WeakNode = 1, StrongNode = 2 };
inline std::uint64_t memo_key(MemoKind kind, std::uint64_t id) {
  return (static_cast<std::uint64_t>(kind) << 56) | id;
}

/// Bit-level outcome of a local decoder call.
struct DecodeResult {
  std::optional<bool> bit;  // nullopt is the reject symbol
  std::size_t bit_queries = 0;
};

}  // namespace crlcc
