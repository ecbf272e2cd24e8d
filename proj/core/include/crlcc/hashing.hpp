#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "crlcc/bits.hpp"
#include "crlcc/graph.hpp"

namespace crlcc {

/// Public seed s. 16 bytes for lambda = 128, 32 bytes for lambda = 256.
struct HashSeed {
  std::vector<std::uint8_t> bytes;
  unsigned lambda = 256;

  bool operator==(const HashSeed&) const = default;
};

/// A label is an ell-bit string.
using Label = BitString;

/// Fresh seed from the OS CSPRNG (OpenSSL RAND_bytes).
HashSeed gen(unsigned lambda);
/// Test mode: the seed is a deterministic function of `rng_seed`.
HashSeed gen(unsigned lambda, std::uint64_t rng_seed);

/// Domain tags keep label hashing apart from any other use of the seed.
inline constexpr std::uint8_t kTagLabel = 0x4C;
inline constexpr std::uint8_t kTagGeneric = 0x47;

/// SHA-256(seed || tag || data) truncated to ell bits. For ell > 256 the
/// output is extended in counter mode: SHA-256(seed || tag || ctr_be32 || data).
Label hash(const HashSeed& s, std::span<const std::uint8_t> data, unsigned ell,
           std::uint8_t tag = kTagGeneric);

/// Label of one node: H(s, x_v o l_{v1} o ... o l_{vd}) with parent labels
/// in ascending parent order. x_v and every label must be byte-aligned.
Label node_label(const HashSeed& s, const BitString& x_v, std::span<const Label* const> parent_labels,
                 unsigned ell);

/// Labels of every node of g in topological order. x has one chunk per node
/// (x[0] is node 1), each exactly chunk_bits long.
std::vector<Label> label_graph(const Dag& g, const HashSeed& s, const std::vector<BitString>& x,
                               std::size_t chunk_bits, unsigned ell);
inline std::vector<Label> label_graph(const LocalExpanderDag& g, const HashSeed& s,
                                      const std::vector<BitString>& x, std::size_t chunk_bits,
                                      unsigned ell) {
  return label_graph(g.dag, s, x, chunk_bits, ell);
}

}  // namespace crlcc
