#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>

#include "crlcc/bits.hpp"
#include "crlcc/ecc.hpp"
#include "crlcc/graph.hpp"
#include "crlcc/hashing.hpp"
#include "crlcc/word.hpp"

namespace crlcc {

/// Weak code instance. Codeword blocks (each 4*ell bits, 1-based):
///   1..k'        ECC(x_v)                message chunks
///   k'+1..2k'    ECC(label of v)         labels
///   2k'+1..3k'   ECC(label of k')        repetition of the last label
struct WeakCodeParams {
  std::size_t k = 0;
  unsigned ell = 128;
  std::size_t k_prime = 0;
  double delta = 0.01;
  double alpha = 0.5;
  double epsilon = 0.5;
  std::size_t n = 0;
  std::size_t block_bits = 0;
  std::uint64_t graph_seed = 0;
  LocalExpanderDag graph;
  HashSeed seed;
  EccParams ecc;
  BlockLayout layout;
};

struct WeakOptions {
  double delta = 0.01;
  double alpha = 0.5;
  double epsilon = 0.5;
};

/// k must be a positive multiple of ell with k / ell >= 2; ell a multiple of 8.
WeakCodeParams make_weak_params(std::size_t k, unsigned ell, HashSeed seed, std::uint64_t graph_seed,
                                WeakOptions opt = {});

BitString weak_encode(const WeakCodeParams& p, const BitString& x);

/// Threshold between the two corrector branches: bits above it are read
/// from the label of k' and its repetitions.
inline std::size_t weak_back_start(const WeakCodeParams& p) { return 8 * p.k - 4 * p.ell; }

/// Node whose blocks carry bit i: ceil(i / (4 ell)) mod k', with 0 -> k'.
std::size_t weak_node_of_bit(const WeakCodeParams& p, std::size_t i);

enum class NodeColor { Green, Red };

NodeColor is_green(const WeakCodeParams& p, Reader& r, std::size_t v);
bool is_good(const WeakCodeParams& p, Reader& r, std::size_t v, std::mt19937_64& rng);

/// Majority of re-encoded repetition blocks: a reconstruction of block 2k'.
std::optional<BitString> dec1_block(const WeakCodeParams& p, Reader& r, std::mt19937_64& rng);
std::size_t dec1_samples(const WeakCodeParams& p);
std::size_t is_good_samples(const WeakCodeParams& p);

std::optional<bool> dec1(const WeakCodeParams& p, Reader& r, std::size_t i, std::mt19937_64& rng);
std::optional<bool> dec2(const WeakCodeParams& p, Reader& r, std::size_t i, std::mt19937_64& rng);
/// The alpha-goodness gate shared by dec2 and message mode: node k' (with its
/// label block replaced by the dec1 reconstruction) and node v must pass.
bool weak_gate(const WeakCodeParams& p, Reader& r, std::size_t v, std::mt19937_64& rng);

DecodeResult weak_decode(const WeakCodeParams& p, const ReceivedWord& w, std::size_t i, std::mt19937_64& rng);
DecodeResult weak_decode_message(const WeakCodeParams& p, const ReceivedWord& w, std::size_t i,
                                 std::mt19937_64& rng);

}  // namespace crlcc
