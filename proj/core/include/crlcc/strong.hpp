#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <unordered_map>
#include <vector>

#include "crlcc/bits.hpp"
#include "crlcc/ecc.hpp"
#include "crlcc/graph.hpp"
#include "crlcc/hashing.hpp"
#include "crlcc/rational.hpp"
#include "crlcc/word.hpp"

namespace crlcc {

/// Degree-reduced graph G built from the meta-graph G0. Meta-node u owns the
/// G nodes (u-1)*m + 1 .. u*m; node u_j is (u-1)*m + j.
struct MetaGraph {
  LocalExpanderDag meta;
  std::size_t t = 0;
  std::size_t m = 0;
  Dag reduced;
  /// E(G0) in lexicographic order and, in parallel, the concrete G edge
  /// (u_m, v_j) each one became.
  std::vector<Edge> meta_edges;
  std::vector<Edge> meta_edge_map;

  Node node(std::size_t u, std::size_t j) const { return static_cast<Node>((u - 1) * m + j); }
  std::size_t meta_of(Node g) const { return (g - 1) / m + 1; }
  std::size_t slot_of(Node g) const { return (g - 1) % m + 1; }
  /// Index into meta_edges of (u, v), or npos.
  std::size_t edge_index(Node u, Node v) const;

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  /// (u << 32 | v) -> position in meta_edges.
  std::unordered_map<std::uint64_t, std::size_t> index;
};

/// m = 0 selects max(indeg, outdeg) + 1. Cross edges go to the lowest v_j,
/// j < m, whose current indegree is at most 1.
MetaGraph reduce_degree(const LocalExpanderDag& g0, std::size_t m = 0);

/// Edge lists of G0's interval expanders, built on first use.
class IntervalCache {
 public:
  explicit IntervalCache(const LocalExpanderDag* g) : g_(g) {}
  std::shared_ptr<const IntervalExpander> get(std::size_t u, unsigned p, Side side) const;

 private:
  const LocalExpanderDag* g_;
  mutable std::mutex mu_;
  mutable std::unordered_map<std::uint64_t, std::shared_ptr<const IntervalExpander>> map_;
};

/// Strong code instance. Blocks (1-based):
///   1..t        ECC_msg(T_u), T_u = the m message chunks of meta-node u
///   t+1..2t     ECC_lab(U_u), U_u = the m labels of meta-node u
///   2t+1..3t    ECC_lab(U_t) repeated
struct StrongCodeParams {
  std::size_t k = 0;
  unsigned ell = 128;
  unsigned beta = 1;
  Rational rate{1, 4};
  std::size_t m = 0;
  std::size_t t = 0;
  double delta = 0.05;
  double alpha = 0.0;
  unsigned kappa = 0;
  double epsilon = 0.5;
  std::size_t n = 0;
  /// Largest indegree seen over every in-range interval expander of G0.
  unsigned d_delta = 0;
  /// Set when delta, alpha or kappa sit outside the ranges the analysis needs.
  bool out_of_theorem = false;
  std::uint64_t graph_seed = 0;
  std::shared_ptr<const MetaGraph> meta;
  std::shared_ptr<const IntervalCache> intervals;
  HashSeed seed;
  EccParams ecc_msg;
  EccParams ecc_lab;
  BlockLayout layout;

  std::size_t msg_block_bits() const { return ecc_msg.block_bits; }
  std::size_t lab_block_bits() const { return ecc_lab.block_bits; }
};

struct StrongOptions {
  double delta = 0.05;
  unsigned beta = 1;
  Rational rate{1, 4};
  double epsilon = 0.5;
  std::optional<double> alpha;      // default delta / (10 d_delta)
  std::optional<unsigned> kappa;    // default ceil(1600 d_delta)
};

StrongCodeParams make_strong_params(std::size_t t, unsigned ell, HashSeed seed, std::uint64_t graph_seed,
                                    StrongOptions opt = {});

/// Max indegree over all in-range interval expanders of g.
unsigned measure_d_delta(const LocalExpanderDag& g);

BitString strong_encode(const StrongCodeParams& p, const BitString& x);

/// Meta-node of bit i: message blocks map to their own meta-node, label
/// blocks restart at 1, and every repetition bit maps to t.
std::size_t metanode(const StrongCodeParams& p, std::size_t i);
/// First bit of the label block 2t; bits from here on are decoded by majority.
inline std::size_t strong_back_start(const StrongCodeParams& p) {
  return p.t * p.msg_block_bits() + (p.t - 1) * p.lab_block_bits() + 1;
}

enum class MetaColor { Green, Red };
enum class EdgeColor { Green, Red };

/// Colour of G node g from the decoded blocks of its own and parent meta-nodes.
bool strong_node_green(const StrongCodeParams& p, Reader& r, Node g);
MetaColor is_green_meta(const StrongCodeParams& p, Reader& r, std::size_t u);
EdgeColor is_green_edge(const StrongCodeParams& p, Reader& r, Node u, Node v);
bool is_local_expander(const StrongCodeParams& p, Reader& r, std::size_t u, std::mt19937_64& rng);
std::size_t local_expander_samples(const StrongCodeParams& p);

std::size_t dec_eq_t_samples(const StrongCodeParams& p);
std::optional<BitString> dec_eq_t_block(const StrongCodeParams& p, Reader& r, std::mt19937_64& rng);
std::optional<bool> dec_eq_t(const StrongCodeParams& p, Reader& r, std::size_t i, std::mt19937_64& rng);
/// Expansion gate of the u < t corrector, including the meta-node t re-check
/// for u >= 3t/4.
bool strong_gate(const StrongCodeParams& p, Reader& r, std::size_t u, std::mt19937_64& rng);
std::optional<bool> dec_lt_t(const StrongCodeParams& p, Reader& r, std::size_t i, std::mt19937_64& rng);

DecodeResult strong_decode(const StrongCodeParams& p, const ReceivedWord& w, std::size_t i,
                           std::mt19937_64& rng);
DecodeResult strong_decode_message(const StrongCodeParams& p, const ReceivedWord& w, std::size_t i,
                                   std::mt19937_64& rng);

}  // namespace crlcc
