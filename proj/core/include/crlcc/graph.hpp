#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace crlcc {

using Node = std::uint32_t;
using Edge = std::pair<Node, Node>;

/// DAG on nodes 1..n in which every edge (u, v) has u < v, so node order is
/// a topological order. Parent and child lists are kept sorted ascending.
class Dag {
 public:
  Dag() = default;
  explicit Dag(std::size_t n) : parents_(n + 1), children_(n + 1) {}

  std::size_t node_count() const { return parents_.empty() ? 0 : parents_.size() - 1; }

  /// Adds (u, v); duplicates are dropped by finalize().
  void add_edge(Node u, Node v);
  /// Sorts and deduplicates adjacency lists. Call once after the last add_edge.
  void finalize();

  const std::vector<Node>& parents(Node v) const { return parents_[v]; }
  const std::vector<Node>& children(Node v) const { return children_[v]; }
  bool has_edge(Node u, Node v) const;

  std::size_t edge_count() const;
  std::size_t max_indegree() const;
  std::size_t max_outdegree() const;
  /// All edges in lexicographic (u, v) order.
  std::vector<Edge> edges() const;

  bool operator==(const Dag&) const = default;

 private:
  std::vector<std::vector<Node>> parents_;
  std::vector<std::vector<Node>> children_;
};

/// Backbone path plus dyadic overlays of random regular bipartite graphs.
struct LocalExpanderDag {
  Dag dag;
  std::size_t node_count = 0;
  double delta = 0.25;
  unsigned overlay_degree = 0;
  std::uint64_t rng_seed = 0;

  const std::vector<Node>& parents(Node v) const;
  const std::vector<Node>& children(Node v) const;
};

inline constexpr unsigned kDefaultProbeSize = 12;
inline constexpr unsigned kMaxOverlayDegree = 64;
/// Scales with block length up to this are joined by K_{L,L}.
inline constexpr unsigned kCompleteScale = 16;
inline constexpr std::uint64_t kCalibrationSeed = 0xC0FFEE5EEDULL;

/// Smallest d <= 64 for which 50 random d-regular bipartite graphs on
/// probe_size x probe_size nodes all pass the exact delta-expander oracle.
/// Results are memoised per (delta, probe_size, seed).
unsigned calibrate_degree(double delta, unsigned probe_size = kDefaultProbeSize,
                          std::uint64_t rng_seed = kCalibrationSeed);

/// Builds with the calibrated degree for `delta`.
LocalExpanderDag build_local_expander(std::size_t n, double delta, std::uint64_t rng_seed);
LocalExpanderDag build_local_expander(std::size_t n, double delta, unsigned overlay_degree,
                                      std::uint64_t rng_seed);

/// Random d-regular bipartite graph on [0,r) x [0,r) as the union of d
/// pairwise disjoint random perfect matchings; d >= r yields K_{r,r}.
/// Returned pairs are (left, right), sorted.
std::vector<std::pair<unsigned, unsigned>> random_regular_bipartite(unsigned r, unsigned d,
                                                                    std::mt19937_64& rng);

/// 64-bit mixer used to derive independent per-block RNG streams.
std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b);

enum class Side { Descendant, Ancestor };

/// Edges of G between the two length-2^p intervals next to u.
///
/// Descendant: left = [u, u+2^p-1], right = [u+2^p, u+2^{p+1}-1], edges run
/// left -> right. Ancestor (mirror): left = [u-2^p+1, u],
/// right = [u-2^{p+1}+1, u-2^p], edges run right -> left. Edges are stored as
/// (tail, head) with tail < head.
struct IntervalExpander {
  std::size_t left_lo = 0, left_hi = 0;
  std::size_t right_lo = 0, right_hi = 0;
  Side side = Side::Descendant;
  std::vector<Edge> edges;
  unsigned max_indegree = 0;

  template <class Rng>
  const Edge& sample(Rng& rng) const {
    std::uniform_int_distribution<std::size_t> pick(0, edges.size() - 1);
    return edges[pick(rng)];
  }
};

/// True when the interval pair for (u, p, side) lies inside [1, n].
bool interval_in_range(std::size_t n, std::size_t u, unsigned p, Side side);

IntervalExpander interval_expander(const Dag& g, std::size_t u, unsigned p,
                                   Side side = Side::Descendant);
inline IntervalExpander interval_expander(const LocalExpanderDag& g, std::size_t u, unsigned p,
                                          Side side = Side::Descendant) {
  return interval_expander(g.dag, u, p, side);
}

const std::vector<Node>& parents(const LocalExpanderDag& g, std::size_t v);
const std::vector<Node>& children(const LocalExpanderDag& g, std::size_t v);

/// floor(log2(x)) for x >= 1.
unsigned floor_log2(std::size_t x);

}  // namespace crlcc
