#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <tuple>
#include <vector>

#include "crlcc/bits.hpp"
#include "crlcc/graph.hpp"

namespace crlcc {

struct WeakCodeParams;
struct StrongCodeParams;

/// Largest bipartite side the exhaustive expander oracle accepts.
inline constexpr unsigned kMaxOracleSide = 24;

/// Closed interval of nodes [lo, hi].
struct Interval {
  std::size_t lo = 0;
  std::size_t hi = 0;
  std::size_t size() const { return hi + 1 - lo; }
};

/// Exhaustive delta-expander test on an r x r bipartite graph. adj[a] holds
/// the right-neighbour bitmask of left node a. Every left subset of size
/// ceil(delta*r) must leave fewer than ceil(delta*r) right nodes unreached.
bool oracle_bipartite_expander(const std::vector<std::uint32_t>& adj, unsigned r, double delta);

/// The same test on an explicit edge list between A and B (edges with an
/// endpoint outside A x B, in either orientation, are ignored). Throws
/// ParameterError if |A| != |B| or |A| > kMaxOracleSide.
bool oracle_delta_expander(const std::vector<Edge>& edges, Interval a, Interval b, double delta);

/// delta-local expansion around v for every radius r <= max_r whose interval
/// pair lies in [1, n], in both directions.
bool has_local_expansion(const Dag& g, Node v, double delta, unsigned max_r);

struct ExpansionReport {
  bool ok = true;
  std::size_t pairs_checked = 0;
  /// First failure found, as (v, r, descendant?).
  std::optional<std::tuple<Node, unsigned, bool>> failure;
};
ExpansionReport verify_local_expansion(const Dag& g, double delta, unsigned max_r);

/// alpha-goodness of v under S. in_s is indexed 1..n (entry 0 unused). Both
/// one-sided families [v-r+1, v] and [v, v+r-1] are clipped to [1, n] and
/// must hold at most alpha*r members of S for every r >= 1.
bool oracle_alpha_good(const std::vector<char>& in_s, std::size_t v, double alpha);
/// oracle_alpha_good for every v; entry 0 unused.
std::vector<char> alpha_good_set(const std::vector<char>& in_s, double alpha);

/// Nodes reachable from `from` along directed edges avoiding `removed`
/// (indexed 1..n). `from` itself counts as reachable unless removed.
std::vector<char> reachable_from(const Dag& g, Node from, const std::vector<char>& removed);

/// Exact node colours of the weak code by full decoding and hash replay.
/// Entry v (1..k') is 1 when v is green; entry 0 unused.
std::vector<char> oracle_green_set(const WeakCodeParams& p, const BitString& w);

struct StrongColors {
  std::vector<char> node_green;  // G nodes 1..t*m
  std::vector<char> meta_green;  // meta-nodes 1..t
  std::vector<char> edge_green;  // parallel to meta graph edges()
};
StrongColors oracle_green_set(const StrongCodeParams& p, const BitString& w);

/// Blocks b (1-based) whose re-encoding differs from the honest block.
std::vector<std::size_t> oracle_tampered_blocks(const WeakCodeParams& p, const BitString& c, const BitString& w);
std::vector<std::size_t> oracle_tampered_blocks(const StrongCodeParams& p, const BitString& c, const BitString& w);
/// Meta-nodes owning at least one tampered block, ascending.
std::vector<std::size_t> oracle_tampered_set(const StrongCodeParams& p, const BitString& c, const BitString& w);

}  // namespace crlcc
