#include "crlcc/graph.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <mutex>
#include <string>
#include <tuple>

#include "crlcc/error.hpp"
#include "crlcc/oracles.hpp"

namespace crlcc {

void Dag::add_edge(Node u, Node v) {
  if (u == 0 || v == 0 || u >= v || v > node_count())
    throw ParameterError("Dag::add_edge: need 1 <= u < v <= n, got (" + std::to_string(u) + "," +
                         std::to_string(v) + ")");
  parents_[v].push_back(u);
  children_[u].push_back(v);
}

void Dag::finalize() {
  for (auto* lists : {&parents_, &children_}) {
    for (auto& l : *lists) {
      std::sort(l.begin(), l.end());
      l.erase(std::unique(l.begin(), l.end()), l.end());
    }
  }
}

bool Dag::has_edge(Node u, Node v) const {
  if (u == 0 || u > node_count()) return false;
  const auto& c = children_[u];
  return std::binary_search(c.begin(), c.end(), v);
}

std::size_t Dag::edge_count() const {
  std::size_t e = 0;
  for (const auto& p : parents_) e += p.size();
  return e;
}

std::size_t Dag::max_indegree() const {
  std::size_t m = 0;
  for (const auto& p : parents_) m = std::max(m, p.size());
  return m;
}

std::size_t Dag::max_outdegree() const {
  std::size_t m = 0;
  for (const auto& c : children_) m = std::max(m, c.size());
  return m;
}

std::vector<Edge> Dag::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count());
  for (Node u = 1; u <= node_count(); ++u)
    for (Node v : children_[u]) out.emplace_back(u, v);
  return out;
}

const std::vector<Node>& LocalExpanderDag::parents(Node v) const { return crlcc::parents(*this, v); }
const std::vector<Node>& LocalExpanderDag::children(Node v) const { return crlcc::children(*this, v); }

const std::vector<Node>& parents(const LocalExpanderDag& g, std::size_t v) {
  if (v < 1 || v > g.node_count) throw ParameterError("parents: node out of range");
  return g.dag.parents(static_cast<Node>(v));
}

const std::vector<Node>& children(const LocalExpanderDag& g, std::size_t v) {
  if (v < 1 || v > g.node_count) throw ParameterError("children: node out of range");
  return g.dag.children(static_cast<Node>(v));
}

unsigned floor_log2(std::size_t x) {
  if (x == 0) throw ParameterError("floor_log2(0)");
  return static_cast<unsigned>(std::bit_width(x) - 1);
}

std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
  // splitmix64 finaliser over a combined state.
  std::uint64_t z = a + 0x9E3779B97F4A7C15ULL * (b + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

namespace {

/// Random perfect matching inside the allowed (unused) pairs of an
/// (r - j)-regular bipartite graph; one always exists by Hall's theorem.
class MatchingSampler {
 public:
  MatchingSampler(unsigned r, const std::vector<std::vector<char>>& used, std::mt19937_64& rng)
      : r_(r), used_(used), rng_(rng), match_right_(r, -1), order_(r) {
    for (unsigned i = 0; i < r; ++i) order_[i] = i;
  }

  std::vector<int> run() {
    std::vector<unsigned> lefts(r_);
    for (unsigned i = 0; i < r_; ++i) lefts[i] = i;
    std::shuffle(lefts.begin(), lefts.end(), rng_);
    for (unsigned l : lefts) {
      std::shuffle(order_.begin(), order_.end(), rng_);
      bool placed = false;
      for (unsigned rr : order_) {
        if (!used_[l][rr] && match_right_[rr] < 0) {
          match_right_[rr] = static_cast<int>(l);
          placed = true;
          break;
        }
      }
      if (placed) continue;
      seen_.assign(r_, 0);
      if (!augment(l)) throw ParameterError("random_regular_bipartite: no perfect matching");
    }
    return match_right_;
  }

 private:
  bool augment(unsigned l) {
    for (unsigned rr = 0; rr < r_; ++rr) {
      if (used_[l][rr] || seen_[rr]) continue;
      seen_[rr] = 1;
      if (match_right_[rr] < 0 || augment(static_cast<unsigned>(match_right_[rr]))) {
        match_right_[rr] = static_cast<int>(l);
        return true;
      }
    }
    return false;
  }

  unsigned r_;
  const std::vector<std::vector<char>>& used_;
  std::mt19937_64& rng_;
  std::vector<int> match_right_;
  std::vector<unsigned> order_;
  std::vector<char> seen_;
};

}  // namespace

std::vector<std::pair<unsigned, unsigned>> random_regular_bipartite(unsigned r, unsigned d,
                                                                    std::mt19937_64& rng) {
  std::vector<std::pair<unsigned, unsigned>> out;
  if (r == 0 || d == 0) return out;
  if (d >= r) {
    out.reserve(static_cast<std::size_t>(r) * r);
    for (unsigned l = 0; l < r; ++l)
      for (unsigned rr = 0; rr < r; ++rr) out.emplace_back(l, rr);
    return out;
  }
  std::vector<std::vector<char>> used(r, std::vector<char>(r, 0));
  for (unsigned j = 0; j < d; ++j) {
    MatchingSampler sampler(r, used, rng);
    const auto match = sampler.run();
    for (unsigned rr = 0; rr < r; ++rr) used[static_cast<unsigned>(match[rr])][rr] = 1;
  }
  for (unsigned l = 0; l < r; ++l)
    for (unsigned rr = 0; rr < r; ++rr)
      if (used[l][rr]) out.emplace_back(l, rr);
  return out;
}

unsigned calibrate_degree(double delta, unsigned probe_size, std::uint64_t rng_seed) {
  if (!(delta > 0.0 && delta < 1.0)) throw ParameterError("calibrate_degree: delta must lie in (0,1)");
  if (probe_size < 1 || probe_size > kMaxOracleSide)
    throw ParameterError("calibrate_degree: probe_size must lie in [1, " + std::to_string(kMaxOracleSide) + "]");

  static std::mutex mu;
  static std::map<std::tuple<double, unsigned, std::uint64_t>, unsigned> memo;
  const auto key = std::make_tuple(delta, probe_size, rng_seed);
  {
    std::lock_guard<std::mutex> lock(mu);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
  }

  constexpr int kTrials = 50;
  for (unsigned d = 1; d <= kMaxOverlayDegree; ++d) {
    bool all = true;
    for (int trial = 0; trial < kTrials && all; ++trial) {
      std::mt19937_64 rng(mix_seed(mix_seed(rng_seed, d), static_cast<std::uint64_t>(trial)));
      const auto edges = random_regular_bipartite(probe_size, d, rng);
      std::vector<std::uint32_t> adj(probe_size, 0);
      for (auto [l, rr] : edges) adj[l] |= std::uint32_t{1} << rr;
      all = oracle_bipartite_expander(adj, probe_size, delta);
    }
    if (all) {
      std::lock_guard<std::mutex> lock(mu);
      memo[key] = d;
      return d;
    }
  }
  throw CalibrationError("calibrate_degree: no degree <= 64 passes for delta=" + std::to_string(delta));
}

LocalExpanderDag build_local_expander(std::size_t n, double delta, std::uint64_t rng_seed) {
  if (!(delta > 0.0 && delta <= 0.25)) throw ParameterError("build_local_expander: need 0 < delta <= 1/4");
  return build_local_expander(n, delta, calibrate_degree(delta), rng_seed);
}

LocalExpanderDag build_local_expander(std::size_t n, double delta, unsigned overlay_degree,
                                      std::uint64_t rng_seed) {
  if (n < 2) throw ParameterError("build_local_expander: need n >= 2");
  if (n > 0xFFFFFFFFull) throw ParameterError("build_local_expander: n too large");
  if (!(delta > 0.0 && delta <= 0.25)) throw ParameterError("build_local_expander: need 0 < delta <= 1/4");
  if (overlay_degree == 0) throw ParameterError("build_local_expander: degree must be positive");

  LocalExpanderDag g;
  g.dag = Dag(n);
  g.node_count = n;
  g.delta = delta;
  g.overlay_degree = overlay_degree;
  g.rng_seed = rng_seed;

  for (Node v = 1; v < n; ++v) g.dag.add_edge(v, v + 1);

  // Scale p joins every pair of consecutive length-L blocks (L = 2^p) in two
  // phases whose block boundaries sit at multiples of L and at L/2 mod L.
  // Blocks cut by either end of [1, n] are joined too, restricted to the
  // nodes that exist. Short scales are complete bipartite.
  for (unsigned p = 1; (std::size_t{1} << p) < n; ++p) {
    const std::size_t len = std::size_t{1} << p;
    const unsigned d = len <= kCompleteScale ? static_cast<unsigned>(len)
                                             : static_cast<unsigned>(std::min<std::size_t>(overlay_degree, len));
    for (unsigned phase = 0; phase < 2; ++phase) {
      const std::size_t off = phase == 0 ? len : len / 2;
      // Block j covers [j*L - off + 1, (j+1)*L - off]; j = 0 may start before node 1.
      for (std::size_t j = 0; (j + 1) * len - off + 1 <= n; ++j) {
        const long long left0 = static_cast<long long>(j * len) - static_cast<long long>(off) + 1;
        const long long right0 = left0 + static_cast<long long>(len);
        if (left0 + static_cast<long long>(len) - 1 < 1) continue;
        std::mt19937_64 rng(mix_seed(mix_seed(rng_seed, (std::uint64_t{p} << 1) | phase), j));
        for (auto [l, rr] : random_regular_bipartite(static_cast<unsigned>(len), d, rng)) {
          const long long a = left0 + l, b = right0 + rr;
          if (a >= 1 && b <= static_cast<long long>(n)) g.dag.add_edge(static_cast<Node>(a), static_cast<Node>(b));
        }
      }
    }
  }
  g.dag.finalize();
  return g;
}

bool interval_in_range(std::size_t n, std::size_t u, unsigned p, Side side) {
  const std::size_t len = std::size_t{1} << p;
  if (u < 1 || u > n) return false;
  if (side == Side::Descendant) return u + 2 * len - 1 <= n;
  return u >= 2 * len;
}

IntervalExpander interval_expander(const Dag& g, std::size_t u, unsigned p, Side side) {
  const std::size_t n = g.node_count();
  if (!interval_in_range(n, u, p, side))
    throw ParameterError("interval_expander: interval out of range (u=" + std::to_string(u) +
                         ", p=" + std::to_string(p) + ")");
  const std::size_t len = std::size_t{1} << p;
  IntervalExpander h;
  h.side = side;
  std::size_t tail_lo, tail_hi, head_lo, head_hi;
  if (side == Side::Descendant) {
    h.left_lo = u;
    h.left_hi = u + len - 1;
    h.right_lo = u + len;
    h.right_hi = u + 2 * len - 1;
    tail_lo = h.left_lo, tail_hi = h.left_hi, head_lo = h.right_lo, head_hi = h.right_hi;
  } else {
    h.left_lo = u - len + 1;
    h.left_hi = u;
    h.right_lo = u - 2 * len + 1;
    h.right_hi = u - len;
    tail_lo = h.right_lo, tail_hi = h.right_hi, head_lo = h.left_lo, head_hi = h.left_hi;
  }
  for (std::size_t v = head_lo; v <= head_hi; ++v) {
    const auto& ps = g.parents(static_cast<Node>(v));
    auto lo = std::lower_bound(ps.begin(), ps.end(), static_cast<Node>(tail_lo));
    auto hi = std::upper_bound(ps.begin(), ps.end(), static_cast<Node>(tail_hi));
    h.max_indegree = std::max(h.max_indegree, static_cast<unsigned>(hi - lo));
    for (auto it = lo; it != hi; ++it) h.edges.emplace_back(*it, static_cast<Node>(v));
  }
  std::sort(h.edges.begin(), h.edges.end());
  return h;
}

}  // namespace crlcc
