#include "crlcc/oracles.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "crlcc/error.hpp"
#include "crlcc/strong.hpp"
#include "crlcc/weak.hpp"

namespace crlcc {

namespace {

unsigned subset_size(double delta, unsigned r) {
  // ceil with a guard against 0.1 * 30 = 3.0000000000000004.
  const double x = delta * r;
  const double c = std::ceil(x - 1e-9);
  return static_cast<unsigned>(std::max(1.0, c));
}

/// Visits every size-s subset of [0, r) as a bitmask (Gosper's hack).
template <class F>
bool all_subsets(unsigned r, unsigned s, F&& f) {
  if (s > r) return true;
  std::uint64_t set = (std::uint64_t{1} << s) - 1;
  const std::uint64_t limit = std::uint64_t{1} << r;
  while (set < limit) {
    if (!f(static_cast<std::uint32_t>(set))) return false;
    const std::uint64_t c = set & (~set + 1);
    const std::uint64_t nr = set + c;
    set = (((nr ^ set) >> 2) / c) | nr;
  }
  return true;
}

}  // namespace

bool oracle_bipartite_expander(const std::vector<std::uint32_t>& adj, unsigned r, double delta) {
  if (r == 0) return true;
  if (r > kMaxOracleSide) throw ParameterError("oracle: side " + std::to_string(r) + " exceeds the oracle limit");
  if (adj.size() != r) throw ParameterError("oracle: adjacency size mismatch");
  const unsigned s = subset_size(delta, r);
  return all_subsets(r, s, [&](std::uint32_t m1) {
    std::uint32_t reach = 0;
    for (std::uint32_t rest = m1; rest; rest &= rest - 1) reach |= adj[std::countr_zero(rest)];
    const unsigned missed = r - static_cast<unsigned>(std::popcount(reach));
    return missed < s;
  });
}

bool oracle_delta_expander(const std::vector<Edge>& edges, Interval a, Interval b, double delta) {
  if (a.size() != b.size()) throw ParameterError("oracle_delta_expander: |A| != |B|");
  const auto r = static_cast<unsigned>(a.size());
  if (r > kMaxOracleSide) throw ParameterError("oracle_delta_expander: |A| exceeds the oracle limit");
  std::vector<std::uint32_t> adj(r, 0);
  auto in = [](Interval iv, std::size_t x) { return x >= iv.lo && x <= iv.hi; };
  for (auto [x, y] : edges) {
    if (in(a, x) && in(b, y)) adj[x - a.lo] |= std::uint32_t{1} << (y - b.lo);
    if (in(a, y) && in(b, x)) adj[y - a.lo] |= std::uint32_t{1} << (x - b.lo);
  }
  return oracle_bipartite_expander(adj, r, delta);
}

namespace {

/// Adjacency masks between A = [a_lo, a_lo+r) and B = [b_lo, b_lo+r) read
/// straight from the DAG, in either edge orientation.
std::vector<std::uint32_t> masks_between(const Dag& g, std::size_t a_lo, std::size_t b_lo, unsigned r) {
  std::vector<std::uint32_t> adj(r, 0);
  for (unsigned i = 0; i < r; ++i) {
    const Node x = static_cast<Node>(a_lo + i);
    const auto& nb = b_lo > a_lo ? g.children(x) : g.parents(x);
    for (Node y : nb)
      if (y >= b_lo && y < b_lo + r) adj[i] |= std::uint32_t{1} << (y - b_lo);
  }
  return adj;
}

}  // namespace

bool has_local_expansion(const Dag& g, Node v, double delta, unsigned max_r) {
  const std::size_t n = g.node_count();
  for (unsigned r = 1; r <= max_r; ++r) {
    if (v + 2 * std::size_t{r} - 1 <= n && !oracle_bipartite_expander(masks_between(g, v, v + r, r), r, delta))
      return false;
    if (v >= 2 * std::size_t{r} && !oracle_bipartite_expander(masks_between(g, v - r + 1, v - 2 * r + 1, r), r, delta))
      return false;
  }
  return true;
}

ExpansionReport verify_local_expansion(const Dag& g, double delta, unsigned max_r) {
  if (max_r > kMaxOracleSide) throw ParameterError("verify_local_expansion: max_r exceeds the oracle limit");
  ExpansionReport rep;
  const std::size_t n = g.node_count();
  for (Node v = 1; v <= n; ++v) {
    for (unsigned r = 1; r <= max_r; ++r) {
      if (v + 2 * std::size_t{r} - 1 <= n) {
        ++rep.pairs_checked;
        if (!oracle_bipartite_expander(masks_between(g, v, v + r, r), r, delta)) {
          rep.ok = false;
          rep.failure = std::make_tuple(v, r, true);
          return rep;
        }
      }
      if (v >= 2 * std::size_t{r}) {
        ++rep.pairs_checked;
        if (!oracle_bipartite_expander(masks_between(g, v - r + 1, v - 2 * r + 1, r), r, delta)) {
          rep.ok = false;
          rep.failure = std::make_tuple(v, r, false);
          return rep;
        }
      }
    }
  }
  return rep;
}

bool oracle_alpha_good(const std::vector<char>& in_s, std::size_t v, double alpha) {
  const std::size_t n = in_s.size() - 1;
  if (v < 1 || v > n) throw ParameterError("oracle_alpha_good: node out of range");
  std::size_t cnt = 0;
  for (std::size_t r = 1; r <= v; ++r) {
    cnt += in_s[v - r + 1] != 0;
    if (static_cast<double>(cnt) > alpha * static_cast<double>(r)) return false;
  }
  cnt = 0;
  for (std::size_t r = 1; v + r - 1 <= n; ++r) {
    cnt += in_s[v + r - 1] != 0;
    if (static_cast<double>(cnt) > alpha * static_cast<double>(r)) return false;
  }
  return true;
}

std::vector<char> alpha_good_set(const std::vector<char>& in_s, double alpha) {
  std::vector<char> out(in_s.size(), 0);
  for (std::size_t v = 1; v < in_s.size(); ++v) out[v] = oracle_alpha_good(in_s, v, alpha);
  return out;
}

std::vector<char> reachable_from(const Dag& g, Node from, const std::vector<char>& removed) {
  const std::size_t n = g.node_count();
  std::vector<char> seen(n + 1, 0);
  if (removed[from]) return seen;
  std::vector<Node> stack{from};
  seen[from] = 1;
  while (!stack.empty()) {
    const Node x = stack.back();
    stack.pop_back();
    for (Node y : g.children(x)) {
      if (!seen[y] && !removed[y]) {
        seen[y] = 1;
        stack.push_back(y);
      }
    }
  }
  return seen;
}

std::vector<char> oracle_green_set(const WeakCodeParams& p, const BitString& w) {
  const std::size_t kp = p.k_prime;
  std::vector<std::optional<BitString>> dec(3 * kp + 1);
  for (std::size_t b = 1; b <= 2 * kp; ++b) dec[b] = ecc_decode(p.ecc, w.slice((b - 1) * p.block_bits, p.block_bits));
  std::vector<char> green(kp + 1, 0);
  for (std::size_t v = 1; v <= kp; ++v) {
    if (!dec[v] || !dec[kp + v]) continue;
    std::vector<const Label*> ps;
    bool ok = true;
    for (Node u : p.graph.parents(static_cast<Node>(v))) {
      if (!dec[kp + u]) {
        ok = false;
        break;
      }
      ps.push_back(&*dec[kp + u]);
    }
    green[v] = ok && node_label(p.seed, *dec[v], ps, p.ell) == *dec[kp + v];
  }
  return green;
}

StrongColors oracle_green_set(const StrongCodeParams& p, const BitString& w) {
  const MetaGraph& mg = *p.meta;
  const std::size_t t = p.t, m = p.m;
  const std::size_t bm = p.msg_block_bits(), bl = p.lab_block_bits();
  const std::size_t chunk = std::size_t{p.beta} * p.ell;
  std::vector<std::optional<BitString>> xs(t + 1), ls(t + 1);
  for (std::size_t u = 1; u <= t; ++u) {
    xs[u] = ecc_decode(p.ecc_msg, w.slice((u - 1) * bm, bm));
    ls[u] = ecc_decode(p.ecc_lab, w.slice(t * bm + (u - 1) * bl, bl));
  }
  StrongColors c;
  c.node_green.assign(t * m + 1, 0);
  for (Node g = 1; g <= t * m; ++g) {
    const std::size_t u = mg.meta_of(g), j = mg.slot_of(g);
    if (!xs[u] || !ls[u]) continue;
    std::vector<BitString> labels;
    bool ok = true;
    for (Node q : mg.reduced.parents(g)) {
      const std::size_t qu = mg.meta_of(q);
      if (!ls[qu]) {
        ok = false;
        break;
      }
      labels.push_back(ls[qu]->slice((mg.slot_of(q) - 1) * p.ell, p.ell));
    }
    if (!ok) continue;
    std::vector<const Label*> ps;
    for (const auto& l : labels) ps.push_back(&l);
    c.node_green[g] = node_label(p.seed, xs[u]->slice((j - 1) * chunk, chunk), ps, p.ell) ==
                      ls[u]->slice((j - 1) * p.ell, p.ell);
  }
  c.meta_green.assign(t + 1, 0);
  for (std::size_t u = 1; u <= t; ++u) {
    std::size_t green = 0;
    for (std::size_t j = 1; j <= m; ++j) green += c.node_green[mg.node(u, j)] != 0;
    c.meta_green[u] = c.node_green[mg.node(u, m)] && 3 * green >= 2 * m;
  }
  c.edge_green.assign(mg.meta_edges.size(), 0);
  for (std::size_t e = 0; e < mg.meta_edges.size(); ++e) {
    const auto [a, b] = mg.meta_edge_map[e];
    c.edge_green[e] = c.node_green[a] && c.node_green[b];
  }
  return c;
}

namespace {

std::vector<std::size_t> tampered_blocks(const BlockLayout& layout, const BitString& c, const BitString& w) {
  if (c.size() != layout.total_bits() || w.size() != layout.total_bits())
    throw ParameterError("oracle_tampered_blocks: word length mismatch");
  std::vector<std::size_t> out;
  for (std::size_t b = 1; b <= layout.block_count(); ++b) {
    const BitString wb = w.slice(layout.offset(b), layout.bits(b));
    const BitString cb = c.slice(layout.offset(b), layout.bits(b));
    if (wb == cb) continue;
    const auto re = reencode(layout.ecc(b), wb);
    if (!re || !(*re == cb)) out.push_back(b);
  }
  return out;
}

}  // namespace

std::vector<std::size_t> oracle_tampered_blocks(const WeakCodeParams& p, const BitString& c, const BitString& w) {
  return tampered_blocks(p.layout, c, w);
}

std::vector<std::size_t> oracle_tampered_blocks(const StrongCodeParams& p, const BitString& c,
                                                const BitString& w) {
  return tampered_blocks(p.layout, c, w);
}

std::vector<std::size_t> oracle_tampered_set(const StrongCodeParams& p, const BitString& c, const BitString& w) {
  std::vector<std::size_t> out;
  for (std::size_t b : tampered_blocks(p.layout, c, w)) {
    if (b <= p.t) {
      out.push_back(b);
    } else if (b <= 2 * p.t) {
      out.push_back(b - p.t);
    } else {
      out.push_back(p.t);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace crlcc
