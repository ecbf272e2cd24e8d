#include "crlcc/strong.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "crlcc/error.hpp"

namespace crlcc {

std::size_t MetaGraph::edge_index(Node u, Node v) const {
  auto it = index.find((std::uint64_t{u} << 32) | v);
  return it == index.end() ? npos : it->second;
}

MetaGraph reduce_degree(const LocalExpanderDag& g0, std::size_t m) {
  const std::size_t t = g0.node_count;
  const std::size_t need = std::max(g0.dag.max_indegree(), g0.dag.max_outdegree()) + 1;
  if (m == 0) m = need;
  if (m < g0.dag.max_indegree() + 1) throw ParameterError("reduce_degree: m must exceed the indegree of G0");
  if (m < 2) m = 2;

  MetaGraph mg;
  mg.meta = g0;
  mg.t = t;
  mg.m = m;
  mg.reduced = Dag(t * m);
  std::vector<unsigned> indeg(t * m + 1, 0);
  auto add = [&](Node a, Node b) {
    mg.reduced.add_edge(a, b);
    ++indeg[b];
  };
  for (std::size_t u = 1; u <= t; ++u) {
    for (std::size_t i = 1; i < m; ++i) {
      add(mg.node(u, i), mg.node(u, i + 1));
      if (i + 1 < m) add(mg.node(u, i), mg.node(u, m));
    }
  }
  mg.meta_edges = g0.dag.edges();
  mg.meta_edge_map.reserve(mg.meta_edges.size());
  for (std::size_t e = 0; e < mg.meta_edges.size(); ++e) {
    const auto [u, v] = mg.meta_edges[e];
    std::size_t j = 1;
    while (j < m && indeg[mg.node(v, j)] > 1) ++j;
    if (j == m) throw std::logic_error("reduce_degree: no free slot in meta-node " + std::to_string(v));
    add(mg.node(u, m), mg.node(v, j));
    mg.meta_edge_map.emplace_back(mg.node(u, m), mg.node(v, j));
    mg.index.emplace((std::uint64_t{u} << 32) | v, e);
  }
  mg.reduced.finalize();
  return mg;
}

std::shared_ptr<const IntervalExpander> IntervalCache::get(std::size_t u, unsigned p, Side side) const {
  const std::uint64_t key = (std::uint64_t{u} << 8) | (std::uint64_t{p} << 1) | (side == Side::Ancestor);
  {
    std::lock_guard<std::mutex> lock(mu_);
    if (auto it = map_.find(key); it != map_.end()) return it->second;
  }
  auto h = std::make_shared<const IntervalExpander>(interval_expander(*g_, u, p, side));
  std::lock_guard<std::mutex> lock(mu_);
  return map_.emplace(key, std::move(h)).first->second;
}

unsigned measure_d_delta(const LocalExpanderDag& g) {
  const std::size_t t = g.node_count;
  unsigned d = 0;
  for (std::size_t u = 1; u <= t; ++u)
    for (unsigned p = 0; (std::size_t{2} << p) <= t; ++p)
      for (Side side : {Side::Descendant, Side::Ancestor})
        if (interval_in_range(t, u, p, side)) d = std::max(d, interval_expander(g, u, p, side).max_indegree);
  return d;
}

StrongCodeParams make_strong_params(std::size_t t, unsigned ell, HashSeed seed, std::uint64_t graph_seed,
                                    StrongOptions opt) {
  if (t < 2) throw ParameterError("strong: need t >= 2");
  if (ell == 0 || ell % 8 != 0) throw ParameterError("strong: ell must be a positive multiple of 8");
  if (opt.beta == 0) throw ParameterError("strong: beta must be positive");
  if (!(opt.epsilon > 0.0)) throw ParameterError("strong: epsilon must be positive");

  StrongCodeParams p;
  p.t = t;
  p.ell = ell;
  p.beta = opt.beta;
  p.rate = opt.rate;
  p.delta = opt.delta;
  p.epsilon = opt.epsilon;
  p.graph_seed = graph_seed;

  auto g0 = build_local_expander(t, opt.delta, graph_seed);
  p.meta = std::make_shared<const MetaGraph>(reduce_degree(g0));
  p.intervals = std::make_shared<const IntervalCache>(&p.meta->meta);
  p.m = p.meta->m;
  p.k = std::size_t{p.beta} * ell * p.m * t;
  p.ecc_msg = make_ecc_params(std::size_t{p.beta} * ell * p.m, p.rate);
  p.ecc_lab = make_ecc_params(std::size_t{ell} * p.m, p.rate);
  p.n = t * (p.ecc_msg.block_bits + 2 * p.ecc_lab.block_bits);
  p.layout = BlockLayout({{t, p.ecc_msg}, {2 * t, p.ecc_lab}});

  p.d_delta = std::max(1u, measure_d_delta(p.meta->meta));
  const double dd = static_cast<double>(p.d_delta);
  p.alpha = opt.alpha.value_or(p.delta / (10.0 * dd));
  const auto kappa_min = static_cast<unsigned>(std::ceil(1600.0 * dd));
  p.kappa = opt.kappa.value_or(kappa_min);
  if (p.kappa == 0) throw ParameterError("strong: kappa must be positive");
  const double a_lo = p.delta / (20.0 * dd), a_hi = p.delta / (10.0 * dd);
  p.out_of_theorem = !(p.delta < 1.0 / 16.0) || p.kappa < kappa_min ||
                     p.alpha < a_lo * (1 - 1e-12) || p.alpha > a_hi * (1 + 1e-12);
  p.seed = std::move(seed);
  return p;
}

BitString strong_encode(const StrongCodeParams& p, const BitString& x) {
  if (x.size() != p.k)
    throw ParameterError("strong_encode: message has " + std::to_string(x.size()) + " bits, expected " +
                         std::to_string(p.k));
  const MetaGraph& mg = *p.meta;
  const std::size_t chunk = std::size_t{p.beta} * p.ell;
  const std::size_t nodes = p.t * p.m;
  std::vector<BitString> chunks(nodes);
  for (std::size_t g = 0; g < nodes; ++g) chunks[g] = x.slice(g * chunk, chunk);
  const auto labels = label_graph(mg.reduced, p.seed, chunks, chunk, p.ell);

  const std::size_t bm = p.msg_block_bits(), bl = p.lab_block_bits();
  BitString c(p.n);
  BitString last;
  for (std::size_t u = 1; u <= p.t; ++u) {
    c.assign((u - 1) * bm, ecc_encode(p.ecc_msg, x.slice((u - 1) * p.m * chunk, p.m * chunk)));
    BitString group;
    for (std::size_t j = 1; j <= p.m; ++j) group.append(labels[mg.node(u, j) - 1]);
    const BitString enc = ecc_encode(p.ecc_lab, group);
    c.assign(p.t * bm + (u - 1) * bl, enc);
    if (u == p.t) last = enc;
  }
  for (std::size_t u = 1; u <= p.t; ++u) c.assign(p.t * bm + (p.t + u - 1) * bl, last);
  return c;
}

std::size_t metanode(const StrongCodeParams& p, std::size_t i) {
  if (i < 1 || i > p.n) throw ParameterError("metanode: index out of range");
  const std::size_t bm = p.msg_block_bits(), bl = p.lab_block_bits();
  if (i <= p.t * bm) return (i + bm - 1) / bm;
  if (i <= p.t * bm + p.t * bl) return (i - p.t * bm + bl - 1) / bl;
  return p.t;
}

bool strong_node_green(const StrongCodeParams& p, Reader& r, Node g) {
  const MetaGraph& mg = *p.meta;
  auto check = [&](Reader& rd) {
    const std::size_t u = mg.meta_of(g), j = mg.slot_of(g);
    const Decoded xs = rd.decoded(u);
    if (!xs->has_value()) return false;
    const Decoded ls = rd.decoded(p.t + u);
    if (!ls->has_value()) return false;
    const std::size_t chunk = std::size_t{p.beta} * p.ell;
    const BitString x = (*xs)->slice((j - 1) * chunk, chunk);
    const BitString own = (*ls)->slice((j - 1) * p.ell, p.ell);
    std::vector<BitString> labels;
    labels.reserve(mg.reduced.parents(g).size());
    for (Node q : mg.reduced.parents(g)) {
      const std::size_t qu = mg.meta_of(q);
      const Decoded qs = qu == u ? ls : rd.decoded(p.t + qu);
      if (!qs->has_value()) return false;
      labels.push_back((*qs)->slice((mg.slot_of(q) - 1) * p.ell, p.ell));
    }
    std::vector<const Label*> ps;
    for (const auto& l : labels) ps.push_back(&l);
    return node_label(p.seed, x, ps, p.ell) == own;
  };
  return r.memo(memo_key(MemoKind::StrongNode, g), check);
}

MetaColor is_green_meta(const StrongCodeParams& p, Reader& r, std::size_t u) {
  if (u < 1 || u > p.t) throw ParameterError("is_green_meta: meta-node out of range");
  const MetaGraph& mg = *p.meta;
  if (!strong_node_green(p, r, mg.node(u, p.m))) return MetaColor::Red;
  std::size_t green = 0;
  for (std::size_t j = 1; j <= p.m; ++j)
    if (strong_node_green(p, r, mg.node(u, j))) ++green;
  return 3 * green >= 2 * p.m ? MetaColor::Green : MetaColor::Red;
}

EdgeColor is_green_edge(const StrongCodeParams& p, Reader& r, Node u, Node v) {
  const MetaGraph& mg = *p.meta;
  const std::size_t e = mg.edge_index(u, v);
  if (e == MetaGraph::npos) throw ParameterError("is_green_edge: not an edge of the meta-graph");
  const auto [tail, head] = mg.meta_edge_map[e];
  if (!strong_node_green(p, r, tail)) return EdgeColor::Red;
  return strong_node_green(p, r, head) ? EdgeColor::Green : EdgeColor::Red;
}

std::size_t local_expander_samples(const StrongCodeParams& p) {
  const double lg = std::log2(static_cast<double>(p.t));
  return static_cast<std::size_t>(std::max(1.0, std::ceil(std::pow(lg, 1.0 + p.epsilon))));
}

bool is_local_expander(const StrongCodeParams& p, Reader& r, std::size_t u, std::mt19937_64& rng) {
  if (u < 1 || u > p.t) throw ParameterError("is_local_expander: meta-node out of range");
  const std::size_t s = local_expander_samples(p);
  for (unsigned e = 1; (std::size_t{2} << e) <= p.t; ++e) {
    for (Side side : {Side::Descendant, Side::Ancestor}) {
      if (!interval_in_range(p.t, u, e, side)) continue;
      const auto h = p.intervals->get(u, e, side);
      if (h->edges.empty()) continue;
      std::size_t red = 0;
      for (std::size_t j = 0; j < s; ++j) {
        const auto& [a, b] = h->sample(rng);
        if (is_green_edge(p, r, a, b) == EdgeColor::Red) ++red;
      }
      const double estimate = static_cast<double>(red) / static_cast<double>(s) *
                              static_cast<double>(h->edges.size());
      if (estimate > 2.5 * p.delta * static_cast<double>(std::size_t{1} << e)) return false;
    }
  }
  return true;
}

std::size_t dec_eq_t_samples(const StrongCodeParams& p) {
  const double lg = std::log2(static_cast<double>(p.n));
  return static_cast<std::size_t>(std::ceil(std::pow(lg, 1.0 + p.epsilon)));
}

std::optional<BitString> dec_eq_t_block(const StrongCodeParams& p, Reader& r, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::size_t> pick(2 * p.t, 3 * p.t);
  std::vector<std::pair<BitString, std::size_t>> tally;
  const std::size_t s = dec_eq_t_samples(p);
  for (std::size_t j = 0; j < s; ++j) {
    const Decoded re = r.reencoded(pick(rng));
    if (!re->has_value()) continue;
    auto it = std::find_if(tally.begin(), tally.end(), [&](const auto& e) { return e.first == **re; });
    if (it == tally.end()) {
      tally.emplace_back(**re, 1);
    } else {
      ++it->second;
    }
  }
  if (tally.empty()) return std::nullopt;
  return std::max_element(tally.begin(), tally.end(),
                          [](const auto& a, const auto& b) { return a.second < b.second; })
      ->first;
}

std::optional<bool> dec_eq_t(const StrongCodeParams& p, Reader& r, std::size_t i, std::mt19937_64& rng) {
  if (i < strong_back_start(p) || i > p.n) throw ParameterError("dec_eq_t: index outside the back region");
  const auto blk = dec_eq_t_block(p, r, rng);
  if (!blk) return std::nullopt;
  return blk->get((i - strong_back_start(p)) % p.lab_block_bits());
}

bool strong_gate(const StrongCodeParams& p, Reader& r, std::size_t u, std::mt19937_64& rng) {
  if (!is_local_expander(p, r, u, rng)) return false;
  if (4 * u < 3 * p.t) return true;
  Reader last(r.word());
  const auto blk = dec_eq_t_block(p, last, rng);
  bool ok = false;
  if (blk) {
    last.override_block(2 * p.t, *blk);
    ok = is_local_expander(p, last, p.t, rng);
  }
  r.absorb(last);
  return ok;
}

std::optional<bool> dec_lt_t(const StrongCodeParams& p, Reader& r, std::size_t i, std::mt19937_64& rng) {
  if (i < 1 || i >= strong_back_start(p)) throw ParameterError("dec_lt_t: index outside the front region");
  if (!strong_gate(p, r, metanode(p, i), rng)) return std::nullopt;
  return r.repaired_bit(i);
}

DecodeResult strong_decode(const StrongCodeParams& p, const ReceivedWord& w, std::size_t i,
                           std::mt19937_64& rng) {
  if (i < 1 || i > p.n) throw ParameterError("strong_decode: index out of range");
  Reader r(w);
  DecodeResult out;
  out.bit = i >= strong_back_start(p) ? dec_eq_t(p, r, i, rng) : dec_lt_t(p, r, i, rng);
  out.bit_queries = r.bit_queries();
  return out;
}

DecodeResult strong_decode_message(const StrongCodeParams& p, const ReceivedWord& w, std::size_t i,
                                   std::mt19937_64& rng) {
  if (i < 1 || i > p.k) throw ParameterError("strong_decode_message: index out of range");
  Reader r(w);
  DecodeResult out;
  const std::size_t group = std::size_t{p.beta} * p.ell * p.m;
  const std::size_t u = (i + group - 1) / group;
  if (strong_gate(p, r, u, rng)) {
    const Decoded x = r.decoded(u);
    if (x->has_value()) out.bit = (*x)->get((i - 1) % group);
  }
  out.bit_queries = r.bit_queries();
  return out;
}

}  // namespace crlcc
