#include <doctest.h>

#include <crlcc/crlcc.hpp>

#include <algorithm>
#include <random>
#include <set>

using namespace crlcc;

namespace {

LocalExpanderDag path_dag(std::size_t n) {
  LocalExpanderDag g;
  g.node_count = n;
  g.dag = Dag(n);
  for (Node v = 1; v < n; ++v) g.dag.add_edge(v, v + 1);
  g.dag.finalize();
  return g;
}

}  // namespace

TEST_CASE("reduce_degree on a two-node path") {
  const auto mg = reduce_degree(path_dag(2), 2);
  CHECK(mg.m == 2);
  const auto edges = mg.reduced.edges();
  // 1_1 -> 1_2, 2_1 -> 2_2 and the cross edge 1_2 -> 2_1.
  CHECK(edges == std::vector<Edge>{{1, 2}, {2, 3}, {3, 4}});
  REQUIRE(mg.meta_edge_map.size() == 1);
  CHECK(mg.meta_edge_map[0] == Edge{mg.node(1, 2), mg.node(2, 1)});
}

TEST_CASE("reduce_degree invariants on a local expander") {
  const auto g0 = build_local_expander(64, 0.05, 3);
  const auto mg = reduce_degree(g0);
  CHECK(mg.m == std::max(g0.dag.max_indegree(), g0.dag.max_outdegree()) + 1);
  CHECK(mg.meta_edge_map.size() == g0.dag.edge_count());
  for (std::size_t u = 1; u <= mg.t; ++u) {
    for (std::size_t j = 1; j < mg.m; ++j) {
      REQUIRE(mg.reduced.parents(mg.node(u, j)).size() <= 2);
      REQUIRE(mg.reduced.has_edge(mg.node(u, j), mg.node(u, j + 1)));
    }
  }
  // Every meta edge lands on a distinct G edge from u_m into a slot j < m.
  std::set<Edge> seen;
  for (std::size_t e = 0; e < mg.meta_edges.size(); ++e) {
    const auto [u, v] = mg.meta_edges[e];
    const auto [a, b] = mg.meta_edge_map[e];
    REQUIRE(a == mg.node(u, mg.m));
    REQUIRE(mg.meta_of(b) == v);
    REQUIRE(mg.slot_of(b) < mg.m);
    REQUIRE(mg.reduced.has_edge(a, b));
    REQUIRE(seen.insert({a, b}).second);
    REQUIRE(mg.edge_index(u, v) == e);
  }
  CHECK(mg.edge_index(1, 64) == MetaGraph::npos);
  CHECK_THROWS_AS(reduce_degree(g0, 2), ParameterError);
}

TEST_CASE("strong rate is beta / ((beta + 2) / R)") {
  for (auto [beta, rate] : {std::pair<unsigned, Rational>{1, {1, 4}}, {4, {1, 2}}, {8, {1, 2}}}) {
    StrongOptions opt;
    opt.beta = beta;
    opt.rate = rate;
    const auto p = make_strong_params(16, 128, gen(128, 1), 1, opt);
    CHECK(p.k * (beta + 2) * rate.den == p.n * rate.num * beta);
  }
}

TEST_CASE("metanode at the region boundaries") {
  const auto p = make_strong_params(16, 128, gen(128, 2), 2);
  REQUIRE(p.msg_block_bits() * p.t == 4 * p.k);
  CHECK(metanode(p, 1) == 1);
  CHECK(metanode(p, 4 * p.k) == p.t);
  CHECK(metanode(p, 4 * p.k + 1) == 1);
  CHECK(metanode(p, 8 * p.k) == p.t);
  CHECK(metanode(p, 8 * p.k + 1) == p.t);
  CHECK(metanode(p, p.n) == p.t);
  CHECK_THROWS_AS(metanode(p, 0), ParameterError);
  CHECK_THROWS_AS(metanode(p, p.n + 1), ParameterError);
}

TEST_CASE("strong defaults sit inside the analysed ranges") {
  const auto p = make_strong_params(16, 128, gen(128, 3), 3);
  CHECK_FALSE(p.out_of_theorem);
  CHECK(p.kappa >= 1600u * p.d_delta);
  CHECK(p.alpha == doctest::Approx(p.delta / (10.0 * p.d_delta)));
  StrongOptions loose;
  loose.kappa = 2;
  CHECK(make_strong_params(16, 128, gen(128, 3), 3, loose).out_of_theorem);
}

TEST_CASE("strong honest word: all green, every bit decodes") {
  const auto p = make_strong_params(16, 128, gen(128, 4), 4);
  std::mt19937_64 rng(4);
  const auto x = BitString::random(p.k, rng);
  const auto c = strong_encode(p, x);
  REQUIRE(c.size() == p.n);
  ReceivedWord w(c, p.layout);
  {
    Reader r(w);
    for (std::size_t u = 1; u <= p.t; ++u) {
      REQUIRE(is_green_meta(p, r, u) == MetaColor::Green);
      REQUIRE(is_local_expander(p, r, u, rng));
    }
  }
  for (std::size_t i = 1; i <= p.n; i += 997) {
    const auto res = strong_decode(p, w, i, rng);
    REQUIRE(res.bit.has_value());
    REQUIRE(*res.bit == c.get(i - 1));
  }
  for (std::size_t i = 1; i <= p.k; i += 311) {
    const auto res = strong_decode_message(p, w, i, rng);
    REQUIRE(res.bit.has_value());
    REQUIRE(*res.bit == x.get(i - 1));
  }
}

TEST_CASE("strong back region decodes through the repetition majority") {
  const auto p = make_strong_params(16, 128, gen(128, 5), 5);
  std::mt19937_64 rng(5);
  const auto c = strong_encode(p, BitString::random(p.k, rng));
  std::vector<std::size_t> mask;
  for (std::size_t b = 2 * p.t + 1; b <= 2 * p.t + 3; ++b) kill_block(p.layout, b, mask, rng);
  std::sort(mask.begin(), mask.end());
  ReceivedWord w(apply_mask(c, mask), p.layout);
  for (std::size_t i = strong_back_start(p); i <= p.n; i += 211) {
    const auto res = strong_decode(p, w, i, rng);
    REQUIRE(res.bit.has_value());
    REQUIRE(*res.bit == c.get(strong_back_start(p) - 1 + (i - strong_back_start(p)) % p.lab_block_bits()));
  }
}

TEST_CASE("a killed message block turns its meta-node red") {
  const auto p = make_strong_params(16, 128, gen(128, 6), 6);
  std::mt19937_64 rng(6);
  const auto c = strong_encode(p, BitString::random(p.k, rng));
  std::vector<std::size_t> mask;
  kill_block(p.layout, 7, mask, rng);
  std::sort(mask.begin(), mask.end());
  ReceivedWord w(apply_mask(c, mask), p.layout);
  Reader r(w);
  CHECK(is_green_meta(p, r, 7) == MetaColor::Red);
  CHECK(is_green_meta(p, r, 6) == MetaColor::Green);
  for (std::size_t i = 1; i < strong_back_start(p); i += 409) {
    if (p.layout.block_of_bit(i) == 7) continue;
    const auto res = strong_decode(p, w, i, rng);
    if (res.bit) REQUIRE(*res.bit == c.get(i - 1));
  }
}

TEST_CASE("a flipped challenge bit inside the radius is repaired") {
  const auto p = make_strong_params(16, 128, gen(128, 7), 7);
  std::mt19937_64 rng(7);
  const auto c = strong_encode(p, BitString::random(p.k, rng));
  for (std::size_t i : {std::size_t{5}, p.t * p.msg_block_bits() + 9, strong_back_start(p) - 1}) {
    ReceivedWord w(apply_mask(c, {i - 1}), p.layout);
    const auto res = strong_decode(p, w, i, rng);
    REQUIRE(res.bit.has_value());
    CHECK(*res.bit == c.get(i - 1));
  }
}
