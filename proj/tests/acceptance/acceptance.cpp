// Acceptance run: one PASS/FAIL line per criterion, plus INFO lines with the
// measured numbers. Pass criterion ids on the command line to run a subset.

#include <crlcc/crlcc.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

using namespace crlcc;

namespace {

constexpr unsigned kEll = 128;

struct Verdict {
  bool pass = false;
  std::string detail;
};

void info(int id, const char* fmt, ...) __attribute__((format(printf, 2, 3)));
void info(int id, const char* fmt, ...) {
  char buf[1024];
  va_list ap;
  va_start(ap, fmt);
  std::vsnprintf(buf, sizeof buf, fmt, ap);
  va_end(ap);
  std::printf("  INFO C%d %s\n", id, buf);
  std::fflush(stdout);
}

std::string fmt(const char* f, ...) __attribute__((format(printf, 1, 2)));
std::string fmt(const char* f, ...) {
  char buf[1024];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

WeakCodeParams weak_params(std::size_t kp, std::uint64_t seed) {
  return make_weak_params(kp * kEll, kEll, gen(kEll, seed), seed);
}

StrongCodeParams strong_params(std::size_t t, std::uint64_t seed, StrongOptions opt = {}) {
  return make_strong_params(t, kEll, gen(kEll, seed), seed, opt);
}

std::vector<std::size_t> sorted(std::vector<std::size_t> m) {
  std::sort(m.begin(), m.end());
  m.erase(std::unique(m.begin(), m.end()), m.end());
  return m;
}

// Copy of g with every edge touching a node in `drop` removed.
Dag without(const Dag& g, const std::vector<char>& drop) {
  Dag h(g.node_count());
  for (auto [u, v] : g.edges())
    if (!drop[u] && !drop[v]) h.add_edge(u, v);
  h.finalize();
  return h;
}

std::vector<char> random_set(std::size_t n, double density, std::mt19937_64& rng) {
  std::vector<char> s(n + 1, 0);
  std::bernoulli_distribution coin(density);
  for (std::size_t i = 1; i <= n; ++i) s[i] = coin(rng);
  return s;
}

// ---- 1 ----------------------------------------------------------------------

Verdict c1_rate() {
  bool ok = true;
  std::string d;
  const auto w = weak_params(16, 1);
  ok = ok && w.n == 12 * w.k;
  d += fmt("weak k/n=%zu/%zu", w.k, w.n);
  for (auto [beta, rate] : {std::pair<unsigned, Rational>{1, {1, 4}}, {4, {1, 2}}, {8, {1, 2}}}) {
    StrongOptions opt;
    opt.beta = beta;
    opt.rate = rate;
    const auto p = strong_params(16, 1, opt);
    const bool exact = p.k * (beta + 2) * static_cast<std::size_t>(rate.den) ==
                       p.n * static_cast<std::size_t>(rate.num) * beta;
    ok = ok && exact;
    d += fmt("; strong(beta=%u,R=%lld/%lld) k/n=%zu/%zu%s", beta, static_cast<long long>(rate.num),
             static_cast<long long>(rate.den), p.k, p.n, exact ? "" : " MISMATCH");
  }
  return {ok, d};
}

// ---- 2 ----------------------------------------------------------------------

// Decodes one representative bit of every block `reps` times; counts misses.
std::size_t completeness(const LocalCode& code, std::size_t reps, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const auto c = code.encode(BitString::random(code.k(), rng));
  ReceivedWord w(c, code.layout());
  code.warm(w);
  const auto& lay = code.layout();
  std::size_t bad = 0;
  for (std::size_t b = 1; b <= lay.block_count(); ++b) {
    const std::size_t i = lay.offset(b) + 1 + rng() % lay.bits(b);
    for (std::size_t r = 0; r < reps; ++r) {
      const auto res = code.decode(w, i, rng);
      if (!res.bit || *res.bit != c.get(i - 1)) ++bad;
    }
  }
  return bad;
}

Verdict c2_completeness() {
  const WeakCode weak(weak_params(256, 2));
  const std::size_t wbad = completeness(weak, 30, 21);
  const StrongCode strong(strong_params(128, 2));
  const std::size_t sbad = completeness(strong, 30, 22);
  info(2, "strong t=128 uses m=%zu: G0 max indegree is %zu, so m=8 cannot carry the degree reduction",
       strong.params().m, strong.params().meta->meta.dag.max_indegree());
  return {wbad == 0 && sbad == 0,
          fmt("weak k'=256: %zu/%zu misses over %zu blocks x 30; strong t=128 m=%zu: %zu/%zu misses over %zu "
              "blocks x 30",
              wbad, weak.layout().block_count() * 30, weak.layout().block_count(), strong.params().m, sbad,
              strong.layout().block_count() * 30, strong.layout().block_count())};
}

// ---- 3 ----------------------------------------------------------------------

const std::vector<std::string> kAttacks{"random_flip", "block_killer", "tail_attack", "red_flood", "label_swap"};

Verdict c3_soundness() {
  const WeakCode code(weak_params(256, 3));
  bool ok = true;
  std::string d = fmt("budget=%zu bits;", code.theorem_budget());
  for (const auto& name : kAttacks) {
    const auto a = make_attack(name);
    RunOptions opt;
    opt.master_seed = 300 + d.size();
    opt.keep_records = false;
    opt.budget_bits = code.theorem_budget();
    const auto st = run_round(code, *a, 0.0, 1000, opt);
    ok = ok && st.wrong == 0 && st.fool_upper95 <= 0.005;
    d += fmt(" %s wrong=%zu/1000 bot=%zu ub95=%.5f;", name.c_str(), st.wrong, st.bottom, st.fool_upper95);
  }
  return {ok, d};
}

// ---- 4 ----------------------------------------------------------------------

Verdict c4_locality() {
  const std::vector<std::size_t> kps{11, 43, 171, 683};
  std::vector<double> qn, ratio;
  std::string d;
  for (std::size_t kp : kps) {
    const auto p = weak_params(kp, 4);
    std::mt19937_64 rng(40 + kp);
    ReceivedWord w(weak_encode(p, BitString::random(p.k, rng)), p.layout);
    WeakCode(p).warm(w);
    const std::size_t trials = 200;
    double q = 0.0;
    for (std::size_t j = 0; j < trials; ++j) {
      const std::size_t i = 1 + rng() % p.n;
      q += static_cast<double>(weak_decode(p, w, i, rng).bit_queries);
    }
    q /= static_cast<double>(trials);
    const double n = static_cast<double>(p.n);
    const double scale = kEll * std::pow(std::log2(n / kEll), 3.5);
    qn.push_back(q / n);
    ratio.push_back(q / scale);
    d += fmt(" n=%zu(log2 %.2f) q=%.0f q/n=%.4f q/(ell log^3.5)=%.4f;", p.n, std::log2(n), q, q / n, q / scale);
  }
  bool dec = true;
  for (std::size_t j = 1; j < qn.size(); ++j) dec = dec && qn[j] < qn[j - 1];
  const double c_fit = ratio.front();
  bool bounded = true;
  for (double r : ratio) bounded = bounded && r <= c_fit;
  info(4, "C fitted at the smallest n: %.4f; q/n decreasing: %s; larger n within C: %s", c_fit,
       dec ? "yes" : "no", bounded ? "yes" : "no");
  return {dec && bounded, d};
}

// ---- 5 ----------------------------------------------------------------------

Verdict is_good_vs_oracle(double eps) {
  WeakOptions opt;
  opt.epsilon = eps;
  const auto p = make_weak_params(256 * kEll, kEll, gen(kEll, 5), 5, opt);
  const std::size_t kp = p.k_prime;
  std::mt19937_64 rng(55);
  const auto c = weak_encode(p, BitString::random(p.k, rng));
  ReceivedWord honest(c, p.layout);
  WeakCode(p).warm(honest);

  std::size_t good_n = 0, good_acc = 0, bad_n = 0, bad_rej = 0, band = 0;
  for (int plant = 0; plant < 200; ++plant) {
    // Sparse background plus a few dense bursts; killing message block v
    // turns exactly node v red.
    std::vector<char> planted(kp + 1, 0);
    const double bg = std::uniform_real_distribution<double>(0.0, 0.06)(rng);
    for (std::size_t v = 1; v <= kp; ++v) planted[v] = std::bernoulli_distribution(bg)(rng);
    const int bursts = static_cast<int>(rng() % 4);
    for (int b = 0; b < bursts; ++b) {
      const std::size_t len = 2 + rng() % 40, lo = 1 + rng() % kp;
      const double dens = std::uniform_real_distribution<double>(0.3, 1.0)(rng);
      for (std::size_t v = lo; v < lo + len && v <= kp; ++v)
        if (std::bernoulli_distribution(dens)(rng)) planted[v] = 1;
    }
    std::vector<std::size_t> mask;
    for (std::size_t v = 1; v <= kp; ++v)
      if (planted[v]) kill_block(p.layout, v, mask, rng);
    const auto bits = apply_mask(c, sorted(mask));

    const auto green = oracle_green_set(p, bits);
    std::vector<char> red(kp + 1, 0);
    for (std::size_t v = 1; v <= kp; ++v) red[v] = !green[v];
    ReceivedWord w(bits, p.layout);
    w.inherit_caches(honest);
    Reader r(w);
    for (std::size_t v = 1; v <= kp; ++v) {
      const bool quarter = oracle_alpha_good(red, v, p.alpha / 4);
      const bool full = oracle_alpha_good(red, v, p.alpha);
      if (quarter) {
        ++good_n;
        good_acc += is_good(p, r, v, rng);
      } else if (!full) {
        ++bad_n;
        bad_rej += !is_good(p, r, v, rng);
      } else {
        ++band;
      }
    }
  }
  const double acc = good_n ? static_cast<double>(good_acc) / static_cast<double>(good_n) : 1.0;
  const double rej = bad_n ? static_cast<double>(bad_rej) / static_cast<double>(bad_n) : 1.0;
  return {acc >= 0.99 && rej >= 0.99,
          fmt("accept on alpha/4-good: %zu/%zu = %.4f; reject on not-alpha-good: %zu/%zu = %.4f; "
              "%zu nodes in the unasserted band; %zu samples per interval",
              good_acc, good_n, acc, bad_rej, bad_n, rej, band, is_good_samples(p))};
}

Verdict c5_is_good() {
  info(5, "eps=1: %s", is_good_vs_oracle(1.0).detail.c_str());
  return is_good_vs_oracle(0.5);
}

// ---- 6 ----------------------------------------------------------------------

// Largest |T| over 100 masks from random_flip and block_killer at `budget`.
std::size_t max_tampered(const StrongCode& code, std::size_t budget, std::uint64_t seed, std::size_t& max_w) {
  const auto& p = code.params();
  std::mt19937_64 rng(seed);
  const auto x = BitString::random(p.k, rng);
  const auto c = code.encode(x);
  std::size_t worst = 0;
  max_w = 0;
  for (int j = 0; j < 100; ++j) {
    const auto a = make_attack(j % 2 ? "block_killer" : "random_flip");
    const auto out = a->run(AttackContext{code, x, c, budget}, rng);
    max_w = std::max(max_w, out.mask.size());
    worst = std::max(worst, oracle_tampered_set(p, c, apply_mask(c, out.mask)).size());
  }
  return worst;
}

Verdict c6_tampered() {
  const StrongCode code(strong_params(128, 6));
  const auto& p = code.params();
  std::size_t w = 0;
  const std::size_t worst = max_tampered(code, code.theorem_budget(), 61, w);
  const double bound = static_cast<double>(p.t) / (4.0 * p.kappa);

  StrongOptions loose;
  loose.kappa = 2;
  const StrongCode relaxed(strong_params(128, 6, loose));
  std::size_t w2 = 0;
  const std::size_t worst2 = max_tampered(relaxed, relaxed.theorem_budget(), 62, w2);
  const double bound2 = static_cast<double>(p.t) / 8.0;
  info(6, "out-of-theorem kappa=2: budget=%zu, max mask weight %zu, max |T|=%zu, t/(4 kappa)=%.1f -> %s",
       relaxed.theorem_budget(), w2, worst2, bound2, static_cast<double>(worst2) <= bound2 ? "holds" : "violated");
  return {static_cast<double>(worst) <= bound,
          fmt("kappa=%u, Delta_J=%.5f, budget Delta_J*k/kappa=%zu bits (vacuous when 0); max mask weight %zu; "
              "max |T|=%zu <= t/(4 kappa)=%.5f",
              p.kappa, p.ecc_lab.decode_radius, code.theorem_budget(), w, worst, bound)};
}

// ---- 7 ----------------------------------------------------------------------

// Fraction of meta-nodes u < 3t/4 for which at least 2/3 of a few bits of
// message block u decode to the codeword bit.
double availability(const StrongCode& code, const std::string& attack, std::size_t budget, std::uint64_t seed) {
  const auto& p = code.params();
  std::mt19937_64 rng(seed);
  const auto x = BitString::random(p.k, rng);
  const auto c = code.encode(x);
  ReceivedWord honest(c, p.layout);
  code.warm(honest);
  const auto a = make_attack(attack);
  const auto out = a->run(AttackContext{code, x, c, budget}, rng);
  ReceivedWord w(apply_mask(c, out.mask), p.layout);
  w.inherit_caches(honest);
  std::size_t good = 0, total = 0;
  for (std::size_t u = 1; 4 * u < 3 * p.t; ++u) {
    ++total;
    std::size_t ok = 0;
    for (int j = 0; j < 3; ++j) {
      const std::size_t i = p.layout.offset(u) + 1 + rng() % p.layout.bits(u);
      const auto res = strong_decode(p, w, i, rng);
      ok += res.bit && *res.bit == c.get(i - 1);
    }
    good += 3 * ok >= 2 * 3;
  }
  return static_cast<double>(good) / static_cast<double>(total);
}

Verdict c7_availability() {
  const StrongCode code(strong_params(128, 7));
  double worst = 1.0;
  std::string d = fmt("budget=%zu bits;", code.theorem_budget());
  for (const auto& name : kAttacks) {
    const double f = availability(code, name, code.theorem_budget(), 70 + name.size());
    worst = std::min(worst, f);
    d += fmt(" %s %.4f;", name.c_str(), f);
  }
  StrongOptions loose;
  loose.kappa = 8;
  const StrongCode relaxed(strong_params(128, 7, loose));
  std::string r;
  for (const auto& name : kAttacks)
    r += fmt(" %s %.4f;", name.c_str(), availability(relaxed, name, relaxed.theorem_budget(), 170 + name.size()));
  info(7, "out-of-theorem kappa=8, budget=%zu bits:%s", relaxed.theorem_budget(), r.c_str());
  return {worst >= 11.0 / 16.0, d + fmt(" min %.4f vs 11/16", worst)};
}

// ---- 8 ----------------------------------------------------------------------

struct CutTally {
  std::size_t planted = 0, rejected = 0;
};

CutTally planted_cuts(const StrongCodeParams& p, const BitString& c, const ReceivedWord& honest, std::size_t count,
                      std::uint64_t seed, bool oracle_check) {
  const MetaGraph& mg = *p.meta;
  std::mt19937_64 rng(seed);
  CutTally out;
  while (out.planted < count) {
    const unsigned e = 1 + static_cast<unsigned>(rng() % floor_log2(p.t / 2));
    const std::size_t u = 1 + rng() % p.t;
    const Side side = rng() % 2 ? Side::Descendant : Side::Ancestor;
    if (!interval_in_range(p.t, u, e, side)) continue;
    const auto h = p.intervals->get(u, e, side);
    const double need = 3.0 * p.delta * static_cast<double>(std::size_t{1} << e);

    std::vector<std::size_t> pool;
    for (std::size_t v = std::min(h->left_lo, h->right_lo); v <= std::max(h->left_hi, h->right_hi); ++v)
      if (v != u) pool.push_back(v);
    std::shuffle(pool.begin(), pool.end(), rng);
    std::vector<char> killed(p.t + 1, 0);
    std::size_t red = 0;
    for (std::size_t v : pool) {
      if (static_cast<double>(red) >= need) break;
      killed[v] = 1;
      red = 0;
      for (auto [a, b] : h->edges) red += killed[a] || killed[b];
    }
    if (static_cast<double>(red) < need) continue;

    // A dead message block reddens every chain node of its meta-node, and
    // with it exactly the meta edges touching it.
    std::vector<std::size_t> mask;
    for (std::size_t v = 1; v <= p.t; ++v)
      if (killed[v]) kill_block(p.layout, v, mask, rng);
    const auto bits = apply_mask(c, sorted(mask));
    if (oracle_check && out.planted < 3) {
      const auto col = oracle_green_set(p, bits);
      std::size_t oracle_red = 0;
      for (auto [a, b] : h->edges) oracle_red += !col.edge_green[mg.edge_index(a, b)];
      if (oracle_red != red) std::printf("  INFO C8 plant red-edge count %zu disagrees with oracle %zu\n", red, oracle_red);
    }
    ReceivedWord w(bits, p.layout);
    w.inherit_caches(honest);
    Reader r(w);
    ++out.planted;
    out.rejected += !is_local_expander(p, r, u, rng);
  }
  return out;
}

Verdict c8_expansion_tester() {
  std::string d;
  bool ok = true;
  for (double eps : {0.5, 1.0}) {
    StrongOptions opt;
    opt.epsilon = eps;
    const auto p = strong_params(256, 8, opt);
    std::mt19937_64 rng(80);
    const auto c = strong_encode(p, BitString::random(p.k, rng));
    ReceivedWord honest(c, p.layout);
    StrongCode(p).warm(honest);

    const auto cuts = planted_cuts(p, c, honest, 100, 81, eps == 0.5);

    // alpha is delta/(10 d_delta); below 1/t no node of a non-empty T is
    // alpha-good, so the good plants are honest words.
    std::size_t acc = 0;
    Reader r(honest);
    for (int j = 0; j < 100; ++j) acc += is_local_expander(p, r, 1 + rng() % p.t, rng);

    const std::string line =
        fmt("eps=%.1f s=%zu: planted cuts rejected %zu/%zu; alpha-good (alpha=%.2e, T empty) accepted %zu/100",
            eps, local_expander_samples(p), cuts.rejected, cuts.planted, p.alpha, acc);
    if (eps == 0.5) {
      ok = cuts.rejected >= 99 && acc >= 99;
      d = line + fmt("; t=%zu m=%zu d_delta=%u", p.t, p.m, p.d_delta);
    } else {
      info(8, "%s", line.c_str());
    }
  }
  return {ok, d};
}

// ---- 9 ----------------------------------------------------------------------

Verdict c9_graph_lemmas() {
  std::mt19937_64 rng(90);
  std::string d;

  // Counting: at least n - |S|(2 - alpha)/alpha alpha-good nodes.
  std::size_t count_viol = 0, count_cases = 0;
  for (std::size_t n : {32u, 64u, 128u}) {
    for (double alpha : {0.1, 0.25, 0.5, 0.9}) {
      for (int j = 0; j < 50; ++j) {
        const auto s = random_set(n, std::uniform_real_distribution<double>(0.0, 0.3)(rng), rng);
        const auto good = alpha_good_set(s, alpha);
        const double size_s = static_cast<double>(std::count(s.begin() + 1, s.end(), 1));
        const double have = static_cast<double>(std::count(good.begin() + 1, good.end(), 1));
        ++count_cases;
        count_viol += have + 1e-9 < static_cast<double>(n) - size_s * (2 - alpha) / alpha;
      }
    }
  }
  d += fmt("counting %zu/%zu;", count_cases - count_viol, count_cases);

  // Connectivity at n=48, where every in-range radius is checkable.
  const std::size_t n = 48;
  const unsigned max_r = 24;
  std::size_t conn_pairs = 0, conn_viol = 0;
  for (int j = 0; j < 50; ++j) {
    const double delta = 0.2, alpha = 0.25;
    const auto g = build_local_expander(n, delta, 900 + j);
    const auto s = random_set(n, std::uniform_real_distribution<double>(0.0, 0.15)(rng), rng);
    std::vector<char> eligible(n + 1, 0);
    for (Node v = 1; v <= n; ++v)
      eligible[v] = oracle_alpha_good(s, v, alpha) && has_local_expansion(g.dag, v, delta, max_r);
    for (Node u = 1; u <= n; ++u) {
      if (!eligible[u]) continue;
      const auto reach = reachable_from(g.dag, u, s);
      for (Node v = u + 1; v <= n; ++v) {
        if (!eligible[v]) continue;
        ++conn_pairs;
        conn_viol += !reach[v];
      }
    }
  }
  d += fmt(" connectivity %zu/%zu pairs;", conn_pairs - conn_viol, conn_pairs);

  // Reachability: 4 delta-expansion around u in the graph with S removed,
  // delta = 1/20.
  std::size_t reach_cases = 0, reach_viol = 0;
  for (int j = 0; j < 50; ++j) {
    const double four_delta = 0.2;
    const auto g = build_local_expander(n, four_delta, 950 + j);
    const auto s = random_set(n, std::uniform_real_distribution<double>(0.0, 0.1)(rng), rng);
    const Dag gg = without(g.dag, s);
    for (Node u = 1; u <= n; ++u) {
      if (s[u] || !has_local_expansion(gg, u, four_delta, max_r)) continue;
      const std::vector<char> none(n + 1, 0);
      const auto fwd = reachable_from(gg, u, none);
      for (unsigned i = 1; (std::size_t{1} << i) <= n; ++i) {
        const std::size_t len = std::size_t{1} << i;
        if (u + len - 1 <= n) {
          ++reach_cases;
          std::size_t got = 0;
          for (std::size_t v = u; v < u + len; ++v) got += fwd[v];
          reach_viol += 4 * got < 3 * len;
        }
        if (u >= len) {
          ++reach_cases;
          std::size_t got = 0;
          for (std::size_t v = u - len + 1; v <= u; ++v) got += reachable_from(gg, static_cast<Node>(v), none)[u];
          reach_viol += 4 * got < 3 * len;
        }
      }
    }
  }
  d += fmt(" reachable %zu/%zu;", reach_cases - reach_viol, reach_cases);

  // alpha-good implies 2 delta-expansion with T removed, alpha < delta/2.
  std::size_t ae_cases = 0, ae_viol = 0;
  for (int j = 0; j < 50; ++j) {
    const std::size_t t = 128;
    const unsigned r_max = 12;
    const double delta = 0.25, alpha = 0.1;
    const auto g = build_local_expander(t, delta, 990 + j);
    const auto tam = random_set(t, std::uniform_real_distribution<double>(0.0, 0.05)(rng), rng);
    const Dag gg = without(g.dag, tam);
    for (Node u = 1; u <= t; ++u) {
      if (!oracle_alpha_good(tam, u, alpha) || !has_local_expansion(g.dag, u, delta, r_max)) continue;
      ++ae_cases;
      ae_viol += !has_local_expansion(gg, u, 2 * delta, r_max);
    }
  }
  d += fmt(" alpha-expansion %zu/%zu (r<=12)", ae_cases - ae_viol, ae_cases);
  return {count_viol == 0 && conn_viol == 0 && reach_viol == 0 && ae_viol == 0 && conn_pairs && reach_cases &&
              ae_cases,
          d};
}

// ---- 10 ---------------------------------------------------------------------

Verdict c10_barrier() {
  const WeakCode weak(weak_params(256, 10));
  const double nw = static_cast<double>(weak.n());
  const auto budget = static_cast<std::size_t>(0.1 * nw / std::log2(nw));
  const auto flood = make_attack("red_flood");
  RunOptions opt;
  opt.master_seed = 1000;
  opt.out_of_theorem = true;
  opt.budget_bits = budget;
  opt.keep_records = false;
  const auto ws = run_round(weak, *flood, 0.0, 20, opt);

  const StrongCode strong(strong_params(128, 10));
  const auto& p = strong.params();
  const auto ss = run_round(strong, *flood, 0.0, 20, opt);
  const double kappa_eff = p.ecc_lab.decode_radius * static_cast<double>(p.k) / static_cast<double>(budget);
  const double bound = 2.0 * static_cast<double>(p.t) / (4.0 * kappa_eff) / static_cast<double>(p.t);
  return {ws.mean_red_fraction > 0.9 && ss.mean_red_fraction <= bound,
          fmt("B=0.1*n/log2 n=%zu bits; weak red fraction %.4f (> 0.9); strong red meta fraction %.4f "
              "(<= 2/(4 kappa_eff)=%.4f, kappa_eff=Delta_J*k/B=%.2f)",
              budget, ws.mean_red_fraction, ss.mean_red_fraction, bound, kappa_eff)};
}

// ---- 11 ---------------------------------------------------------------------

Verdict c11_inner_ecc() {
  std::string d;
  std::size_t mismatches = 0;
  std::mt19937_64 rng(110);
  for (Rational rate : {Rational(1, 4), Rational(1, 6), Rational(1, 8)}) {
    const auto p = make_ecc_params(8, rate);
    std::vector<BitString> msgs, words;
    for (unsigned m = 0; m < 256; ++m) {
      BitString msg(8);
      msg.set_bits(0, 8, m);
      msgs.push_back(msg);
      words.push_back(ecc_encode(p, msg));
    }
    std::size_t local = 0;
    for (int j = 0; j < 1000; ++j) {
      const unsigned m = rng() % 256;
      BitString w = words[m];
      const std::size_t weight = rng() % (p.radius_bits + 1);
      std::vector<std::size_t> pos(p.block_bits);
      std::iota(pos.begin(), pos.end(), 0);
      std::shuffle(pos.begin(), pos.end(), rng);
      for (std::size_t e = 0; e < weight; ++e) w.flip(pos[e]);
      unsigned best = 0;
      std::size_t best_d = p.block_bits + 1;
      for (unsigned c = 0; c < 256; ++c) {
        const std::size_t dist = w.hamming(words[c]);
        if (dist < best_d) {
          best_d = dist;
          best = c;
        }
      }
      const auto dec = ecc_decode(p, w);
      local += !(dec && *dec == msgs[best]);
    }
    mismatches += local;
    d += fmt(" R=%lld/%lld block=%zu radius=%zu mismatches=%zu;", static_cast<long long>(rate.num),
             static_cast<long long>(rate.den), p.block_bits, p.radius_bits, local);
  }
  return {mismatches == 0, d};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<int, std::function<Verdict()>>> all{
      {1, c1_rate},          {2, c2_completeness},    {3, c3_soundness}, {4, c4_locality},
      {5, c5_is_good},       {6, c6_tampered},        {7, c7_availability}, {8, c8_expansion_tester},
      {9, c9_graph_lemmas},  {10, c10_barrier},       {11, c11_inner_ecc}};
  std::set<int> want;
  for (int a = 1; a < argc; ++a) want.insert(std::atoi(argv[a]));

  int failed = 0;
  for (const auto& [id, fn] : all) {
    if (!want.empty() && !want.count(id)) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = fn();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("C%d %s %s (%.1fs)\n", id, v.pass ? "PASS" : "FAIL", v.detail.c_str(), secs);
    std::fflush(stdout);
    failed += !v.pass;
  }
  return failed ? 1 : 0;
}
