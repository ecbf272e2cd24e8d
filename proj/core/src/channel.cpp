#include "crlcc/channel.hpp"

#include <boost/math/special_functions/beta.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <set>
#include <sstream>
#include <thread>

#include "crlcc/error.hpp"
#include "crlcc/oracles.hpp"

namespace crlcc {

// ---- codes -----------------------------------------------------------------

std::size_t WeakCode::theorem_budget() const {
  return static_cast<std::size_t>(std::floor(p_.ecc.decode_radius * static_cast<double>(p_.k) / 4.0 + 1e-9));
}

std::vector<std::size_t> WeakCode::repetition_blocks() const {
  std::vector<std::size_t> out(p_.k_prime);
  std::iota(out.begin(), out.end(), 2 * p_.k_prime + 1);
  return out;
}

std::vector<std::size_t> WeakCode::flood_targets() const {
  std::vector<std::size_t> nodes(p_.k_prime);
  std::iota(nodes.begin(), nodes.end(), 1);
  std::stable_sort(nodes.begin(), nodes.end(), [&](std::size_t a, std::size_t b) {
    return p_.graph.dag.children(static_cast<Node>(a)).size() > p_.graph.dag.children(static_cast<Node>(b)).size();
  });
  for (auto& v : nodes) v += p_.k_prime;
  return nodes;
}

std::size_t WeakCode::oracle_red_count(const BitString& w) const {
  const auto g = oracle_green_set(p_, w);
  return p_.k_prime - static_cast<std::size_t>(std::count(g.begin() + 1, g.end(), 1));
}

void WeakCode::warm(const ReceivedWord& w) const {
  Reader r(w);
  for (std::size_t b = 1; b <= p_.layout.block_count(); ++b) r.reencoded(b);
  for (std::size_t v = 1; v <= p_.k_prime; ++v) is_green(p_, r, v);
}

std::size_t StrongCode::theorem_budget() const {
  return static_cast<std::size_t>(
      std::floor(p_.ecc_lab.decode_radius * static_cast<double>(p_.k) / static_cast<double>(p_.kappa) + 1e-9));
}

std::vector<std::size_t> StrongCode::repetition_blocks() const {
  std::vector<std::size_t> out(p_.t);
  std::iota(out.begin(), out.end(), 2 * p_.t + 1);
  return out;
}

std::vector<std::size_t> StrongCode::flood_targets() const {
  const auto& g0 = p_.meta->meta.dag;
  std::vector<std::size_t> nodes(p_.t);
  std::iota(nodes.begin(), nodes.end(), 1);
  std::stable_sort(nodes.begin(), nodes.end(), [&](std::size_t a, std::size_t b) {
    return g0.children(static_cast<Node>(a)).size() > g0.children(static_cast<Node>(b)).size();
  });
  for (auto& u : nodes) u += p_.t;
  return nodes;
}

std::size_t StrongCode::oracle_red_count(const BitString& w) const {
  const auto c = oracle_green_set(p_, w);
  return p_.t - static_cast<std::size_t>(std::count(c.meta_green.begin() + 1, c.meta_green.end(), 1));
}

void StrongCode::warm(const ReceivedWord& w) const {
  Reader r(w);
  for (std::size_t b = 1; b <= p_.layout.block_count(); ++b) r.reencoded(b);
  for (Node g = 1; g <= p_.t * p_.m; ++g) strong_node_green(p_, r, g);
}

// ---- attacks ---------------------------------------------------------------

void kill_block(const BlockLayout& layout, std::size_t b, std::vector<std::size_t>& mask, std::mt19937_64& rng) {
  const std::size_t off = layout.offset(b);
  for (std::size_t pos : beyond_radius_pattern(layout.ecc(b), rng)) mask.push_back(off + pos);
}

BitString apply_mask(const BitString& c, const std::vector<std::size_t>& mask) {
  BitString w = c;
  for (std::size_t pos : mask) w.flip(pos);
  return w;
}

namespace {

void normalise(std::vector<std::size_t>& mask) {
  std::sort(mask.begin(), mask.end());
  mask.erase(std::unique(mask.begin(), mask.end()), mask.end());
}

std::size_t kill_cost(const BlockLayout& layout, std::size_t b) { return layout.ecc(b).radius_bits + 1; }

/// Kills blocks from `order` while the budget lasts, at most `limit` of them.
AttackOutcome kill_in_order(const AttackContext& ctx, const std::vector<std::size_t>& order, std::size_t limit,
                            std::mt19937_64& rng) {
  AttackOutcome out;
  const BlockLayout& layout = ctx.code.layout();
  std::size_t used = 0;
  for (std::size_t b : order) {
    if (out.targeted_blocks.size() >= limit) break;
    const std::size_t cost = kill_cost(layout, b);
    if (used + cost > ctx.budget) continue;
    kill_block(layout, b, out.mask, rng);
    used += cost;
    out.targeted_blocks.push_back(b);
  }
  normalise(out.mask);
  return out;
}

class NoAttack final : public AttackStrategy {
 public:
  std::string name() const override { return "none"; }
  AttackOutcome run(const AttackContext&, std::mt19937_64&) const override { return {}; }
};

class RandomFlip final : public AttackStrategy {
 public:
  std::string name() const override { return "random_flip"; }
  AttackOutcome run(const AttackContext& ctx, std::mt19937_64& rng) const override {
    AttackOutcome out;
    const std::size_t n = ctx.code.n();
    const std::size_t want = std::min(ctx.budget, n);
    std::set<std::size_t> picked;
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    while (picked.size() < want) picked.insert(pick(rng));
    out.mask.assign(picked.begin(), picked.end());
    return out;
  }
};

class BlockKiller final : public AttackStrategy {
 public:
  explicit BlockKiller(std::size_t q) : q_(q) {}
  std::string name() const override { return q_ ? "block_killer:" + std::to_string(q_) : "block_killer"; }
  AttackOutcome run(const AttackContext& ctx, std::mt19937_64& rng) const override {
    std::vector<std::size_t> order(ctx.code.layout().block_count());
    std::iota(order.begin(), order.end(), 1);
    std::shuffle(order.begin(), order.end(), rng);
    return kill_in_order(ctx, order, q_ ? q_ : order.size(), rng);
  }

 private:
  std::size_t q_;
};

class TailAttack final : public AttackStrategy {
 public:
  explicit TailAttack(double fraction) : fraction_(fraction) {}
  std::string name() const override {
    std::ostringstream s;
    s << "tail_attack:" << fraction_;
    return s.str();
  }
  AttackOutcome run(const AttackContext& ctx, std::mt19937_64& rng) const override {
    auto order = ctx.code.repetition_blocks();
    std::shuffle(order.begin(), order.end(), rng);
    const auto limit = static_cast<std::size_t>(std::ceil(fraction_ * static_cast<double>(order.size())));
    return kill_in_order(ctx, order, limit, rng);
  }

 private:
  double fraction_;
};

class RedFlood final : public AttackStrategy {
 public:
  std::string name() const override { return "red_flood"; }
  AttackOutcome run(const AttackContext& ctx, std::mt19937_64& rng) const override {
    const auto order = ctx.code.flood_targets();
    return kill_in_order(ctx, order, order.size(), rng);
  }
};

/// Forges one message chunk and re-labels its descendants consistently,
/// rewriting whole blocks with valid codewords, while the budget lasts.
class LabelSwap final : public AttackStrategy {
 public:
  std::string name() const override { return "label_swap"; }
  AttackOutcome run(const AttackContext& ctx, std::mt19937_64& rng) const override {
    if (const auto* p = ctx.code.weak()) return run_weak(*p, ctx, rng);
    return run_strong(*ctx.code.strong(), ctx, rng);
  }

 private:
  static void charge(const BitString& cur, const BitString& next, std::size_t off, std::vector<std::size_t>& mask) {
    for (std::size_t j = 0; j < cur.size(); ++j)
      if (cur.get(j) != next.get(j)) mask.push_back(off + j);
  }

  static AttackOutcome run_weak(const WeakCodeParams& p, const AttackContext& ctx, std::mt19937_64& rng) {
    AttackOutcome out;
    const std::size_t kp = p.k_prime, bb = p.block_bits;
    std::vector<BitString> chunks(kp);
    for (std::size_t v = 0; v < kp; ++v) chunks[v] = ctx.x.slice(v * p.ell, p.ell);
    auto labels = label_graph(p.graph, p.seed, chunks, p.ell, p.ell);

    const std::size_t v0 = std::uniform_int_distribution<std::size_t>(1, kp)(rng);
    chunks[v0 - 1].flip(std::uniform_int_distribution<std::size_t>(0, p.ell - 1)(rng));
    std::vector<char> forged(kp + 1, 0);
    std::size_t used = 0;
    for (std::size_t v = v0; v <= kp; ++v) {
      const auto& ps = p.graph.parents(static_cast<Node>(v));
      const bool touched = v == v0 || std::any_of(ps.begin(), ps.end(), [&](Node u) { return forged[u] != 0; });
      if (!touched) continue;
      std::vector<const Label*> pl;
      for (Node u : ps) pl.push_back(&labels[u - 1]);
      const Label lab = node_label(p.seed, chunks[v - 1], pl, p.ell);
      std::vector<std::size_t> add;
      if (v == v0) charge(ctx.c.slice((v - 1) * bb, bb), ecc_encode(p.ecc, chunks[v - 1]), (v - 1) * bb, add);
      charge(ctx.c.slice((kp + v - 1) * bb, bb), ecc_encode(p.ecc, lab), (kp + v - 1) * bb, add);
      if (used + add.size() > ctx.budget) break;
      used += add.size();
      out.mask.insert(out.mask.end(), add.begin(), add.end());
      labels[v - 1] = lab;
      forged[v] = 1;
      if (v == v0) out.targeted_blocks.push_back(v);
      out.targeted_blocks.push_back(kp + v);
    }
    normalise(out.mask);
    return out;
  }

  static AttackOutcome run_strong(const StrongCodeParams& p, const AttackContext& ctx, std::mt19937_64& rng) {
    AttackOutcome out;
    const MetaGraph& mg = *p.meta;
    const std::size_t chunk = std::size_t{p.beta} * p.ell, nodes = p.t * p.m;
    const std::size_t bm = p.msg_block_bits(), bl = p.lab_block_bits();
    std::vector<BitString> chunks(nodes);
    for (std::size_t g = 0; g < nodes; ++g) chunks[g] = ctx.x.slice(g * chunk, chunk);
    auto labels = label_graph(mg.reduced, p.seed, chunks, chunk, p.ell);

    const std::size_t u0 = std::uniform_int_distribution<std::size_t>(1, p.t)(rng);
    const std::size_t j0 = std::uniform_int_distribution<std::size_t>(1, p.m)(rng);
    chunks[mg.node(u0, j0) - 1].flip(std::uniform_int_distribution<std::size_t>(0, chunk - 1)(rng));
    std::vector<char> forged(nodes + 1, 0);
    std::size_t used = 0;
    for (std::size_t u = u0; u <= p.t; ++u) {
      auto trial = labels;
      bool any = false;
      for (std::size_t j = 1; j <= p.m; ++j) {
        const Node g = mg.node(u, j);
        const auto& ps = mg.reduced.parents(g);
        const bool touched = (u == u0 && j == j0) ||
                             std::any_of(ps.begin(), ps.end(), [&](Node q) { return forged[q] != 0; });
        if (!touched) continue;
        std::vector<const Label*> pl;
        for (Node q : ps) pl.push_back(&trial[q - 1]);
        trial[g - 1] = node_label(p.seed, chunks[g - 1], pl, p.ell);
        forged[g] = 1;
        any = true;
      }
      if (!any) continue;
      std::vector<std::size_t> add;
      if (u == u0) {
        BitString group;
        for (std::size_t j = 1; j <= p.m; ++j) group.append(chunks[mg.node(u, j) - 1]);
        charge(ctx.c.slice((u - 1) * bm, bm), ecc_encode(p.ecc_msg, group), (u - 1) * bm, add);
      }
      BitString lab;
      for (std::size_t j = 1; j <= p.m; ++j) lab.append(trial[mg.node(u, j) - 1]);
      const std::size_t off = p.t * bm + (u - 1) * bl;
      charge(ctx.c.slice(off, bl), ecc_encode(p.ecc_lab, lab), off, add);
      if (used + add.size() > ctx.budget) break;
      used += add.size();
      out.mask.insert(out.mask.end(), add.begin(), add.end());
      labels = std::move(trial);
      if (u == u0) out.targeted_blocks.push_back(u);
      out.targeted_blocks.push_back(p.t + u);
    }
    normalise(out.mask);
    return out;
  }
};

}  // namespace

std::unique_ptr<AttackStrategy> make_attack(const std::string& spec) {
  const auto colon = spec.find(':');
  const std::string name = spec.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : spec.substr(colon + 1);
  try {
    if (name == "none") return std::make_unique<NoAttack>();
    if (name == "random_flip") return std::make_unique<RandomFlip>();
    if (name == "block_killer") return std::make_unique<BlockKiller>(arg.empty() ? 0 : std::stoul(arg));
    if (name == "tail_attack") return std::make_unique<TailAttack>(arg.empty() ? 0.4 : std::stod(arg));
    if (name == "red_flood") return std::make_unique<RedFlood>();
    if (name == "label_swap") return std::make_unique<LabelSwap>();
  } catch (const std::logic_error&) {
    throw ParameterError("bad attack argument in '" + spec + "'");
  }
  throw ParameterError("unknown attack '" + spec + "'");
}

std::vector<std::string> attack_names() {
  return {"none", "random_flip", "block_killer", "tail_attack", "red_flood", "label_swap"};
}

// ---- harness ---------------------------------------------------------------

double clopper_pearson_upper(std::size_t x, std::size_t n, double confidence) {
  if (n == 0 || x >= n) return 1.0;
  const double a = (1.0 - confidence) / 2.0;
  return boost::math::ibeta_inv(static_cast<double>(x + 1), static_cast<double>(n - x), 1.0 - a);
}

double clopper_pearson_lower(std::size_t x, std::size_t n, double confidence) {
  if (n == 0 || x == 0) return 0.0;
  const double a = (1.0 - confidence) / 2.0;
  return boost::math::ibeta_inv(static_cast<double>(x), static_cast<double>(n - x + 1), a);
}

namespace {

std::size_t node_of_block(const LocalCode& code, std::size_t b) {
  const std::size_t u = code.red_universe();
  if (b <= u) return b;
  if (b <= 2 * u) return b - u;
  return u;
}

std::size_t message_chunk_bits(const LocalCode& code) { return code.k() / code.red_universe(); }

std::size_t pick_challenge(const LocalCode& code, const AttackOutcome& out, bool message_mode,
                           std::mt19937_64& rng) {
  const bool aim = !out.targeted_blocks.empty() && std::bernoulli_distribution(0.5)(rng);
  if (message_mode) {
    if (!aim) return std::uniform_int_distribution<std::size_t>(1, code.k())(rng);
    const std::size_t b = out.targeted_blocks[std::uniform_int_distribution<std::size_t>(
        0, out.targeted_blocks.size() - 1)(rng)];
    const std::size_t chunk = message_chunk_bits(code);
    return (node_of_block(code, b) - 1) * chunk + std::uniform_int_distribution<std::size_t>(1, chunk)(rng);
  }
  if (!aim) return std::uniform_int_distribution<std::size_t>(1, code.n())(rng);
  const auto& layout = code.layout();
  const std::size_t b =
      out.targeted_blocks[std::uniform_int_distribution<std::size_t>(0, out.targeted_blocks.size() - 1)(rng)];
  return layout.offset(b) + std::uniform_int_distribution<std::size_t>(1, layout.bits(b))(rng);
}

bool reports_red(const AttackStrategy& a) { return a.name() == "red_flood"; }

}  // namespace

LimitingReport limiting_statistic(const LocalCode& code, const ReceivedWord& w, const BitString& truth,
                                  std::size_t reps, std::mt19937_64& rng) {
  const auto& layout = code.layout();
  LimitingReport rep;
  rep.block_good.assign(layout.block_count() + 1, 0);
  std::size_t good_bits = 0;
  for (std::size_t b = 1; b <= layout.block_count(); ++b) {
    const std::size_t i = layout.offset(b) + std::uniform_int_distribution<std::size_t>(1, layout.bits(b))(rng);
    std::size_t ok = 0;
    for (std::size_t j = 0; j < reps; ++j) {
      const auto res = code.decode(w, i, rng);
      if (res.bit && *res.bit == truth.get(i - 1)) ++ok;
    }
    if (3 * ok >= 2 * reps) {
      rep.block_good[b] = 1;
      good_bits += layout.bits(b);
    }
  }
  rep.good_fraction = static_cast<double>(good_bits) / static_cast<double>(layout.total_bits());
  return rep;
}

RoundStats run_round(const LocalCode& code, const AttackStrategy& attack, double tau, std::size_t trials,
                     const RunOptions& opt) {
  RoundStats st;
  st.code = code.kind();
  st.strategy = attack.name();
  st.rounds = trials;
  st.budget = opt.budget_bits ? *opt.budget_bits
                              : static_cast<std::size_t>(std::floor(tau * static_cast<double>(code.n()) + 1e-9));
  const bool over = st.budget > code.theorem_budget();
  if (over && !opt.out_of_theorem)
    throw BudgetError("budget " + std::to_string(st.budget) + " exceeds the analysed budget " +
                      std::to_string(code.theorem_budget()) + " (enable out-of-theorem mode to proceed)");
  st.out_of_theorem = over || (code.strong() && code.strong()->out_of_theorem);

  const std::size_t nmsg = std::max<std::size_t>(1, std::min(opt.messages, std::max<std::size_t>(trials, 1)));
  std::vector<BitString> xs, cs;
  std::vector<std::unique_ptr<ReceivedWord>> honest;
  for (std::size_t j = 0; j < nmsg; ++j) {
    std::mt19937_64 mrng(mix_seed(opt.master_seed, 0xA11CE000 + j));
    // Odd slots carry a structured (all-zero) message, even slots a random one.
    xs.push_back(j % 2 ? BitString::zeros(code.k()) : BitString::random(code.k(), mrng));
    cs.push_back(code.encode(xs.back()));
    honest.push_back(std::make_unique<ReceivedWord>(cs.back(), code.layout()));
    code.warm(*honest.back());
  }

  std::vector<RoundRecord> recs(trials);
  std::vector<std::optional<double>> goods(trials);
  const bool want_red = reports_red(attack);

  auto one = [&](std::size_t r) {
    const std::uint64_t rs = mix_seed(opt.master_seed, r);
    std::mt19937_64 rng(rs);
    const std::size_t j = r % nmsg;
    const AttackContext ctx{code, xs[j], cs[j], st.budget};
    AttackOutcome out = attack.run(ctx, rng);
    if (out.mask.size() > st.budget)
      throw BudgetError(attack.name() + " produced " + std::to_string(out.mask.size()) + " flips over budget " +
                        std::to_string(st.budget));
    ReceivedWord w(apply_mask(cs[j], out.mask), code.layout());
    w.inherit_caches(*honest[j]);
    const std::size_t i = out.challenge ? out.challenge : pick_challenge(code, out, opt.message_mode, rng);

    RoundRecord rec;
    rec.strategy = st.strategy;
    rec.round = r;
    rec.budget = st.budget;
    rec.mask_weight = out.mask.size();
    rec.index = i;
    rec.round_seed = rs;
    const DecodeResult res = opt.message_mode ? code.decode_message(w, i, rng) : code.decode(w, i, rng);
    rec.verdict = res.bit;
    rec.truth = opt.message_mode ? xs[j].get(i - 1) : cs[j].get(i - 1);
    rec.queries = res.bit_queries;
    if (want_red) rec.red_count = code.oracle_red_count(w.bits());
    if (rec.wrong()) rec.mask = out.mask;
    if (opt.limit_reps && r < opt.limit_rounds)
      goods[r] = limiting_statistic(code, w, cs[j], opt.limit_reps, rng).good_fraction;
    recs[r] = std::move(rec);
  };

  const unsigned nt = std::max(1u, opt.threads);
  if (nt == 1) {
    for (std::size_t r = 0; r < trials; ++r) one(r);
  } else {
    std::vector<std::exception_ptr> errs(nt);
    std::vector<std::thread> pool;
    for (unsigned tid = 0; tid < nt; ++tid) {
      pool.emplace_back([&, tid] {
        try {
          for (std::size_t r = tid; r < trials; r += nt) one(r);
        } catch (...) {
          errs[tid] = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errs)
      if (e) std::rethrow_exception(e);
  }

  double qsum = 0.0, red = 0.0, good = 0.0;
  std::size_t ngood = 0;
  for (std::size_t r = 0; r < trials; ++r) {
    const auto& rec = recs[r];
    if (!rec.verdict) {
      ++st.bottom;
    } else if (rec.wrong()) {
      ++st.wrong;
      st.fooling.push_back(rec);
    } else {
      ++st.correct;
    }
    qsum += static_cast<double>(rec.queries);
    st.max_queries = std::max(st.max_queries, rec.queries);
    red += static_cast<double>(rec.red_count) / static_cast<double>(code.red_universe());
    if (goods[r]) {
      good += *goods[r];
      ++ngood;
    }
  }
  if (trials) {
    st.mean_queries = qsum / static_cast<double>(trials);
    st.mean_red_fraction = red / static_cast<double>(trials);
  }
  if (ngood) st.good_fraction = good / static_cast<double>(ngood);
  st.fool_upper95 = clopper_pearson_upper(st.wrong, st.rounds);
  if (opt.keep_records) st.records = std::move(recs);
  return st;
}

std::string format_record_header() { return "strategy\tround\tbudget\tflips\tindex\tverdict\ttruth\tqueries\tred"; }

std::string format_record(const RoundRecord& r) {
  std::ostringstream s;
  const char* verdict = !r.verdict ? "bot" : (r.wrong() ? "wrong" : "correct");
  s << r.strategy << '\t' << r.round << '\t' << r.budget << '\t' << r.mask_weight << '\t' << r.index << '\t'
    << verdict << '\t' << (r.truth ? 1 : 0) << '\t' << r.queries << '\t' << r.red_count;
  return s.str();
}

std::string format_table(const std::vector<RoundStats>& rows) {
  std::ostringstream s;
  char line[256];
  std::snprintf(line, sizeof line, "%-7s %-18s %7s %9s %4s %8s %8s %8s %10s %11s %9s %8s\n", "code", "strategy",
                "rounds", "budget", "oot", "correct", "bottom", "wrong", "fool_ub95", "mean_q", "max_q", "good");
  s << line;
  for (const auto& r : rows) {
    char good[16] = "-";
    if (r.good_fraction) std::snprintf(good, sizeof good, "%.4f", *r.good_fraction);
    std::snprintf(line, sizeof line, "%-7s %-18s %7zu %9zu %4s %8.4f %8.4f %8.4f %10.5f %11.1f %9zu %8s\n",
                  r.code.c_str(), r.strategy.c_str(), r.rounds, r.budget, r.out_of_theorem ? "yes" : "no",
                  r.correct_rate(), r.bottom_rate(), r.fool_rate(), r.fool_upper95, r.mean_queries, r.max_queries,
                  good);
    s << line;
  }
  return s.str();
}

}  // namespace crlcc
