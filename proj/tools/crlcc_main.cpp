// crlcc: encode, corrupt, locally decode and sweep the weak/strong codes.
//
// Exit codes: 0 ok, 1 verification failed / internal error, 2 usage,
// 3 malformed file, 4 refusal (budget above the analysed bound).

#include <CLI11.hpp>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <crlcc/crlcc.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace crlcc;

constexpr int kExitOk = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitFormat = 3;
constexpr int kExitRefusal = 4;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Rational parse_rational(const std::string& s) {
  const auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return rational_from_double(std::stod(s));
    return Rational(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
  } catch (const std::logic_error&) {
    throw UsageError("cannot parse rate '" + s + "'");
  }
}

std::vector<std::uint8_t> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write " + path);
  return out;
}

std::string mask_path(const std::string& codeword_path) { return codeword_path + ".mask"; }

/// A codeword file of either kind, loaded with its code.
struct Loaded {
  std::unique_ptr<LocalCode> code;
  BitString word;
};

Loaded load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open " + path);
  Loaded l;
  switch (peek_kind(in)) {
    case FileKind::Weak: {
      auto f = read_weak(in);
      l.word = std::move(f.word);
      l.code = std::make_unique<WeakCode>(std::move(f.params));
      break;
    }
    case FileKind::Strong: {
      auto f = read_strong(in);
      l.word = std::move(f.word);
      l.code = std::make_unique<StrongCode>(std::move(f.params));
      break;
    }
    default:
      throw FormatError(path + ": not a weak or strong codeword file");
  }
  return l;
}

void save(const std::string& path, const LocalCode& code, const BitString& w) {
  auto out = open_out(path);
  if (const auto* p = code.weak()) {
    write_weak(out, *p, w);
  } else {
    write_strong(out, *code.strong(), w);
  }
}

/// Message recovered by full decoding of the message blocks; undecodable
/// chunks come back as zeros.
BitString full_message(const LocalCode& code, const BitString& c) {
  const auto& layout = code.layout();
  BitString x;
  for (std::size_t b = 1; b <= code.red_universe(); ++b) {
    const auto& ecc = layout.ecc(b);
    auto m = ecc_decode(ecc, c.slice(layout.offset(b), layout.bits(b)));
    x.append(m ? *m : BitString::zeros(ecc.message_bits));
  }
  return x;
}

// ---- encode ----------------------------------------------------------------

struct EncodeArgs {
  std::string mode = "weak";
  std::string in, out;
  unsigned ell = 128;
  std::optional<double> delta;
  unsigned beta = 1;
  std::string rate = "1/4";
  std::optional<unsigned> kappa;
  std::optional<double> alpha;
  std::size_t t = 0;
  std::uint64_t seed = 1;
  std::optional<std::uint64_t> graph_seed;
};

int cmd_encode(const EncodeArgs& a) {
  const auto bytes = read_file(a.in);
  const std::size_t msg_bits = bytes.size() * 8;
  const HashSeed seed = gen(lambda_for_ell(a.ell), a.seed);
  const std::uint64_t gseed = a.graph_seed.value_or(a.seed);

  std::unique_ptr<LocalCode> code;
  if (a.mode == "weak") {
    WeakOptions opt;
    if (a.delta) opt.delta = *a.delta;
    if (a.alpha) opt.alpha = *a.alpha;
    const std::size_t kp = std::max<std::size_t>(2, (msg_bits + a.ell - 1) / a.ell);
    code = std::make_unique<WeakCode>(make_weak_params(kp * a.ell, a.ell, seed, gseed, opt));
  } else if (a.mode == "strong") {
    StrongOptions opt;
    if (a.delta) opt.delta = *a.delta;
    opt.beta = a.beta;
    opt.rate = parse_rational(a.rate);
    opt.kappa = a.kappa;
    opt.alpha = a.alpha;
    // Without --t, take the smallest power of two whose message fits.
    std::size_t t = a.t ? a.t : 2;
    for (;;) {
      auto p = make_strong_params(t, a.ell, seed, gseed, opt);
      if (a.t || p.k >= msg_bits) {
        code = std::make_unique<StrongCode>(std::move(p));
        break;
      }
      if (t >= 4096) throw UsageError("message too long for t <= 4096");
      t *= 2;
    }
  } else {
    throw UsageError("--mode must be weak or strong");
  }
  if (msg_bits > code->k())
    throw UsageError("message has " + std::to_string(msg_bits) + " bits, code holds " + std::to_string(code->k()));

  BitString x = BitString::from_bytes(bytes, msg_bits);
  x.append(BitString::zeros(code->k() - msg_bits));
  save(a.out, *code, code->encode(x));
  std::printf("%s k=%zu n=%zu budget=%zu\n", code->kind().c_str(), code->k(), code->n(), code->theorem_budget());
  if (const auto* p = code->strong())
    std::printf("t=%zu m=%zu d_delta=%u kappa=%u alpha=%g%s\n", p->t, p->m, p->d_delta, p->kappa, p->alpha,
                p->out_of_theorem ? " (out of theorem)" : "");
  return kExitOk;
}

// ---- corrupt ---------------------------------------------------------------

struct CorruptArgs {
  std::string in, out, attack = "random_flip";
  double budget_frac = 0.0;
  std::optional<std::size_t> budget_bits;
  std::uint64_t attack_seed = 1;
  bool out_of_theorem = false;
};

int cmd_corrupt(const CorruptArgs& a) {
  Loaded l = load(a.in);
  const auto attack = make_attack(a.attack);
  const std::size_t budget = a.budget_bits ? *a.budget_bits
                                           : static_cast<std::size_t>(a.budget_frac * static_cast<double>(l.code->n()));
  if (budget > l.code->theorem_budget() && !a.out_of_theorem) {
    std::fprintf(stderr, "refusing: budget %zu exceeds the analysed budget %zu (pass --out-of-theorem)\n", budget,
                 l.code->theorem_budget());
    return kExitRefusal;
  }
  const BitString x = full_message(*l.code, l.word);
  std::mt19937_64 rng(a.attack_seed);
  const AttackOutcome out = attack->run(AttackContext{*l.code, x, l.word, budget}, rng);
  if (out.mask.size() > budget) throw BudgetError(attack->name() + " exceeded its budget");
  save(a.out, *l.code, apply_mask(l.word, out.mask));
  auto ms = open_out(mask_path(a.out));
  write_mask(ms, out.mask);
  std::printf("attack=%s budget=%zu flips=%zu mask=%s\n", attack->name().c_str(), budget, out.mask.size(),
              mask_path(a.out).c_str());
  return kExitOk;
}

// ---- query -----------------------------------------------------------------

struct QueryArgs {
  std::string in;
  std::size_t index = 1;
  bool message_bit = false;
  std::uint64_t rng = 1;
};

int cmd_query(const QueryArgs& a) {
  Loaded l = load(a.in);
  const std::size_t limit = a.message_bit ? l.code->k() : l.code->n();
  if (a.index < 1 || a.index > limit)
    throw UsageError("--index must lie in [1, " + std::to_string(limit) + "]");
  ReceivedWord w(l.word, l.code->layout());
  std::mt19937_64 rng(a.rng);
  const DecodeResult res = a.message_bit ? l.code->decode_message(w, a.index, rng) : l.code->decode(w, a.index, rng);
  std::printf("verdict: %s\n", res.bit ? (*res.bit ? "1" : "0") : "bot");

  std::ifstream ms(mask_path(a.in), std::ios::binary);
  if (ms) {
    const BitString c = apply_mask(l.word, read_mask(ms));
    const bool truth = a.message_bit ? full_message(*l.code, c).get(a.index - 1) : c.get(a.index - 1);
    std::printf("truth: %d\n", truth ? 1 : 0);
  }
  std::printf("queries: %zu\n", res.bit_queries);
  return kExitOk;
}

// ---- sweep -----------------------------------------------------------------

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

int cmd_sweep(const std::string& config, unsigned threads_flag) {
  namespace pt = boost::property_tree;
  pt::ptree tree;
  try {
    pt::read_ini(config, tree);
  } catch (const pt::ini_parser_error& e) {
    throw FormatError(e.what());
  }
  const std::string mode = tree.get("code.mode", "weak");
  const unsigned ell = tree.get("code.ell", 128u);
  const std::uint64_t seed = tree.get("code.seed", std::uint64_t{1});
  const HashSeed hs = gen(lambda_for_ell(ell), seed);

  std::unique_ptr<LocalCode> code;
  if (mode == "weak") {
    WeakOptions opt;
    opt.delta = tree.get("code.delta", opt.delta);
    opt.alpha = tree.get("code.alpha", opt.alpha);
    const std::size_t kp = tree.get("code.k_prime", std::size_t{256});
    code = std::make_unique<WeakCode>(make_weak_params(kp * ell, ell, hs, seed, opt));
  } else if (mode == "strong") {
    StrongOptions opt;
    opt.delta = tree.get("code.delta", opt.delta);
    opt.beta = tree.get("code.beta", opt.beta);
    opt.rate = parse_rational(tree.get("code.rate", std::string("1/4")));
    if (auto k = tree.get_optional<unsigned>("code.kappa")) opt.kappa = *k;
    if (auto al = tree.get_optional<double>("code.alpha")) opt.alpha = *al;
    code = std::make_unique<StrongCode>(make_strong_params(tree.get("code.t", std::size_t{16}), ell, hs, seed, opt));
  } else {
    throw UsageError("code.mode must be weak or strong");
  }

  RunOptions ro;
  ro.master_seed = tree.get("run.seed", std::uint64_t{1});
  ro.message_mode = tree.get("run.message_mode", false);
  ro.out_of_theorem = tree.get("run.out_of_theorem", false);
  ro.limit_reps = tree.get("run.limit_reps", std::size_t{0});
  ro.limit_rounds = tree.get("run.limit_rounds", std::size_t{1});
  ro.threads = threads_flag ? threads_flag : tree.get("run.threads", 1u);
  const std::size_t trials = tree.get("run.trials", std::size_t{100});
  const std::string records = tree.get("run.records", std::string());

  std::vector<std::string> attacks = split_list(tree.get("run.attacks", std::string("random_flip")));
  std::vector<std::string> taus = split_list(tree.get("run.tau", std::string()));
  std::vector<std::string> budgets = split_list(tree.get("run.budget_bits", std::string()));
  if (taus.empty() && budgets.empty()) budgets.push_back(std::to_string(code->theorem_budget()));

  std::ofstream rec;
  if (!records.empty()) {
    rec = open_out(records);
    rec << format_record_header() << '\n';
  }
  std::vector<RoundStats> rows;
  auto run = [&](const AttackStrategy& atk, double tau, std::optional<std::size_t> bits) {
    RunOptions o = ro;
    o.budget_bits = bits;
    o.keep_records = !records.empty();
    rows.push_back(run_round(*code, atk, tau, trials, o));
    for (const auto& r : rows.back().records) rec << format_record(r) << '\n';
  };
  for (const auto& name : attacks) {
    const auto atk = make_attack(name);
    for (const auto& t : taus) run(*atk, std::stod(t), std::nullopt);
    for (const auto& b : budgets) run(*atk, 0.0, std::stoull(b));
  }
  std::printf("# %s k=%zu n=%zu analysed_budget=%zu\n", code->kind().c_str(), code->k(), code->n(),
              code->theorem_budget());
  std::fputs(format_table(rows).c_str(), stdout);
  return kExitOk;
}

// ---- verify-graph ----------------------------------------------------------

int cmd_verify_graph(std::size_t n, double delta, std::uint64_t seed, unsigned max_r, std::optional<unsigned> degree) {
  const auto g = degree ? build_local_expander(n, delta, *degree, seed) : build_local_expander(n, delta, seed);
  const auto rep = verify_local_expansion(g.dag, delta, max_r);
  std::printf("n=%zu delta=%g degree=%u max_indegree=%zu edges=%zu pairs_checked=%zu\n", n, delta,
              g.overlay_degree, g.dag.max_indegree(), g.dag.edge_count(), rep.pairs_checked);
  if (rep.ok) {
    std::printf("ok: delta-local expansion holds for every r <= %u\n", max_r);
    return kExitOk;
  }
  const auto [v, r, desc] = *rep.failure;
  std::printf("FAILED at v=%u r=%u (%s)\n", v, r, desc ? "descendant" : "ancestor");
  return kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Relaxed locally correctable codes over computationally bounded channels"};
  app.require_subcommand(1);

  EncodeArgs ea;
  auto* enc = app.add_subcommand("encode", "Encode a message file");
  enc->add_option("--mode", ea.mode, "weak or strong")->check(CLI::IsMember({"weak", "strong"}));
  enc->add_option("--in", ea.in, "message file (zero-padded to k bits)")->required();
  enc->add_option("--out", ea.out, "codeword file")->required();
  enc->add_option("--ell", ea.ell, "label length in bits");
  enc->add_option("--delta", ea.delta, "local expansion parameter");
  enc->add_option("--beta", ea.beta, "strong: message chunk size in labels");
  enc->add_option("--rate", ea.rate, "strong: inner code rate, e.g. 1/4");
  enc->add_option("--kappa", ea.kappa, "strong: override kappa (may leave the analysed regime)");
  enc->add_option("--alpha", ea.alpha, "override alpha");
  enc->add_option("--t", ea.t, "strong: number of meta-nodes");
  enc->add_option("--seed", ea.seed, "seed for the hash seed and the graph");
  enc->add_option("--graph-seed", ea.graph_seed, "graph seed (defaults to --seed)");

  CorruptArgs ca;
  auto* cor = app.add_subcommand("corrupt", "Apply an attack; writes OUT and OUT.mask");
  cor->add_option("--in", ca.in)->required();
  cor->add_option("--out", ca.out)->required();
  cor->add_option("--attack", ca.attack, "none|random_flip|block_killer[:q]|tail_attack[:f]|red_flood|label_swap");
  auto* bf = cor->add_option("--budget-frac", ca.budget_frac, "tau; budget = floor(tau * n)");
  auto* bb = cor->add_option("--budget-bits", ca.budget_bits, "exact budget in bits");
  bf->excludes(bb);
  cor->add_option("--attack-seed", ca.attack_seed);
  cor->add_flag("--out-of-theorem", ca.out_of_theorem, "allow budgets above the analysed bound");

  QueryArgs qa;
  auto* qry = app.add_subcommand("query", "Locally decode one bit");
  qry->add_option("--in", qa.in)->required();
  qry->add_option("--index", qa.index, "1-based index")->required();
  qry->add_flag("--message-bit", qa.message_bit, "index is a message bit");
  qry->add_option("--rng", qa.rng, "decoder randomness seed");

  std::string config;
  unsigned sweep_threads = 0;
  auto* swp = app.add_subcommand("sweep", "Run the channel harness from an INI config");
  swp->add_option("--config", config)->required()->check(CLI::ExistingFile);
  swp->add_option("--threads", sweep_threads, "override run.threads");

  std::size_t vn = 64;
  double vdelta = 0.25;
  std::uint64_t vseed = 1;
  unsigned vmax_r = 12;
  std::optional<unsigned> vdeg;
  auto* ver = app.add_subcommand("verify-graph", "Exhaustively check delta-local expansion");
  ver->add_option("--n", vn)->check(CLI::Range(std::size_t{2}, std::size_t{1} << 20));
  ver->add_option("--delta", vdelta)->check(CLI::Range(1e-6, 0.25));
  ver->add_option("--seed", vseed);
  ver->add_option("--max-r", vmax_r)->check(CLI::Range(1u, kMaxOracleSide));
  ver->add_option("--degree", vdeg, "overlay degree (default: calibrated)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*enc) return cmd_encode(ea);
    if (*cor) return cmd_corrupt(ca);
    if (*qry) return cmd_query(qa);
    if (*swp) return cmd_sweep(config, sweep_threads);
    if (*ver) return cmd_verify_graph(vn, vdelta, vseed, vmax_r, vdeg);
  } catch (const UsageError& e) {
    std::fprintf(stderr, "usage error: %s\n", e.what());
    return kExitUsage;
  } catch (const ParameterError& e) {
    std::fprintf(stderr, "bad parameters: %s\n", e.what());
    return kExitUsage;
  } catch (const FormatError& e) {
    std::fprintf(stderr, "format error: %s\n", e.what());
    return kExitFormat;
  } catch (const BudgetError& e) {
    std::fprintf(stderr, "refusing: %s\n", e.what());
    return kExitRefusal;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitFail;
  }
  return kExitUsage;
}
