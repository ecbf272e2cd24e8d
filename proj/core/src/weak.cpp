#include "crlcc/weak.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "crlcc/error.hpp"

namespace crlcc {

WeakCodeParams make_weak_params(std::size_t k, unsigned ell, HashSeed seed, std::uint64_t graph_seed,
                                WeakOptions opt) {
  if (ell == 0 || ell % 8 != 0) throw ParameterError("weak: ell must be a positive multiple of 8");
  if (k == 0 || k % ell != 0) throw ParameterError("weak: ell must divide k");
  if (k / ell < 2) throw ParameterError("weak: need at least two nodes");
  if (!(opt.alpha > 0.0 && opt.alpha < 0.75)) throw ParameterError("weak: alpha must lie in (0, 3/4)");
  if (!(opt.epsilon > 0.0)) throw ParameterError("weak: epsilon must be positive");

  WeakCodeParams p;
  p.k = k;
  p.ell = ell;
  p.k_prime = k / ell;
  p.delta = opt.delta;
  p.alpha = opt.alpha;
  p.epsilon = opt.epsilon;
  p.ecc = make_ecc_params(ell, Rational(1, 4));
  p.block_bits = p.ecc.block_bits;
  p.n = 3 * p.k_prime * p.block_bits;
  p.graph_seed = graph_seed;
  p.graph = build_local_expander(p.k_prime, opt.delta, graph_seed);
  p.seed = std::move(seed);
  p.layout = BlockLayout({{3 * p.k_prime, p.ecc}});
  return p;
}

BitString weak_encode(const WeakCodeParams& p, const BitString& x) {
  if (x.size() != p.k)
    throw ParameterError("weak_encode: message has " + std::to_string(x.size()) + " bits, expected " +
                         std::to_string(p.k));
  const std::size_t kp = p.k_prime;
  std::vector<BitString> chunks(kp);
  for (std::size_t v = 0; v < kp; ++v) chunks[v] = x.slice(v * p.ell, p.ell);
  const auto labels = label_graph(p.graph, p.seed, chunks, p.ell, p.ell);

  BitString c(p.n);
  for (std::size_t v = 0; v < kp; ++v) {
    c.assign(v * p.block_bits, ecc_encode(p.ecc, chunks[v]));
    c.assign((kp + v) * p.block_bits, ecc_encode(p.ecc, labels[v]));
  }
  const BitString last = ecc_encode(p.ecc, labels[kp - 1]);
  for (std::size_t v = 0; v < kp; ++v) c.assign((2 * kp + v) * p.block_bits, last);
  return c;
}

std::size_t weak_node_of_bit(const WeakCodeParams& p, std::size_t i) {
  const std::size_t b = (i + p.block_bits - 1) / p.block_bits;
  const std::size_t v = b % p.k_prime;
  return v == 0 ? p.k_prime : v;
}

NodeColor is_green(const WeakCodeParams& p, Reader& r, std::size_t v) {
  if (v < 1 || v > p.k_prime) throw ParameterError("is_green: node out of range");
  const std::size_t kp = p.k_prime;
  auto check = [&](Reader& rd) {
    const Decoded x = rd.decoded(v);
    if (!x->has_value()) return false;
    const Decoded lab = rd.decoded(kp + v);
    if (!lab->has_value()) return false;
    std::vector<Decoded> held;
    std::vector<const Label*> ps;
    for (Node u : p.graph.parents(static_cast<Node>(v))) {
      held.push_back(rd.decoded(kp + u));
      if (!held.back()->has_value()) return false;
      ps.push_back(&**held.back());
    }
    return node_label(p.seed, **x, ps, p.ell) == **lab;
  };
  const bool green = r.memo(memo_key(MemoKind::WeakNode, v), check);
  return green ? NodeColor::Green : NodeColor::Red;
}

std::size_t is_good_samples(const WeakCodeParams& p) {
  const double lg = std::log2(static_cast<double>(p.k_prime));
  return static_cast<std::size_t>(std::max(1.0, std::ceil(std::pow(lg, 1.0 + p.epsilon))));
}

bool is_good(const WeakCodeParams& p, Reader& r, std::size_t v, std::mt19937_64& rng) {
  if (is_green(p, r, v) == NodeColor::Red) return false;
  const std::size_t kp = p.k_prime;
  const std::size_t s = is_good_samples(p);
  const double limit = 3.0 * p.alpha / 8.0;
  const unsigned top = static_cast<unsigned>(std::ceil(std::log2(static_cast<double>(kp))));
  auto too_red = [&](std::size_t lo, std::size_t hi) {
    std::uniform_int_distribution<std::size_t> pick(lo, hi);
    std::size_t red = 0;
    for (std::size_t j = 0; j < s; ++j)
      if (is_green(p, r, pick(rng)) == NodeColor::Red) ++red;
    return static_cast<double>(red) > limit * static_cast<double>(s);
  };
  for (unsigned e = 1; e <= top; ++e) {
    const std::size_t len = std::size_t{1} << e;
    const std::size_t left_lo = v > len - 1 ? v - len + 1 : 1;
    const std::size_t right_hi = std::min(kp, v + len - 1);
    if (too_red(left_lo, v) || too_red(v, right_hi)) return false;
  }
  return true;
}

std::size_t dec1_samples(const WeakCodeParams& p) {
  const double lg = std::log2(static_cast<double>(p.k_prime));
  const auto cube = static_cast<std::size_t>(std::ceil(lg * lg * lg));
  return std::min(p.k_prime, std::max<std::size_t>(32, cube));
}

std::optional<BitString> dec1_block(const WeakCodeParams& p, Reader& r, std::mt19937_64& rng) {
  const std::size_t kp = p.k_prime;
  std::uniform_int_distribution<std::size_t> pick(2 * kp, 3 * kp);
  std::vector<std::pair<BitString, std::size_t>> tally;
  const std::size_t s = dec1_samples(p);
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
  auto best = std::max_element(tally.begin(), tally.end(),
                               [](const auto& a, const auto& b) { return a.second < b.second; });
  return best->first;
}

std::optional<bool> dec1(const WeakCodeParams& p, Reader& r, std::size_t i, std::mt19937_64& rng) {
  if (i <= weak_back_start(p) || i > p.n) throw ParameterError("dec1: index outside the back region");
  const auto blk = dec1_block(p, r, rng);
  if (!blk) return std::nullopt;
  return blk->get((i - 1) % p.block_bits);
}

bool weak_gate(const WeakCodeParams& p, Reader& r, std::size_t v, std::mt19937_64& rng) {
  const std::size_t kp = p.k_prime;
  Reader last(r.word());
  const auto blk = dec1_block(p, last, rng);
  if (!blk) {
    r.absorb(last);
    return false;
  }
  last.override_block(2 * kp, *blk);
  const bool ok_last = is_good(p, last, kp, rng);
  r.absorb(last);
  if (!ok_last) return false;
  return is_good(p, r, v, rng);
}

std::optional<bool> dec2(const WeakCodeParams& p, Reader& r, std::size_t i, std::mt19937_64& rng) {
  if (i < 1 || i > weak_back_start(p)) throw ParameterError("dec2: index outside the front region");
  if (!weak_gate(p, r, weak_node_of_bit(p, i), rng)) return std::nullopt;
  return r.repaired_bit(i);
}

DecodeResult weak_decode(const WeakCodeParams& p, const ReceivedWord& w, std::size_t i, std::mt19937_64& rng) {
  if (i < 1 || i > p.n) throw ParameterError("weak_decode: index out of range");
  Reader r(w);
  DecodeResult out;
  out.bit = i > weak_back_start(p) ? dec1(p, r, i, rng) : dec2(p, r, i, rng);
  out.bit_queries = r.bit_queries();
  return out;
}

DecodeResult weak_decode_message(const WeakCodeParams& p, const ReceivedWord& w, std::size_t i,
                                 std::mt19937_64& rng) {
  if (i < 1 || i > p.k) throw ParameterError("weak_decode_message: index out of range");
  Reader r(w);
  DecodeResult out;
  const std::size_t v = (i + p.ell - 1) / p.ell;
  if (weak_gate(p, r, v, rng)) {
    const Decoded x = r.decoded(v);
    if (x->has_value()) out.bit = (*x)->get((i - 1) % p.ell);
  }
  out.bit_queries = r.bit_queries();
  return out;
}

}  // namespace crlcc
