#include "crlcc/ecc.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <map>
#include <memory>
#include <mutex>
#include <tuple>

#include "crlcc/error.hpp"
#include "crlcc/gf.hpp"

namespace crlcc {

namespace inner {
namespace {

struct InnerTables {
  std::array<std::uint8_t, 256> rows_parity{};  // parity of each data byte
  std::array<std::uint16_t, 256> leader{};      // coset leader per syndrome
  unsigned dmin = 0;
  std::uint16_t min_word = 0;
};

unsigned distance_of(const std::array<std::uint8_t, 8>& rows, std::uint16_t* witness) {
  unsigned best = 16;
  for (unsigned d = 1; d < 256; ++d) {
    std::uint8_t par = 0;
    for (unsigned b = 0; b < 8; ++b)
      if (d >> b & 1u) par ^= rows[b];
    const unsigned w = static_cast<unsigned>(std::popcount(d) + std::popcount(par));
    if (w < best) {
      best = w;
      if (witness) *witness = static_cast<std::uint16_t>(d | par << 8);
    }
  }
  return best;
}

InnerTables build_tables() {
  // Parity rows of a systematic [16,8,5] generator. Found once by random
  // search; min distance is rechecked below.
  constexpr std::array<std::uint8_t, 8> rows{0xDC, 0x1D, 0x2E, 0x96, 0xF9, 0xE7, 0xBF, 0x53};
  InnerTables t;
  t.dmin = distance_of(rows, &t.min_word);
  for (unsigned d = 0; d < 256; ++d) {
    std::uint8_t par = 0;
    for (unsigned b = 0; b < 8; ++b)
      if (d >> b & 1u) par ^= rows[b];
    t.rows_parity[d] = par;
  }
  std::array<bool, 256> seen{};
  std::vector<std::uint16_t> order(65536);
  for (unsigned e = 0; e < 65536; ++e) order[e] = static_cast<std::uint16_t>(e);
  std::stable_sort(order.begin(), order.end(), [](std::uint16_t a, std::uint16_t b) {
    return std::popcount(a) < std::popcount(b);
  });
  for (std::uint16_t e : order) {
    const std::uint8_t s = static_cast<std::uint8_t>((e >> 8) ^ t.rows_parity[e & 0xFF]);
    if (!seen[s]) {
      seen[s] = true;
      t.leader[s] = e;
    }
  }
  return t;
}

const InnerTables& tables() {
  static const InnerTables t = build_tables();
  return t;
}

}  // namespace

std::uint8_t parity(std::uint8_t data) { return tables().rows_parity[data]; }

std::uint16_t encode(std::uint8_t data) {
  return static_cast<std::uint16_t>(data | parity(data) << 8);
}

std::uint8_t decode(std::uint16_t word) {
  const auto& t = tables();
  const std::uint8_t s = static_cast<std::uint8_t>((word >> 8) ^ t.rows_parity[word & 0xFF]);
  return static_cast<std::uint8_t>((word ^ t.leader[s]) & 0xFF);
}

unsigned min_distance() { return tables().dmin; }
std::uint16_t min_weight_codeword() { return tables().min_word; }

}  // namespace inner

namespace {

using Elem = GaloisField::Elem;
using Poly = std::vector<Elem>;  // coefficient of x^i at index i

void trim(Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

long degree(const Poly& p) { return static_cast<long>(p.size()) - 1; }

/// a = q * b + r. b must be nonzero after trimming.
void divmod(const GaloisField& f, Poly a, const Poly& b, Poly& q, Poly& r) {
  trim(a);
  const long db = degree(b);
  if (db < 0) throw ParameterError("polynomial division by zero");
  q.assign(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, 0);
  const Elem lead_inv = f.inv(b.back());
  for (long i = degree(a); i >= db; --i) {
    const Elem c = a[static_cast<std::size_t>(i)];
    if (c == 0) continue;
    const Elem factor = f.mul(c, lead_inv);
    q[static_cast<std::size_t>(i - db)] = factor;
    for (long j = 0; j <= db; ++j)
      a[static_cast<std::size_t>(i - db + j)] ^= f.mul(factor, b[static_cast<std::size_t>(j)]);
  }
  a.resize(static_cast<std::size_t>(std::max<long>(db, 0)));
  trim(a);
  trim(q);
  r = std::move(a);
}

Poly mul(const GaloisField& f, const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] ^= f.mul(a[i], b[j]);
  }
  trim(out);
  return out;
}

Poly add(Poly a, const Poly& b) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] ^= b[i];
  trim(a);
  return a;
}

Elem eval(const GaloisField& f, const Poly& p, Elem x) {
  Elem acc = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = f.mul(acc, x) ^ *it;
  return acc;
}

/// Systematic evaluation-form Reed-Solomon code on the points 0..N-1, with
/// Gao's algorithm for errors-only decoding.
class RsCodec {
 public:
  RsCodec(unsigned bits, std::size_t n, std::size_t k) : f_(GaloisField::get(bits)), n_(n), k_(k) {
    // Barycentric weights over all N points, and the parity map from the
    // first K evaluations to the remaining N-K.
    weights_.resize(n_);
    for (std::size_t i = 0; i < n_; ++i) {
      Elem prod = 1;
      for (std::size_t j = 0; j < n_; ++j)
        if (j != i) prod = f_.mul(prod, static_cast<Elem>(i ^ j));
      weights_[i] = f_.inv(prod);
    }
    std::vector<Elem> u(k_);
    for (std::size_t i = 0; i < k_; ++i) {
      Elem prod = 1;
      for (std::size_t l = 0; l < k_; ++l)
        if (l != i) prod = f_.mul(prod, static_cast<Elem>(i ^ l));
      u[i] = f_.inv(prod);
    }
    parity_log_.resize((n_ - k_) * k_);
    for (std::size_t j = k_; j < n_; ++j) {
      Elem pj = 1;
      for (std::size_t l = 0; l < k_; ++l) pj = f_.mul(pj, static_cast<Elem>(j ^ l));
      for (std::size_t i = 0; i < k_; ++i) {
        const Elem lij = f_.mul(f_.mul(pj, u[i]), f_.inv(static_cast<Elem>(j ^ i)));
        parity_log_[(j - k_) * k_ + i] = f_.log(lij);
      }
    }
    g0_ = Poly{1};
    for (std::size_t i = 0; i < n_; ++i) g0_ = mul(f_, g0_, Poly{static_cast<Elem>(i), 1});
  }

  std::size_t n() const { return n_; }
  std::size_t k() const { return k_; }

  void parity(const Elem* msg, Elem* out) const {
    std::fill(out, out + (n_ - k_), Elem{0});
    for (std::size_t i = 0; i < k_; ++i) {
      if (msg[i] == 0) continue;
      const std::uint32_t lm = f_.log(msg[i]);
      for (std::size_t j = 0; j < n_ - k_; ++j) out[j] ^= f_.exp(parity_log_[j * k_ + i] + lm);
    }
  }

  /// Returns false on decoding failure; on success `msg` holds K symbols.
  bool decode(const std::vector<Elem>& recv, std::vector<Elem>& msg) const {
    std::vector<Elem> par(n_ - k_);
    parity(recv.data(), par.data());
    if (std::equal(par.begin(), par.end(), recv.begin() + static_cast<long>(k_))) {
      msg.assign(recv.begin(), recv.begin() + static_cast<long>(k_));
      return true;
    }
    // Interpolate the received word.
    Poly g1(n_, 0);
    Poly quot(n_, 0);
    for (std::size_t i = 0; i < n_; ++i) {
      if (recv[i] == 0) continue;
      const Elem a = static_cast<Elem>(i);
      quot[n_ - 1] = g0_[n_];
      for (std::size_t d = n_ - 1; d > 0; --d) quot[d - 1] = g0_[d] ^ f_.mul(a, quot[d]);
      const Elem scale = f_.mul(recv[i], weights_[i]);
      for (std::size_t d = 0; d < n_; ++d) g1[d] ^= f_.mul(scale, quot[d]);
    }
    trim(g1);
    Poly r_prev = g0_, r = g1, v_prev, v{1};
    Poly q, rem;
    while (!r.empty() && 2 * degree(r) >= static_cast<long>(n_ + k_)) {
      divmod(f_, r_prev, r, q, rem);
      r_prev = std::move(r);
      r = std::move(rem);
      Poly v_next = add(v_prev, mul(f_, q, v));
      v_prev = std::move(v);
      v = std::move(v_next);
    }
    if (v.empty()) return false;
    Poly fpoly;
    divmod(f_, r, v, fpoly, rem);
    if (!rem.empty() || degree(fpoly) >= static_cast<long>(k_)) return false;
    msg.resize(k_);
    for (std::size_t i = 0; i < k_; ++i) msg[i] = eval(f_, fpoly, static_cast<Elem>(i));
    // Unique decoding only: reject anything farther than (N-K)/2.
    parity(msg.data(), par.data());
    std::size_t dist = 0;
    for (std::size_t i = 0; i < k_; ++i) dist += msg[i] != recv[i];
    for (std::size_t j = 0; j < n_ - k_; ++j) dist += par[j] != recv[k_ + j];
    return dist <= (n_ - k_) / 2;
  }

 private:
  const GaloisField& f_;
  std::size_t n_, k_;
  std::vector<Elem> weights_;
  std::vector<std::uint32_t> parity_log_;
  Poly g0_;
};

const RsCodec& codec(const EccParams& p) {
  static std::mutex mu;
  static std::map<std::tuple<unsigned, std::size_t, std::size_t>, std::unique_ptr<RsCodec>> cache;
  const auto key = std::make_tuple(p.symbol_bits, p.rs_n, p.rs_k);
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(key);
  if (it == cache.end())
    it = cache.emplace(key, std::make_unique<RsCodec>(p.symbol_bits, p.rs_n, p.rs_k)).first;
  return *it->second;
}

// Block layout with the inner code (s = symbol bits, K data symbols):
//   [data bits of symbols 0..K-1][inner parity of symbols 0..K-1]
//   [data | parity of each symbol K..N-1]
// so the first message_bits positions are the message itself.
std::size_t data_pos(const EccParams& p, std::size_t sym) {
  const std::size_t s = p.symbol_bits;
  if (!p.inner) return sym * s;
  if (sym < p.rs_k) return sym * s;
  return 2 * p.rs_k * s + (sym - p.rs_k) * 2 * s;
}

std::size_t parity_pos(const EccParams& p, std::size_t sym) {
  const std::size_t s = p.symbol_bits;
  if (sym < p.rs_k) return p.rs_k * s + sym * s;
  return 2 * p.rs_k * s + (sym - p.rs_k) * 2 * s + s;
}

void check_len(const char* what, std::size_t got, std::size_t want) {
  if (got != want)
    throw ParameterError(std::string(what) + ": expected " + std::to_string(want) + " bits, got " +
                         std::to_string(got));
}

}  // namespace

EccParams make_ecc_params(std::size_t message_bits, Rational rate) {
  if (message_bits == 0 || message_bits % 8 != 0)
    throw ParameterError("ecc: message_bits must be a positive multiple of 8");
  if (rate.num <= 0 || rate.num >= rate.den) throw ParameterError("ecc: rate must lie in (0,1)");
  EccParams p;
  p.rate = rate;
  p.message_bits = message_bits;
  p.inner = 2 * rate.num < rate.den;
  // RS rate = R / (inner rate).
  const Rational rs_rate = p.inner ? rate * Rational(2, 1) : rate;
  for (unsigned s : {8u, 16u}) {
    if (message_bits % s != 0) continue;
    const std::size_t k = message_bits / s;
    if ((static_cast<std::int64_t>(k) * rs_rate.den) % rs_rate.num != 0) continue;
    const std::size_t n = static_cast<std::size_t>(static_cast<std::int64_t>(k) * rs_rate.den / rs_rate.num);
    if (n > (std::size_t{1} << s)) continue;
    p.symbol_bits = s;
    p.rs_k = k;
    p.rs_n = n;
    break;
  }
  if (p.rs_n == 0)
    throw ParameterError("ecc: no RS instantiation for message_bits=" + std::to_string(message_bits) +
                         " at rate " + rate.str());
  if (p.rs_n == p.rs_k) throw ParameterError("ecc: rate leaves no redundancy");
  p.block_bits = p.rs_n * p.symbol_bits * (p.inner ? 2 : 1);
  const std::size_t e = (p.rs_n - p.rs_k) / 2;
  // A wrong RS symbol costs at least t_in + 1 bit errors (t_in = 2 for the
  // [16,8,5] code, 0 without it); e + 1 wrong symbols are needed to fool RS.
  const std::size_t per_symbol = p.inner ? (inner::min_distance() - 1) / 2 + 1 : 1;
  p.radius_bits = (e + 1) * per_symbol - 1;
  p.decode_radius = static_cast<double>(p.radius_bits) / static_cast<double>(p.block_bits);
  return p;
}

BitString ecc_encode(const EccParams& p, const BitString& m) {
  check_len("ecc_encode", m.size(), p.message_bits);
  const auto& rs = codec(p);
  const unsigned s = p.symbol_bits;
  std::vector<Elem> sym(p.rs_n);
  for (std::size_t i = 0; i < p.rs_k; ++i) sym[i] = static_cast<Elem>(m.get_bits(i * s, s));
  rs.parity(sym.data(), sym.data() + p.rs_k);
  BitString out(p.block_bits);
  for (std::size_t i = 0; i < p.rs_n; ++i) {
    out.set_bits(data_pos(p, i), s, sym[i]);
    if (p.inner) {
      std::uint64_t par = 0;
      for (unsigned b = 0; b < s / 8; ++b)
        par |= std::uint64_t{inner::parity(static_cast<std::uint8_t>(sym[i] >> (8 * b)))} << (8 * b);
      out.set_bits(parity_pos(p, i), s, par);
    }
  }
  return out;
}

std::optional<BitString> ecc_decode(const EccParams& p, const BitString& w) {
  check_len("ecc_decode", w.size(), p.block_bits);
  const auto& rs = codec(p);
  const unsigned s = p.symbol_bits;
  std::vector<Elem> recv(p.rs_n);
  for (std::size_t i = 0; i < p.rs_n; ++i) {
    const std::uint64_t data = w.get_bits(data_pos(p, i), s);
    if (!p.inner) {
      recv[i] = static_cast<Elem>(data);
      continue;
    }
    const std::uint64_t par = w.get_bits(parity_pos(p, i), s);
    Elem v = 0;
    for (unsigned b = 0; b < s / 8; ++b) {
      const auto word = static_cast<std::uint16_t>(((data >> (8 * b)) & 0xFF) | ((par >> (8 * b)) & 0xFF) << 8);
      v |= static_cast<Elem>(inner::decode(word) << (8 * b));
    }
    recv[i] = v;
  }
  std::vector<Elem> msg;
  if (!rs.decode(recv, msg)) return std::nullopt;
  BitString out(p.message_bits);
  for (std::size_t i = 0; i < p.rs_k; ++i) out.set_bits(i * s, s, msg[i]);
  return out;
}

std::optional<BitString> reencode(const EccParams& p, const BitString& w) {
  auto m = ecc_decode(p, w);
  if (!m) return std::nullopt;
  return ecc_encode(p, *m);
}

std::vector<std::size_t> beyond_radius_pattern(const EccParams& p, std::mt19937_64& rng) {
  const std::size_t e = (p.rs_n - p.rs_k) / 2;
  std::vector<std::size_t> syms(p.rs_n);
  for (std::size_t i = 0; i < p.rs_n; ++i) syms[i] = i;
  std::shuffle(syms.begin(), syms.end(), rng);
  syms.resize(e + 1);
  std::vector<std::size_t> out;
  const std::uint16_t z = inner::min_weight_codeword();
  std::vector<unsigned> support;
  for (unsigned b = 0; b < 16; ++b)
    if (z >> b & 1u) support.push_back(b);
  const unsigned need = (inner::min_distance() - 1) / 2 + 1;
  for (std::size_t sym : syms) {
    if (!p.inner) {
      out.push_back(data_pos(p, sym) + rng() % p.symbol_bits);
      continue;
    }
    // Move one inner byte word to within t_in of a neighbouring codeword.
    const unsigned byte = static_cast<unsigned>(rng() % (p.symbol_bits / 8));
    std::shuffle(support.begin(), support.end(), rng);
    for (unsigned j = 0; j < need; ++j) {
      const unsigned bit = support[j];
      out.push_back(bit < 8 ? data_pos(p, sym) + 8 * byte + bit : parity_pos(p, sym) + 8 * byte + (bit - 8));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::size_t exhaustive_min_distance(const EccParams& p) {
  if (p.message_bits > 16) throw ParameterError("exhaustive_min_distance: message too long");
  std::size_t best = p.block_bits;
  for (std::uint64_t v = 1; v < (std::uint64_t{1} << p.message_bits); ++v) {
    BitString m(p.message_bits);
    m.set_bits(0, static_cast<unsigned>(p.message_bits), v);
    best = std::min(best, ecc_encode(p, m).popcount());
  }
  return best;
}

}  // namespace crlcc
