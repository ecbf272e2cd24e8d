#include "crlcc/io.hpp"

#include <array>
#include <bit>
#include <cstring>
#include <istream>
#include <ostream>

#include "crlcc/error.hpp"

namespace crlcc {
namespace {

constexpr char kMagicDag[4] = {'C', 'D', 'A', 'G'};
constexpr char kMagicWeak[4] = {'C', 'R', 'W', '1'};
constexpr char kMagicStrong[4] = {'C', 'R', 'S', '1'};
constexpr std::size_t kSeedField = 32;

template <class T>
void put(std::ostream& out, T v) {
  std::uint64_t raw;
  if constexpr (std::is_same_v<T, double>) {
    raw = std::bit_cast<std::uint64_t>(v);
  } else {
    raw = static_cast<std::uint64_t>(v);
  }
  char buf[sizeof(T)];
  for (std::size_t i = 0; i < sizeof(T); ++i) buf[i] = static_cast<char>(raw >> (8 * i));
  out.write(buf, sizeof(T));
}

template <class T>
T get(std::istream& in, const char* what) {
  unsigned char buf[sizeof(T)];
  if (!in.read(reinterpret_cast<char*>(buf), sizeof(T)))
    throw FormatError(std::string("truncated file while reading ") + what);
  std::uint64_t raw = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i) raw |= std::uint64_t{buf[i]} << (8 * i);
  if constexpr (std::is_same_v<T, double>) {
    return std::bit_cast<double>(raw);
  } else {
    return static_cast<T>(raw);
  }
}

void expect_magic(std::istream& in, const char (&magic)[4]) {
  char got[4];
  if (!in.read(got, 4) || std::memcmp(got, magic, 4) != 0)
    throw FormatError(std::string("bad magic, expected ") + std::string(magic, 4));
  const auto ver = get<std::uint32_t>(in, "version");
  if (ver != kFormatVersion) throw FormatError("unsupported format version " + std::to_string(ver));
}

void put_seed(std::ostream& out, const HashSeed& s) {
  std::array<char, kSeedField> buf{};
  if (s.bytes.size() > kSeedField) throw ParameterError("hash seed longer than 32 bytes");
  std::memcpy(buf.data(), s.bytes.data(), s.bytes.size());
  out.write(buf.data(), kSeedField);
}

HashSeed get_seed(std::istream& in, unsigned ell) {
  std::array<unsigned char, kSeedField> buf{};
  if (!in.read(reinterpret_cast<char*>(buf.data()), kSeedField)) throw FormatError("truncated hash seed");
  HashSeed s;
  s.lambda = lambda_for_ell(ell);
  s.bytes.assign(buf.begin(), buf.begin() + s.lambda / 8);
  for (std::size_t i = s.lambda / 8; i < kSeedField; ++i)
    if (buf[i] != 0) throw FormatError("hash seed padding is not zero");
  return s;
}

void put_bits(std::ostream& out, const BitString& w) {
  const auto bytes = w.to_bytes();
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
}

BitString get_bits(std::istream& in, std::size_t nbits) {
  std::vector<std::uint8_t> bytes((nbits + 7) / 8);
  if (!in.read(reinterpret_cast<char*>(bytes.data()), static_cast<std::streamsize>(bytes.size())))
    throw FormatError("truncated codeword: expected " + std::to_string(nbits) + " bits");
  if (in.peek() != std::char_traits<char>::eof()) throw FormatError("trailing bytes after codeword");
  return BitString::from_bytes(bytes, nbits);
}

template <class F>
auto rethrow_as_format(F&& f) {
  try {
    return f();
  } catch (const ParameterError& e) {
    throw FormatError(std::string("inconsistent header: ") + e.what());
  }
}

}  // namespace

unsigned lambda_for_ell(unsigned ell) { return ell <= 128 ? 128 : 256; }

FileKind peek_kind(std::istream& in) {
  char got[4] = {};
  const auto pos = in.tellg();
  in.read(got, 4);
  const bool ok = static_cast<bool>(in);
  in.clear();
  in.seekg(pos);
  if (!ok) return FileKind::Unknown;
  if (std::memcmp(got, kMagicDag, 4) == 0) return FileKind::Dag;
  if (std::memcmp(got, kMagicWeak, 4) == 0) return FileKind::Weak;
  if (std::memcmp(got, kMagicStrong, 4) == 0) return FileKind::Strong;
  return FileKind::Unknown;
}

void write_dag(std::ostream& out, const LocalExpanderDag& g) {
  out.write(kMagicDag, 4);
  put<std::uint32_t>(out, kFormatVersion);
  put<std::uint64_t>(out, g.node_count);
  put<double>(out, g.delta);
  put<std::uint32_t>(out, g.overlay_degree);
  put<std::uint64_t>(out, g.rng_seed);
  const auto edges = g.dag.edges();
  put<std::uint64_t>(out, edges.size());
  for (auto [u, v] : edges) {
    put<std::uint64_t>(out, u);
    put<std::uint64_t>(out, v);
  }
}

LocalExpanderDag read_dag(std::istream& in) {
  expect_magic(in, kMagicDag);
  LocalExpanderDag g;
  g.node_count = get<std::uint64_t>(in, "n");
  g.delta = get<double>(in, "delta");
  g.overlay_degree = get<std::uint32_t>(in, "degree");
  g.rng_seed = get<std::uint64_t>(in, "seed");
  if (g.node_count < 1 || g.node_count > 0xFFFFFFFFull) throw FormatError("node count out of range");
  const auto m = get<std::uint64_t>(in, "edge count");
  g.dag = Dag(g.node_count);
  for (std::uint64_t e = 0; e < m; ++e) {
    const auto u = get<std::uint64_t>(in, "edge");
    const auto v = get<std::uint64_t>(in, "edge");
    if (u < 1 || u >= v || v > g.node_count) throw FormatError("edge out of range");
    g.dag.add_edge(static_cast<Node>(u), static_cast<Node>(v));
  }
  g.dag.finalize();
  return g;
}

void write_weak(std::ostream& out, const WeakCodeParams& p, const BitString& word) {
  if (word.size() != p.n) throw ParameterError("write_weak: word length mismatch");
  out.write(kMagicWeak, 4);
  put<std::uint32_t>(out, kFormatVersion);
  put<std::uint64_t>(out, p.k);
  put<std::uint32_t>(out, p.ell);
  put<double>(out, p.delta);
  put<double>(out, p.alpha);
  put<std::uint64_t>(out, p.graph_seed);
  put_seed(out, p.seed);
  put_bits(out, word);
}

WeakFile read_weak(std::istream& in) {
  expect_magic(in, kMagicWeak);
  const auto k = get<std::uint64_t>(in, "k");
  const auto ell = get<std::uint32_t>(in, "ell");
  WeakOptions opt;
  opt.delta = get<double>(in, "delta");
  opt.alpha = get<double>(in, "alpha");
  const auto graph_seed = get<std::uint64_t>(in, "graph seed");
  HashSeed seed = get_seed(in, ell);
  WeakFile f;
  f.params = rethrow_as_format([&] { return make_weak_params(k, ell, seed, graph_seed, opt); });
  f.word = get_bits(in, f.params.n);
  return f;
}

void write_strong(std::ostream& out, const StrongCodeParams& p, const BitString& word) {
  if (word.size() != p.n) throw ParameterError("write_strong: word length mismatch");
  out.write(kMagicStrong, 4);
  put<std::uint32_t>(out, kFormatVersion);
  put<std::uint64_t>(out, p.k);
  put<std::uint32_t>(out, p.ell);
  put<std::uint32_t>(out, static_cast<std::uint32_t>(p.m));
  put<std::uint64_t>(out, p.t);
  put<double>(out, p.delta);
  put<double>(out, p.alpha);
  put<double>(out, static_cast<double>(p.beta));
  put<double>(out, p.rate.value());
  put<std::uint32_t>(out, p.kappa);
  put<std::uint64_t>(out, p.graph_seed);
  put_seed(out, p.seed);
  put_bits(out, word);
}

StrongFile read_strong(std::istream& in) {
  expect_magic(in, kMagicStrong);
  const auto k = get<std::uint64_t>(in, "k");
  const auto ell = get<std::uint32_t>(in, "ell");
  const auto m = get<std::uint32_t>(in, "m");
  const auto t = get<std::uint64_t>(in, "t");
  StrongOptions opt;
  opt.delta = get<double>(in, "delta");
  opt.alpha = get<double>(in, "alpha");
  const double beta = get<double>(in, "beta");
  const double rate = get<double>(in, "R");
  opt.kappa = get<std::uint32_t>(in, "kappa");
  const auto graph_seed = get<std::uint64_t>(in, "graph seed");
  HashSeed seed = get_seed(in, ell);
  if (!(beta >= 1.0 && beta == static_cast<double>(static_cast<unsigned>(beta))))
    throw FormatError("beta must be a positive integer");
  opt.beta = static_cast<unsigned>(beta);
  StrongFile f;
  f.params = rethrow_as_format([&] {
    opt.rate = rational_from_double(rate);
    return make_strong_params(t, ell, seed, graph_seed, opt);
  });
  if (f.params.m != m || f.params.k != k) throw FormatError("header m/k disagree with the rebuilt meta-graph");
  f.word = get_bits(in, f.params.n);
  return f;
}

void write_mask(std::ostream& out, const std::vector<std::size_t>& mask) {
  put<std::uint64_t>(out, mask.size());
  for (std::size_t pos : mask) put<std::uint64_t>(out, pos);
}

std::vector<std::size_t> read_mask(std::istream& in) {
  const auto count = get<std::uint64_t>(in, "mask count");
  std::vector<std::size_t> mask;
  mask.reserve(static_cast<std::size_t>(std::min<std::uint64_t>(count, 1u << 20)));
  for (std::uint64_t j = 0; j < count; ++j) {
    mask.push_back(static_cast<std::size_t>(get<std::uint64_t>(in, "mask entry")));
    if (j && mask[j] <= mask[j - 1]) throw FormatError("mask positions must be strictly increasing");
  }
  return mask;
}

}  // namespace crlcc
