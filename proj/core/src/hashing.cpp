#include "crlcc/hashing.hpp"

#include <openssl/evp.h>
#include <openssl/rand.h>

#include <array>
#include <memory>
#include <string>

#include "crlcc/error.hpp"

namespace crlcc {
namespace {

std::size_t seed_bytes_for(unsigned lambda) {
  if (lambda != 128 && lambda != 256) throw ParameterError("gen: lambda must be 128 or 256");
  return lambda / 8;
}

struct MdCtxDeleter {
  void operator()(EVP_MD_CTX* c) const { EVP_MD_CTX_free(c); }
};
using MdCtx = std::unique_ptr<EVP_MD_CTX, MdCtxDeleter>;

class Sha256 {
 public:
  Sha256() : ctx_(EVP_MD_CTX_new()) {
    if (!ctx_ || EVP_DigestInit_ex(ctx_.get(), EVP_sha256(), nullptr) != 1)
      throw std::runtime_error("SHA-256 init failed");
  }
  void update(const void* p, std::size_t n) { EVP_DigestUpdate(ctx_.get(), p, n); }
  std::array<std::uint8_t, 32> finish() {
    std::array<std::uint8_t, 32> out{};
    unsigned len = 0;
    EVP_DigestFinal_ex(ctx_.get(), out.data(), &len);
    return out;
  }

 private:
  MdCtx ctx_;
};

void check_ell(unsigned ell) {
  if (ell == 0 || ell % 8 != 0) throw ParameterError("hash: ell must be a positive multiple of 8");
}

template <class Feed>
Label digest(const HashSeed& s, std::uint8_t tag, unsigned ell, Feed&& feed) {
  check_ell(ell);
  std::vector<std::uint8_t> out;
  out.reserve(ell / 8 + 32);
  const bool counter = ell > 256;
  for (std::uint32_t ctr = 0; out.size() * 8 < ell; ++ctr) {
    Sha256 h;
    h.update(s.bytes.data(), s.bytes.size());
    h.update(&tag, 1);
    if (counter) {
      const std::uint8_t be[4] = {static_cast<std::uint8_t>(ctr >> 24), static_cast<std::uint8_t>(ctr >> 16),
                                  static_cast<std::uint8_t>(ctr >> 8), static_cast<std::uint8_t>(ctr)};
      h.update(be, 4);
    }
    feed(h);
    const auto d = h.finish();
    out.insert(out.end(), d.begin(), d.end());
  }
  return BitString::from_bytes(out, ell);
}

}  // namespace

HashSeed gen(unsigned lambda) {
  HashSeed s;
  s.lambda = lambda;
  s.bytes.resize(seed_bytes_for(lambda));
  if (RAND_bytes(s.bytes.data(), static_cast<int>(s.bytes.size())) != 1)
    throw std::runtime_error("gen: RAND_bytes failed");
  return s;
}

HashSeed gen(unsigned lambda, std::uint64_t rng_seed) {
  HashSeed s;
  s.lambda = lambda;
  const std::size_t nbytes = seed_bytes_for(lambda);
  Sha256 h;
  const char label[] = "crlcc-gen-test";
  h.update(label, sizeof(label) - 1);
  std::uint8_t le[8];
  for (int i = 0; i < 8; ++i) le[i] = static_cast<std::uint8_t>(rng_seed >> (8 * i));
  h.update(le, 8);
  const auto d = h.finish();
  s.bytes.assign(d.begin(), d.begin() + static_cast<long>(nbytes));
  return s;
}

Label hash(const HashSeed& s, std::span<const std::uint8_t> data, unsigned ell, std::uint8_t tag) {
  return digest(s, tag, ell, [&](Sha256& h) { h.update(data.data(), data.size()); });
}

Label node_label(const HashSeed& s, const BitString& x_v, std::span<const Label* const> parent_labels,
                 unsigned ell) {
  if (x_v.size() % 8 != 0) throw ParameterError("node_label: chunk must be byte-aligned");
  std::vector<std::uint8_t> buf;
  std::size_t total = x_v.size() / 8;
  for (const Label* l : parent_labels) total += l->size() / 8;
  buf.reserve(total);
  x_v.append_bytes_to(buf);
  for (const Label* l : parent_labels) {
    if (l->size() % 8 != 0) throw ParameterError("node_label: label must be byte-aligned");
    l->append_bytes_to(buf);
  }
  return hash(s, buf, ell, kTagLabel);
}

std::vector<Label> label_graph(const Dag& g, const HashSeed& s, const std::vector<BitString>& x,
                               std::size_t chunk_bits, unsigned ell) {
  const std::size_t n = g.node_count();
  if (x.size() != n)
    throw ParameterError("label_graph: expected " + std::to_string(n) + " chunks, got " + std::to_string(x.size()));
  for (const auto& c : x)
    if (c.size() != chunk_bits) throw ParameterError("label_graph: chunk length mismatch");
  std::vector<Label> labels(n);
  std::vector<const Label*> ps;
  for (Node v = 1; v <= n; ++v) {
    ps.clear();
    for (Node u : g.parents(v)) ps.push_back(&labels[u - 1]);
    labels[v - 1] = node_label(s, x[v - 1], ps, ell);
  }
  return labels;
}

}  // namespace crlcc
