#include <doctest.h>

#include <crlcc/error.hpp>
#include <crlcc/hashing.hpp>

#include <cstdio>
#include <string>

using namespace crlcc;

namespace {

std::string hex(const BitString& b) {
  std::string s;
  char buf[3];
  for (auto byte : b.to_bytes()) {
    std::snprintf(buf, sizeof buf, "%02x", byte);
    s += buf;
  }
  return s;
}

HashSeed counting_seed() {
  HashSeed s;
  s.lambda = 128;
  for (int i = 0; i < 16; ++i) s.bytes.push_back(static_cast<std::uint8_t>(i));
  return s;
}

}  // namespace

// Expected digests below were produced with Python's hashlib.
TEST_CASE("hash truncates SHA-256(seed || tag || data)") {
  const std::uint8_t abc[] = {'a', 'b', 'c'};
  CHECK(hex(hash(counting_seed(), abc, 128)) == "ab6b78ff256ee1e741a989562b16ecab");
}

TEST_CASE("hash switches to counter mode above 256 bits") {
  const std::uint8_t abc[] = {'a', 'b', 'c'};
  CHECK(hex(hash(counting_seed(), abc, 512)) ==
        "cdb52f7c185d30f88d6f52790dcd9df5b51fedc68049558dd40dc56f0fa192d4"
        "7e5c43fd704ca5db3be6ec8c35665bf8bc12b0aadda4ea46e958051354c23b24");
}

TEST_CASE("deterministic gen") {
  const HashSeed s = gen(128, 42);
  CHECK(s.lambda == 128);
  CHECK(hex(BitString::from_bytes(s.bytes, 128)) == "b1f770c9214357a9b798134d872c4aee");
  CHECK(gen(256, 42).bytes.size() == 32);
  CHECK(gen(128, 43).bytes != s.bytes);
  CHECK(gen(128).bytes != gen(128).bytes);
  CHECK_THROWS_AS(gen(64), ParameterError);
}

TEST_CASE("label_graph on a path chains parent labels") {
  Dag g(3);
  g.add_edge(1, 2);
  g.add_edge(2, 3);
  g.finalize();
  std::vector<BitString> x;
  for (std::uint8_t v = 1; v <= 3; ++v) {
    std::vector<std::uint8_t> bytes(16, v);
    x.push_back(BitString::from_bytes(bytes, 128));
  }
  const auto labels = label_graph(g, counting_seed(), x, 128, 128);
  REQUIRE(labels.size() == 3);
  CHECK(hex(labels[0]) == "a3231b7b49cfe76a7e675aa8011f73c6");
  CHECK(hex(labels[1]) == "fa01d32e6d0cc4d510733f7fd3ffd894");
  CHECK(hex(labels[2]) == "a12bf5d9035f8582c4dabf703bcd03a3");
}

TEST_CASE("node_label rejects unaligned input and depends on parent order") {
  const HashSeed s = gen(128, 1);
  BitString x(12);
  CHECK_THROWS_AS(node_label(s, x, {}, 128), ParameterError);
  std::mt19937_64 rng(1);
  const BitString a = BitString::random(128, rng), b = BitString::random(128, rng), v = BitString::random(128, rng);
  const Label* ab[] = {&a, &b};
  const Label* ba[] = {&b, &a};
  CHECK_FALSE(node_label(s, v, ab, 128) == node_label(s, v, ba, 128));
  CHECK(node_label(s, v, ab, 128).size() == 128);
}
