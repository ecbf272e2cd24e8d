#include <doctest.h>

#ifdef CRLCC_CLI_PATH

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>
#include <unistd.h>

namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run cli(const std::string& args) {
  const std::string cmd = std::string(CRLCC_CLI_PATH) + " " + args + " 2>&1";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[512];
  while (std::fgets(buf, sizeof buf, pipe)) r.out += buf;
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

fs::path scratch() {
  const auto d = fs::temp_directory_path() / ("crlcc_cli_" + std::to_string(::getpid()));
  fs::create_directories(d);
  return d;
}

void write_file(const fs::path& p, const std::string& s) {
  std::ofstream f(p, std::ios::binary);
  f << s;
}

}  // namespace

TEST_CASE("cli weak round trip") {
  const auto d = scratch();
  write_file(d / "msg", "hello relaxed decoding");
  auto r = cli("encode --mode weak --in " + (d / "msg").string() + " --out " + (d / "c.bin").string() +
               " --seed 3");
  REQUIRE_MESSAGE(r.code == 0, r.out);
  r = cli("corrupt --in " + (d / "c.bin").string() + " --out " + (d / "w.bin").string() +
          " --attack random_flip --budget-frac 0.001 --attack-seed 4");
  REQUIRE_MESSAGE(r.code == 0, r.out);
  CHECK(fs::exists(d / "w.bin.mask"));
  // 'h' is 0x68; its fourth bit, LSB first, is 1.
  r = cli("query --in " + (d / "w.bin").string() + " --index 4 --message-bit --rng 1");
  REQUIRE_MESSAGE(r.code == 0, r.out);
  CHECK(r.out.find("verdict: 1") != std::string::npos);
  CHECK(r.out.find("queries:") != std::string::npos);
  fs::remove_all(d);
}

TEST_CASE("cli strong encode and query") {
  const auto d = scratch();
  write_file(d / "msg", std::string(100, '\xff'));
  auto r = cli("encode --mode strong --t 4 --in " + (d / "msg").string() + " --out " + (d / "c.bin").string());
  REQUIRE_MESSAGE(r.code == 0, r.out);
  r = cli("query --in " + (d / "c.bin").string() + " --index 9 --message-bit");
  REQUIRE_MESSAGE(r.code == 0, r.out);
  CHECK(r.out.find("verdict: 1") != std::string::npos);
  fs::remove_all(d);
}

TEST_CASE("cli exit codes") {
  const auto d = scratch();
  write_file(d / "msg", "x");
  CHECK(cli("frobnicate").code == 2);
  CHECK(cli("query --index 1").code == 2);
  REQUIRE(cli("encode --mode weak --in " + (d / "msg").string() + " --out " + (d / "c.bin").string()).code == 0);
  // Over the analysed budget without --out-of-theorem.
  CHECK(cli("corrupt --in " + (d / "c.bin").string() + " --out " + (d / "w.bin").string() +
            " --attack random_flip --budget-frac 0.5")
            .code == 4);
  CHECK(cli("corrupt --in " + (d / "c.bin").string() + " --out " + (d / "w.bin").string() +
            " --attack random_flip --budget-frac 0.5 --out-of-theorem")
            .code == 0);
  // Truncated codeword.
  const auto size = fs::file_size(d / "c.bin");
  fs::resize_file(d / "c.bin", size - 3);
  CHECK(cli("query --in " + (d / "c.bin").string() + " --index 1").code == 3);
  fs::remove_all(d);
}

TEST_CASE("cli verify-graph") {
  const auto r = cli("verify-graph --n 32 --delta 0.25 --max-r 8");
  CHECK_MESSAGE(r.code == 0, r.out);
}

TEST_CASE("cli sweep") {
  const auto d = scratch();
  write_file(d / "cfg.ini",
             "[code]\nmode = weak\nk_prime = 8\n\n[run]\nseed = 2\ntrials = 10\nattacks = none, random_flip\n");
  const auto r = cli("sweep --config " + (d / "cfg.ini").string());
  REQUIRE_MESSAGE(r.code == 0, r.out);
  CHECK(r.out.find("random_flip") != std::string::npos);
  CHECK(r.out.find("fool_ub95") != std::string::npos);
  fs::remove_all(d);
}

#endif  // CRLCC_CLI_PATH
