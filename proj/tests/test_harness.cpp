#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

#include "pud/io.hpp"

namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
};

Result cli(const std::string& args) {
  const char* exe = std::getenv("PUD_CLI");
  REQUIRE(exe != nullptr);
  std::string cmd = std::string(exe) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  std::array<char, 4096> buf;
  while (std::size_t n = fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

fs::path scratch(const std::string& name) {
  auto dir = fs::temp_directory_path() / ("pud_harness_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  return dir / name;
}

std::int64_t sidecar_l1(const fs::path& prefix) {
  std::ifstream in(prefix.string() + ".pred");
  std::string line;
  while (std::getline(in, line))
    if (line.rfind("# l1_error=", 0) == 0) return std::stoll(line.substr(11));
  FAIL("no l1 sidecar in " << prefix);
  return -1;
}

std::string days_only(const std::string& out) {
  std::istringstream in(out);
  std::string line, kept;
  while (std::getline(in, line))
    if (!line.empty() && line[0] != '#') kept += line + '\n';
  return kept;
}

}  // namespace

TEST_CASE("generate, verify and run round trip") {
  auto p = scratch("conn");
  auto g = cli("generate --problem connectivity --model uniform-offset --sigma 8 --T 128 --n 12 --seed 3 --out " +
               p.string());
  REQUIRE(g.code == 0);
  for (auto ext : {".stream", ".pred", ".bundles", ".deletions", ".insertions"})
    CHECK(fs::exists(p.string() + ext));
  for (auto mode : {"predicted", "offline", "backstopped", "boosted", "predicted-deletion"}) {
    auto v = cli(std::string("verify --problem connectivity --mode ") + mode + " --in " + p.string());
    CHECK_MESSAGE(v.code == 0, mode << ": " << v.out);
    CHECK(days_only(v.out).rfind("PASS", 0) == 0);
  }
  auto r = cli("run --problem connectivity --in " + p.string());
  REQUIRE(r.code == 0);
  CHECK(r.out.find("# total_units=") != std::string::npos);
  CHECK(r.out.find("# depth=") != std::string::npos);
  CHECK(days_only(r.out).rfind("1 ", 0) == 0);
}

TEST_CASE("sidecar error matches the generator's model") {
  auto exact = scratch("exact");
  REQUIRE(cli("generate --problem counter --model exact --T 200 --n 10 --out " + exact.string()).code == 0);
  CHECK(sidecar_l1(exact) == 0);

  auto uni = scratch("uniform");
  REQUIRE(cli("generate --problem counter --model uniform-offset --sigma 4 --T 1024 --n 32 --seed 7 --out " +
              uni.string()).code == 0);
  const auto l1 = sidecar_l1(uni);
  CHECK(l1 >= 0.85 * 2048);
  CHECK(l1 <= 1.15 * 2048);

  auto adv = scratch("uneven");
  REQUIRE(cli("generate --problem counter --model adversarial-uneven --T 1024 --out " + adv.string()).code == 0);
  CHECK(sidecar_l1(adv) == 1024);

  // The sidecar agrees with recomputing from the files.
  std::ifstream s(uni.string() + ".stream"), q(uni.string() + ".pred");
  auto stream = pud::read_stream(s);
  auto preds = pud::read_predictions(q);
  CHECK(pud::l1_error(preds, stream, 1024) == l1);
}

TEST_CASE("offline and predicted runs print the same days") {
  auto p = scratch("msf");
  REQUIRE(cli("generate --problem msf --model drop --rho 0.2 --T 96 --n 8 --seed 2 --out " + p.string()).code == 0);
  auto a = cli("run --problem msf --mode offline --in " + p.string());
  auto b = cli("run --problem msf --mode predicted --in " + p.string());
  REQUIRE(a.code == 0);
  REQUIRE(b.code == 0);
  CHECK(days_only(a.out) == days_only(b.out));
}

TEST_CASE("bench writes its CSV") {
  auto csv = scratch("bench.csv");
  auto r = cli("bench --problem counter --T 64 --seeds 2 --sweep 1,2 --out " + csv.string());
  REQUIRE(r.code == 0);
  std::ifstream in(csv);
  std::string header, row;
  std::getline(in, header);
  CHECK(header == "model,T,l1_error,preprocess_units,retrigger_units,total_units,reschedules,depth");
  int rows = 0;
  while (std::getline(in, row)) ++rows;
  CHECK(rows == 2 * 4);
}

TEST_CASE("bad input exits with status 2") {
  CHECK(cli("run --in " + scratch("missing").string()).code == 2);
  auto bad = scratch("bad");
  std::ofstream(bad.string() + ".stream") << "# T=4\n1 1 X\n";
  std::ofstream(bad.string() + ".pred") << "";
  auto r = cli("run --in " + bad.string());
  CHECK(r.code == 2);
  CHECK(r.out.find("line") != std::string::npos);
  CHECK(cli("generate --problem nonsense --out " + bad.string()).code == 2);
}
