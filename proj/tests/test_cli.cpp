// Runs the shapeforge executable and checks exit codes and output.

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"

namespace fs = std::filesystem;

namespace {

struct Result {
  int code = -1;
  std::string out;
};

Result run(const std::string& args) {
  const std::string cmd = std::string(SHAPEFORGE_CLI) + " " + args + " 2>/dev/null";
  Result r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  while (std::fgets(buf, sizeof buf, pipe)) r.out += buf;
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("shapeforge-cli-test-" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

std::size_t occurrences(const std::string& text, const std::string& needle) {
  std::size_t n = 0;
  for (auto at = text.find(needle); at != std::string::npos; at = text.find(needle, at + 1)) ++n;
  return n;
}

}  // namespace

TEST_CASE("poly") {
  auto r = run("poly -N 3 -d 3 --fermion");
  CHECK(r.code == 0);
  CHECK(r.out == "3q^2 + 10q^3 + 6q^4 + 6q^5 + 7q^6 + 3q^7 + q^9\n[0,0,3,10,6,6,7,3,0,1]\n");
  r = run("poly -N 3 -d 3 --boson");
  CHECK(r.out == "1 + 3q^2 + 7q^3 + 6q^4 + 6q^5 + 10q^6 + 3q^7\n[1,0,3,7,6,6,10,3]\n");
  CHECK(run("poly -N 0 -d 4").out.rfind("1\n", 0) == 0);
  CHECK(run("poly -N 2 -d 2 --fermion").out.rfind("2q\n", 0) == 0);
  CHECK(run("poly -N 3").code == 2);
  CHECK(run("poly -N -1 -d 3").code == 2);
  CHECK(run("poly -N 3 -d 3 --fermion --boson").code == 2);
  CHECK(run("frobnicate").code == 2);
}

TEST_CASE("count") {
  auto r = run("count -N 3 -d 3 -g 9 --oracle");
  CHECK(r.code == 0);
  CHECK(r.out.find("9 3838 3838\n") != std::string::npos);
  CHECK(run("count -N 1 -d 1 -g 3").out == "0 1\n1 1\n2 1\n3 1\n");
  CHECK(run("count -N 2 -d 1 -g 3").out == "0 0\n1 1\n2 1\n3 2\n");
  CHECK(run("count -N 2 -d 0 -g 3").code == 2);
  CHECK(run("count -N 2 -d 1").code == 2);
}

TEST_CASE("gen and verify") {
  for (int n = 1; n <= 3; ++n) {
    CAPTURE(n);
    const auto dir = scratch("gen" + std::to_string(n));
    auto r = run("gen -N " + std::to_string(n) + " -d 3 -o " + dir.string());
    CHECK(r.code == 0);
    const auto dot = slurp(dir / "tree.dot");
    const std::size_t nodes = n == 1 ? 1 : n == 2 ? 4 : 36;
    CHECK(occurrences(dot, "@") == nodes);
    CHECK(occurrences(dot, "->") - occurrences(dot, "dashed") == nodes - 1);
    CHECK(fs::exists(dir / "report.txt"));
    CHECK(run("verify " + (dir / "shapes.json").string()).code == 0);
  }
  CHECK(run("gen -N 3 -d 2 -o " + scratch("even").string()).code == 2);
}

TEST_CASE("verify catches corruption") {
  const auto dir = scratch("corrupt");
  REQUIRE(run("gen -N 3 -d 3 -o " + dir.string()).code == 0);
  const auto original = nlohmann::json::parse(slurp(dir / "shapes.json"));

  auto perturbed = original;
  auto& coef = perturbed["shapes"][12]["poly"][0]["coef"];
  coef = std::to_string(std::stol(coef.get<std::string>()) + 1);
  std::ofstream(dir / "perturbed.json") << perturbed.dump();
  CHECK(run("verify " + (dir / "perturbed.json").string()).code == 5);

  auto empty = original;
  empty["shapes"] = nlohmann::json::array();
  empty["tree"]["edges"] = nlohmann::json::array();
  empty["tree"]["extra_edges"] = nlohmann::json::array();
  std::ofstream(dir / "empty.json") << empty.dump();
  CHECK(run("verify " + (dir / "empty.json").string()).code == 5);

  std::ofstream(dir / "garbage.json") << "{ not json";
  CHECK(run("verify " + (dir / "garbage.json").string()).code == 5);
  CHECK(run("verify " + (dir / "missing.json").string()).code == 2);
}

TEST_CASE("thread override from the environment gives identical output") {
  const auto a = scratch("threads1");
  const auto b = scratch("threads3");
  REQUIRE(run("gen -N 3 -d 3 -o " + a.string()).code == 0);
  REQUIRE(run("gen -N 3 -d 3 -j 1 -o " + b.string()).code == 0);
  const std::string env_cmd = "sh -c 'SHAPE_FORGE_THREADS=3 " + std::string(SHAPEFORGE_CLI) +
                              " gen -N 3 -d 3 -o " + b.string() + "' >/dev/null 2>&1";
  REQUIRE(std::system(env_cmd.c_str()) == 0);
  CHECK(slurp(a / "shapes.json") == slurp(b / "shapes.json"));
  CHECK(slurp(a / "tree.dot") == slurp(b / "tree.dot"));
}
