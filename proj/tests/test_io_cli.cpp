#include "orbikit/fib_solver.hpp"
#include "orbikit/io.hpp"

#include <catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sys/wait.h>
#include <unistd.h>

using namespace orbikit;
namespace fs = std::filesystem;

namespace {

struct RunResult {
  int status = -1;
  std::string out;
};

RunResult run(const std::string& args) {
  const std::string cmd = std::string(ORBIKIT_CLI_PATH) + " " + args + " 2>/dev/null";
  RunResult r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  const int st = pclose(p);
  r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("orbikit-test-" + std::to_string(::getpid()));
  fs::create_directories(dir);
  return dir / name;
}

void write_file(const fs::path& p, const json& j) { std::ofstream(p) << j.dump(2); }

}  // namespace

TEST_CASE("datum files round trip through disk", "[io]") {
  const OrbifoldDatum d = build_fib_datum(FibParams{19, -1});
  const fs::path p = scratch("flagship.json");
  write_file(p, to_json(d));
  const OrbifoldDatum back = datum_from_json(read_json_file(p.string()));
  CHECK(to_json(back).dump() == to_json(d).dump());
  CHECK(back.category().descriptor() == "ising:6:-1");
  CHECK_THROWS(read_json_file((p.parent_path() / "missing.json").string()));
}

TEST_CASE("cli report", "[cli]") {
  const RunResult r = run("report --n 19 --epsilon -1");
  REQUIRE(r.status == 0);
  const json j = json::parse(r.out);
  CHECK(j["rank"] == 11);
  CHECK(j["all_checks_passed"] == true);
  CHECK(j["global_dimension_approx"].get<std::string>().rfind("89.5", 0) == 0);
  // Same seed, same bytes.
  CHECK(run("report --n 19 --epsilon -1").out == r.out);
}

TEST_CASE("cli verify and invariants on files", "[cli]") {
  const fs::path good = scratch("good.json"), bad = scratch("bad.json");
  REQUIRE(run("solve-fib --n 7 --epsilon 1 --emit-datum " + good.string()).status == 0);
  const RunResult ok = run("verify --datum " + good.string());
  CHECK(ok.status == 0);
  CHECK(json::parse(ok.out)["verified"] == true);
  const RunResult inv = run("invariants --datum " + good.string());
  REQUIRE(inv.status == 0);
  CHECK(json::parse(inv.out)["rank"] == 11);

  OrbifoldDatum d = datum_from_json(read_json_file(good.string()));
  d.set_f(fib::phi, fib::phi, fib::phi, fib::phi, fib::phi, fib::phi, ising::one, Cyclo(5));
  write_file(bad, to_json(d));
  const RunResult ko = run("verify --datum " + bad.string() + " --conditions O1,O2");
  CHECK(ko.status == 1);
  CHECK(json::parse(ko.out)["verified"] == false);
}

TEST_CASE("cli solve-fib --all", "[cli]") {
  const RunResult r = run("solve-fib --all");
  REQUIRE(r.status == 0);
  const json j = json::parse(r.out);
  CHECK(j["count"] == 32);
  int verified = 0;
  for (const auto& s : j["solutions"]) verified += s["verified"].get<bool>() ? 1 : 0;
  CHECK(verified == 32);
}

TEST_CASE("cli errors", "[cli]") {
  CHECK(run("--bogus").status != 0);
  CHECK(run("report --n 3 --epsilon 1").status != 0);
  CHECK(run("verify --datum /nonexistent/datum.json").status != 0);
  CHECK(run("ising --m 2 --epsilon 1").status == 0);
}

TEST_CASE("cli tsv output", "[cli]") {
  const fs::path p = scratch("tsv.json");
  REQUIRE(run("solve-fib --n 7 --epsilon 1 --emit-datum " + p.string()).status == 0);
  const RunResult t = run("--format tsv invariants --datum " + p.string());
  CHECK(t.status == 0);
  CHECK(t.out.find("\nrank\t11\n") != std::string::npos);
  CHECK(t.out.find("dim_hom_AA.coeffs[0]\t1\n") != std::string::npos);
}
