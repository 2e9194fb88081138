#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

struct Run {
  int status = -1;
  std::string out;
  std::string err;
};

struct Sandbox {
  fs::path dir;
  Sandbox() {
    dir = fs::temp_directory_path() / ("patex-cli-" + std::to_string(std::random_device{}()));
    fs::create_directories(dir);
    ::setenv("PATEX_CACHE", (dir / "cache.jsonl").c_str(), 1);
  }
  ~Sandbox() {
    std::error_code ec;
    fs::remove_all(dir, ec);
  }
  fs::path write(const std::string& name, const std::string& text) const {
    std::ofstream(dir / name) << text;
    return dir / name;
  }
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Run patex(const Sandbox& box, const std::string& args, const std::string& input = "") {
  const fs::path in = box.write("stdin.txt", input);
  const fs::path err = box.dir / "stderr.txt";
  const std::string cmd = std::string("'") + PATEX_CLI + "' " + args + " < '" + in.string() +
                          "' 2> '" + err.string() + "'";
  Run r;
  FILE* pipe = ::popen(cmd.c_str(), "r");
  REQUIRE(pipe);
  char buf[4096];
  for (std::size_t n; (n = std::fread(buf, 1, sizeof buf, pipe)) > 0;) r.out.append(buf, n);
  const int raw = ::pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  r.err = slurp(err);
  return r;
}

std::size_t count_lines(const std::string& s) {
  return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n'));
}

}  // namespace

TEST_CASE("contains") {
  Sandbox box;
  const auto h = box.write("h.txt", "1000\n0100\n0010\n0001\n");
  auto r = patex(box, "contains --haystack '" + h.string() + "' --needle S1");
  CHECK(r.status == 0);
  CHECK(r.out == "absent\n");

  r = patex(box, "contains --haystack 110,101,010 --needle 110,101");
  CHECK(r.status == 0);
  CHECK(r.out == "present\nrows: 1 2\ncols: 1 2 3\n");

  r = patex(box, "--json contains --haystack - --needle 11", "011\n110\n");
  CHECK(r.status == 0);
  CHECK(r.out == "{\"contains\":true,\"embedding\":{\"cols\":[2,3],\"rows\":[1]}}\n");

  r = patex(box, "contains --haystack 111,111 --needle Q1 --bruteforce --json");
  CHECK(nlohmann::json::parse(r.out)["contains"] == true);
}

TEST_CASE("ex with a witness") {
  Sandbox box;
  auto r = patex(box, "ex --n 3 --pattern 11");
  CHECK(r.status == 0);
  CHECK(r.out.starts_with("value: 3\nexact: true\nwitness:\n"));
  CHECK(count_lines(r.out) == 6);
  CHECK(r.err.find("cache: miss") != std::string::npos);
}

TEST_CASE("ex is idempotent through the cache") {
  Sandbox box;
  const auto first = patex(box, "ex --n 4 --pattern R");
  const auto second = patex(box, "ex --n 4 --pattern R");
  CHECK(first.status == 0);
  CHECK(first.out == second.out);
  CHECK(second.err.find("nodes: 0,") != std::string::npos);
  CHECK(second.err.find("cache: hit") != std::string::npos);
  CHECK(count_lines(slurp(box.dir / "cache.jsonl")) == 1);

  const auto j1 = patex(box, "ex --n 4 --pattern Q1 --json");
  const auto j2 = patex(box, "ex --n 4 --pattern Q1 --json");
  CHECK(j1.out == j2.out);
  CHECK(nlohmann::json::parse(j1.out)["value"] == 11);
}

TEST_CASE("a reflected pattern hits the cache") {
  Sandbox box;
  patex(box, "ex --n 4 --pattern 101,110");
  const auto r = patex(box, "ex --n 4 --pattern 011,101");
  CHECK(r.err.find("cache: hit") != std::string::npos);
  CHECK(r.out.starts_with("value: 11\n"));
}

TEST_CASE("cache flags") {
  Sandbox box;
  const auto file = box.dir / "explicit.jsonl";
  patex(box, "ex --n 2 --pattern R --cache '" + file.string() + "'");
  CHECK(count_lines(slurp(file)) == 1);
  CHECK_FALSE(fs::exists(box.dir / "cache.jsonl"));
  const auto off = patex(box, "ex --n 2 --pattern R --no-cache");
  CHECK(off.err.find("cache: off") != std::string::npos);
  CHECK_FALSE(fs::exists(box.dir / "cache.jsonl"));
  box.write("cache.jsonl", "garbage\n");
  const auto warn = patex(box, "ex --n 2 --pattern R");
  CHECK(warn.status == 0);
  CHECK(warn.err.find("corrupt") != std::string::npos);
}

TEST_CASE("ex methods") {
  Sandbox box;
  auto r = patex(box, "ex --n 3 --pattern Q3 --method bruteforce");
  CHECK(r.out == "value: 8\nexact: true\n");
  r = patex(box, "ex --n 5 --pattern R --method bruteforce");
  CHECK(r.status == 2);
  CHECK(r.err.find("size guard") != std::string::npos);
  r = patex(box, "ex --n 4 --pattern S1 --method greedy --seed 4");
  CHECK(r.status == 0);
  CHECK(r.out.find("exact: false") != std::string::npos);
}

TEST_CASE("JSON matrices round trip through the CLI") {
  Sandbox box;
  const auto r = patex(box, "ex --n 4 --pattern S2 --json");
  const auto j = nlohmann::json::parse(r.out);
  const auto w = box.write("w.json", j["witness"].dump());
  const auto again = patex(box, "--json contains --haystack '" + w.string() + "' --needle S2");
  CHECK(nlohmann::json::parse(again.out)["contains"] == false);

  const auto e = patex(box, "enumerate --k 2 --json");
  std::istringstream lines(e.out);
  std::string line;
  std::getline(lines, line);
  const auto m = box.write("m.json", line);
  const auto c = patex(box, "--json check --matrix '" + m.string() + "'");
  CHECK(nlohmann::json::parse(c.out)["matrix"] == nlohmann::json::parse(line));
}

TEST_CASE("table") {
  Sandbox box;
  const auto r = patex(box, "table --pattern R --n-max 4");
  CHECK(r.status == 0);
  CHECK(r.out.starts_with("n\tvalue\texact\tvalue/n\n1\t1\tyes\t1.000\n2\t3\tyes\t1.500\n"));
}

TEST_CASE("check exit statuses") {
  Sandbox box;
  auto r = patex(box, "check --matrix 10,01");
  CHECK(r.status == 0);
  CHECK(r.out.find("verdict: pass") != std::string::npos);
  r = patex(box, "check --matrix R");
  CHECK(r.status == 1);
  CHECK(r.out.find("cond1: FAIL contains R (identity) at rows 1 2, cols 1 2") != std::string::npos);
  r = patex(box, "check --matrix TWO_AND_TWO --json");
  CHECK(r.status == 1);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["direct"]["lemma_results"]["depth_bound"]["passed"] == false);
  r = patex(box, "check --matrix 100,010,001 --reduce");
  CHECK(r.status == 0);
  CHECK(r.out.find("selected row: 3") != std::string::npos);
  CHECK(r.out.find("removed column 3 (empty, 0 ones)") != std::string::npos);
  r = patex(box, "check --matrix 10,01 --reduce");
  CHECK(r.status == 2);
}

TEST_CASE("enumerate") {
  Sandbox box;
  auto r = patex(box, "enumerate --k 2");
  CHECK(r.status == 0);
  CHECK(r.out.starts_with("01\n10\n\n010\n101\n\n0110\n1001\n\n# k=2 emitted=3 nodes="));
  r = patex(box, "enumerate --k 3 --json --threads 3");
  CHECK(r.status == 0);
  CHECK(count_lines(r.out) == 49);
  const auto last = r.out.substr(r.out.rfind('\n', r.out.size() - 2) + 1);
  const auto trailer = nlohmann::json::parse(last);
  CHECK(trailer["k"] == 3);
  CHECK(trailer["emitted"] == 48);
  CHECK(trailer["pruned"].is_object());
}

TEST_CASE("verify-bounds") {
  Sandbox box;
  auto r = patex(box, "verify-bounds --k 2");
  CHECK(r.status == 0);
  CHECK(r.out.starts_with("ok: 3 candidates, max ones ≤ 4, max cols ≤ 4\n"));
  r = patex(box, "verify-bounds --k 3");
  CHECK(r.status == 0);
  CHECK(r.out.starts_with("ok: 48 candidates, max ones ≤ 8, max cols ≤ 8\n"));
  CHECK(patex(box, "verify-bounds --k 3").out == r.out);
  CHECK(patex(box, "verify-bounds --k 3 --threads 4").out == r.out);
  r = patex(box, "verify-bounds --k 3 --budget 50");
  CHECK(r.status == 1);
  CHECK(r.out.starts_with("FAIL"));
}

TEST_CASE("count-bound") {
  Sandbox box;
  CHECK(patex(box, "count-bound --k 3").out == "490431\n");
  CHECK(patex(box, "count-bound --k 4 --json").out == "{\"count_bound\":\"31526874380\",\"k\":4}\n");
  const auto r = patex(box, "count-bound --k 2");
  CHECK(r.status == 2);
  CHECK(r.err.find("k > 2") != std::string::npos);
}

TEST_CASE("usage errors exit 2") {
  Sandbox box;
  CHECK(patex(box, "").status == 2);
  CHECK(patex(box, "frobnicate").status == 2);
  CHECK(patex(box, "ex --pattern R").status == 2);
  CHECK(patex(box, "ex --n 0 --pattern R").status == 2);
  CHECK(patex(box, "ex --n 3 --pattern R --cache x --no-cache").status == 2);
  CHECK(patex(box, "check --matrix 10,1").status == 2);
  CHECK(patex(box, "check --matrix 10,01 --filters bogus").status == 2);
  CHECK(patex(box, "enumerate --k 1").status == 2);
  auto r = patex(box, "contains --haystack 1x,01 --needle R");
  CHECK(r.status == 2);
  CHECK(r.err.find("line 1") != std::string::npos);
  CHECK(patex(box, "--help").status == 0);
  CHECK(patex(box, "--version").out == "0.1.0\n");
}
