#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

namespace {

namespace fs = std::filesystem;

struct RunResult {
  int exit_code = -1;
  std::string output;
};

RunResult run_cli_env(const std::string& env, const std::string& args) {
  std::string cmd = env + (env.empty() ? "" : " ") + SPINFORM_BIN + " " +
                    args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult result;
  char buf[4096];
  size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) result.output.append(buf, n);
  int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

RunResult run_cli(const std::string& args) { return run_cli_env("", args); }

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::string line;
  for (char c : text) {
    if (c == '\n') {
      out.push_back(line);
      line.clear();
    } else {
      line += c;
    }
  }
  if (!line.empty()) out.push_back(line);
  return out;
}

fs::path write_temp(const std::string& name, const std::string& content) {
  fs::path path = fs::temp_directory_path() / name;
  std::ofstream out(path);
  out << content;
  return path;
}

}  // namespace

TEST_CASE("extendable verdicts for the model families") {
  RunResult yes = run_cli("extendable --family wiman --genus 4");
  CHECK(yes.exit_code == 0);
  CHECK(yes.output.find("extendable: true") != std::string::npos);
  CHECK(yes.output.find("witness: q:") != std::string::npos);

  RunResult no = run_cli("extendable --family wiman --genus 1");
  CHECK(no.exit_code == 0);  // a negative verdict is still a success
  CHECK(no.output.find("extendable: false") != std::string::npos);
}

TEST_CASE("extendable from a matrix file") {
  fs::path id = write_temp("spinform_id.mat", "genus 1\n1 0\n0 1\n");
  RunResult r = run_cli("extendable --matrix " + id.string());
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("extendable: true") != std::string::npos);
  CHECK(r.output.find("witness: q:0") != std::string::npos);
  fs::remove(id);
}

TEST_CASE("json and text formats report the same verdict") {
  RunResult text = run_cli("extendable --family v --genus 2");
  RunResult json = run_cli("extendable --family v --genus 2 --format json");
  CHECK(text.exit_code == 0);
  CHECK(json.exit_code == 0);

  nlohmann::json j = nlohmann::json::parse(json.output);
  CHECK(j["genus"] == 2);
  CHECK(j["map_order"] == 4);
  CHECK(j["extendable"] == false);
  CHECK(j["fixed_bounded"].size() == 0);
  CHECK(j["fixed_unbounded"].size() == 2);
  CHECK(text.output.find("extendable: false") != std::string::npos);
  CHECK(text.output.find("0 bounded, 2 unbounded") != std::string::npos);
}

TEST_CASE("usage and input errors exit with code 2") {
  CHECK(run_cli("extendable --family sigma --genus 2").exit_code == 2);
  CHECK(run_cli("extendable --family tau").exit_code == 2);  // missing genus
  CHECK(run_cli("extendable --matrix /no/such/file.mat").exit_code == 2);
  CHECK(run_cli("bogus-subcommand").exit_code == 2);
  CHECK(run_cli("survey --family tau --genus-from 3 --genus-to 1").exit_code ==
        2);
  CHECK(run_cli("verify --check bogus").exit_code == 2);
}

TEST_CASE("malformed matrix files name the offending line") {
  fs::path bad = write_temp("spinform_bad.mat", "genus 1\n1 0\n0 2\n");
  RunResult r = run_cli("extendable --matrix " + bad.string());
  CHECK(r.exit_code == 2);
  CHECK(r.output.find(":3:") != std::string::npos);
  fs::remove(bad);

  fs::path broken = write_temp("spinform_broken.mat",
                               "genus 2\n1 0 0 0\n1 1 0 0\n0 0 1 0\n0 0 0 1\n");
  RunResult f = run_cli("extendable --matrix " + broken.string());
  CHECK(f.exit_code == 2);
  CHECK(f.output.find("pair(M x") != std::string::npos);
  fs::remove(broken);
}

TEST_CASE("survey tables match the classification") {
  RunResult w = run_cli(
      "survey --family wiman --genus-from 1 --genus-to 12 --format csv");
  CHECK(w.exit_code == 0);
  std::vector<std::string> rows = lines_of(w.output);
  REQUIRE(rows.size() == 13);
  CHECK(rows[0] ==
        "genus,family,homology_order,extendable,fixed_bounded,"
        "fixed_unbounded,witness");
  std::vector<int> extendable_at;
  for (int g = 1; g <= 12; ++g) {
    const std::string& row = rows[static_cast<size_t>(g)];
    CHECK(row.find(std::to_string(g) + ",wiman," +
                   std::to_string(2 * g + 1)) == 0);
    if (row.find(",true,") != std::string::npos) extendable_at.push_back(g);
  }
  CHECK(extendable_at == std::vector<int>{3, 4, 7, 8, 11, 12});

  RunResult v = run_cli(
      "survey --family v --genus-from 1 --genus-to 12 --format csv");
  std::vector<int> not_extendable;
  rows = lines_of(v.output);
  for (int g = 1; g <= 12; ++g)
    if (rows[static_cast<size_t>(g)].find(",false,") != std::string::npos)
      not_extendable.push_back(g);
  CHECK(not_extendable == std::vector<int>{2, 6, 10});

  RunResult eta = run_cli(
      "survey --family eta --genus-from 1 --genus-to 4 --format csv");
  rows = lines_of(eta.output);
  for (size_t i = 1; i < rows.size(); ++i)
    CHECK(rows[i].find(",true,") != std::string::npos);
}

TEST_CASE("survey json carries the same verdicts as csv") {
  RunResult json = run_cli(
      "survey --family wiman --genus-from 1 --genus-to 4 --format json");
  nlohmann::json j = nlohmann::json::parse(json.output);
  REQUIRE(j.size() == 4);
  CHECK(j[0]["extendable"] == false);
  CHECK(j[2]["extendable"] == true);
  CHECK(j[3]["extendable"] == true);
  CHECK(j[0]["family"] == "wiman");
}

TEST_CASE("invariants listing") {
  RunResult tau1 = run_cli("invariants --family tau --genus 1");
  CHECK(tau1.exit_code == 0);
  CHECK(lines_of(tau1.output) == std::vector<std::string>{"q:3 arf=1"});

  fs::path id = write_temp("spinform_id2.mat", "genus 1\n1 0\n0 1\n");
  RunResult all = run_cli("invariants --matrix " + id.string());
  CHECK(lines_of(all.output).size() == 4);
  fs::remove(id);

  // both v(2)-fixed structures are unbounded, so the arf=0 filter is empty
  RunResult filtered = run_cli("invariants --family v --genus 2 --arf 0");
  CHECK(filtered.exit_code == 0);
  CHECK(lines_of(filtered.output).empty());
  RunResult other = run_cli("invariants --family v --genus 2 --arf 1");
  CHECK(lines_of(other.output).size() == 2);
}

TEST_CASE("verify subcommand reports and clamps") {
  RunResult card = run_cli("verify --check cardinality --genus-to 3");
  CHECK(card.exit_code == 0);
  CHECK(card.output.find("pass") != std::string::npos);

  RunResult clamped = run_cli("verify --check bu --genus-to 99");
  CHECK(clamped.exit_code == 0);
  CHECK(clamped.output.find("[g 1..6]") != std::string::npos);
}

TEST_CASE("verify writes the JSON report") {
  fs::path out = fs::temp_directory_path() / "spinform_cli_report.json";
  RunResult r = run_cli("verify --check transitivity --genus-to 2 --output " +
                        out.string());
  CHECK(r.exit_code == 0);
  std::ifstream in(out);
  REQUIRE(in.good());
  nlohmann::json j = nlohmann::json::parse(in);
  CHECK(j.is_array());
  CHECK(j[0]["check_id"] == "transitivity");
  fs::remove(out);
}

TEST_CASE("primes table") {
  RunResult r = run_cli("primes --limit 50");
  CHECK(r.exit_code == 0);
  std::vector<std::string> rows = lines_of(r.output);
  // one row per odd prime below 50
  CHECK(rows.size() == 14);
  CHECK(rows[0] == "p=3 8k7=false ord2=2 never_divides_bg=false");
  int claimed = 0;
  for (const std::string& row : rows) {
    if (row.find("8k7=true") != std::string::npos) {
      ++claimed;
      CHECK(row.find("never_divides_bg=true") != std::string::npos);
    }
  }
  CHECK(claimed == 4);  // 7, 23, 31, 47
}

TEST_CASE("prime divisor scans over genus") {
  RunResult three = run_cli("primes --check-divisor 3 --genus-to 20");
  CHECK(three.exit_code == 0);
  std::vector<std::string> rows = lines_of(three.output);
  REQUIRE(rows.size() == 20);
  for (int g = 1; g <= 20; ++g) {
    bool divides =
        rows[static_cast<size_t>(g - 1)].find("divides_bg=true") != std::string::npos;
    CHECK(divides == (g % 2 == 1));
  }

  RunResult seven = run_cli("primes --check-divisor 7 --genus-to 100");
  for (const std::string& row : lines_of(seven.output))
    CHECK(row.find("divides_bg=false") != std::string::npos);
}

TEST_CASE("conjugate stress testing stays deterministic") {
  RunResult a = run_cli(
      "extendable --family tau --genus 2 --conjugates 5 --seed 9");
  RunResult b = run_cli(
      "extendable --family tau --genus 2 --conjugates 5 --seed 9");
  CHECK(a.exit_code == 0);
  CHECK(a.output == b.output);
  CHECK(a.output.find("conjugate verdicts agree: 5/5") != std::string::npos);
}

TEST_CASE("the full verification suite passes end to end") {
  RunResult r = run_cli("verify --check all --genus-to 4");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("FAIL") == std::string::npos);
  // nine report lines: eight checks with pgroup contributing two
  CHECK(lines_of(r.output).size() == 9);
}

TEST_CASE("the thread cap changes nothing observable") {
  std::string cmd = "survey --family tau --genus-from 1 --genus-to 6";
  RunResult plain = run_cli(cmd);
  RunResult capped = run_cli_env("SPINFORM_THREADS=1", cmd);
  CHECK(capped.exit_code == 0);
  CHECK(capped.output == plain.output);
}

TEST_CASE("help exits cleanly") {
  CHECK(run_cli("--help").exit_code == 0);
  CHECK(run_cli("extendable --help").exit_code == 0);
}
