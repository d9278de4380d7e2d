#include <doctest.h>

#include <filesystem>
#include <sstream>

#include <json.hpp>

#include "primemeans/cli.hpp"

using namespace primemeans;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> v;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) v.push_back(l);
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> v;
  std::istringstream in(s);
  for (std::string f; std::getline(in, f, sep);) v.push_back(f);
  return v;
}

}  // namespace

TEST_CASE("constants") {
  const Result r = cli({"constants", "--m", "4"});
  CHECK(r.code == kExitClean);
  const auto l = lines(r.out);
  REQUIRE(l.size() == 5);
  CHECK(l[0] == "k: 1, 3, 13, 71");
  CHECK(l[1] == "r: 1/2, 3/4, 7/4, 45/8");
  CHECK(l[2] == "Q: x - 2; x^2 - 6x + 11; " + l[2].substr(l[2].rfind("; ") + 2));
  CHECK(l[4] == "T: 1; 2x - 6; 6x^2 - 42x + 84");
  CHECK(lines(cli({"constants", "--m", "2"}).out)[1] == "r: 1/2, 3/4");
  CHECK(cli({"constants", "--cipolla", "4"}).code == kExitUsage);
  CHECK(cli({"constants", "--m", "0"}).code == kExitUsage);
}

TEST_CASE("expand") {
  CHECK(cli({"expand", "--m", "5"}).out ==
        "e/2 + e/(4L) + e/L² + 61e/(12L³) + 1463e/(48L⁴) + 100367e/(480L⁵)\n");
  CHECK(cli({"expand", "--m", "1"}).out == "e/2 + e/(4L)\n");
  CHECK(cli({"expand", "--m", "0"}).out == "e/2\n");
  const Result at = cli({"expand", "--m", "5", "--n", "100"});
  CHECK(at.code == kExitClean);
  CHECK(lines(at.out).size() == 2);
}

TEST_CASE("tabulate rows") {
  const Result r = cli({"tabulate", "--n", "1", "--n", "5", "--n", "10", "--format", "csv"});
  REQUIRE(r.code == kExitClean);
  const auto l = lines(r.out);
  REQUIRE(l.size() == 4);
  CHECK(l[0] == "n,p_n,A_n,G_n,D(n),R(n),A_n/G_n");
  const auto one = split(l[1], ',');
  CHECK(one[0] == "1");
  CHECK(one[1] == "2");
  CHECK(one[2].rfind("2+-", 0) == 0);
  CHECK(one[3].rfind("2", 0) == 0);
  CHECK(one[5].rfind("1+-", 0) == 0);
  const auto five = split(l[2], ',');
  CHECK(five[2].rfind("5.6+-", 0) == 0);
  CHECK(five[3].rfind("4.70676370645477", 0) == 0);
  const auto ten = split(l[3], ',');
  CHECK(ten[1] == "29");
  CHECK(ten[2].rfind("12.9+-", 0) == 0);
  CHECK(ten[6].rfind("1.34741488725104", 0) == 0);

  CHECK(cli({"tabulate"}).code == kExitUsage);
  CHECK(cli({"tabulate", "--n", "0"}).code == kExitUsage);
  CHECK(lines(cli({"tabulate", "--from", "3", "--to", "7"}).out).size() == 6);
}

TEST_CASE("verify exit codes") {
  const Result ok = cli({"verify", "--bound", "ineq-3.1", "--to", "100000"});
  CHECK(ok.code == kExitClean);
  CHECK(ok.out.find("violations: 0") != std::string::npos);

  const Result bad = cli({"verify", "--bound", "nosuch"});
  CHECK(bad.code == kExitUsage);
  CHECK(bad.err.find("nosuch") != std::string::npos);

  const Result found = cli({"verify", "--bound", "cor-6.3", "--to", "1000"});
  CHECK(found.code == kExitViolations);
  CHECK(found.out.find("FINDING") != std::string::npos);

  CHECK(cli({"verify", "--bound", "D>1", "--to", "9", "--all-n"}).code == kExitViolations);
  CHECK(cli({"verify", "--bound", "D>1", "--to", "9"}).code == kExitClean);
  CHECK(cli({"verify", "--precision", "octuple"}).code == kExitUsage);
  CHECK(cli({"verify", "--stop-after", "10"}).code == kExitUsage);
  CHECK(cli({"nosuch"}).code == kExitUsage);
  CHECK(cli({}).code == kExitUsage);
  CHECK(cli({"--help"}).code == kExitClean);
}

TEST_CASE("crossover and monotone") {
  CHECK(cli({"crossover", "--bound", "D>1", "--to", "100000"}).out == "10\n");
  const auto j = nlohmann::json::parse(cli({"crossover", "--bound", "thm-6.1", "--to", "20000", "--format", "json"}).out);
  CHECK(j["crossover"] == 139);
  CHECK(cli({"crossover", "--bound", "D>1", "--to", "9"}).out == "none (fails at the limit)\n");
  CHECK(cli({"monotone", "--from", "226", "--to", "20000"}).code == kExitClean);
  const Result up = cli({"monotone", "--from", "1", "--to", "20", "--format", "json"});
  CHECK(up.code == kExitViolations);
  CHECK(nlohmann::json::parse(up.out)["increases"].size() == 20);
}

TEST_CASE("text, csv and json agree on every number") {
  const std::vector<std::string> base = {"verify", "--to", "3000", "--all-n"};
  auto with = [&](const char* f) {
    auto a = base;
    a.insert(a.end(), {"--format", f});
    return cli(a);
  };
  const Result text = with("text"), csv = with("csv"), json = with("json");
  CHECK(text.code == csv.code);
  CHECK(csv.code == json.code);
  const auto doc = nlohmann::json::parse(json.out);
  const auto rows = lines(csv.out);
  REQUIRE(rows.size() == doc["bounds"].size() + 1);
  for (std::size_t i = 0; i < doc["bounds"].size(); ++i) {
    const auto& b = doc["bounds"][i];
    const auto f = split(rows[i + 1], ',');
    CAPTURE(rows[i + 1]);
    CHECK(f[0] == b["id"].get<std::string>());
    CHECK(f[1] == std::to_string(b["n_start"].get<std::uint64_t>()));
    CHECK(f[2] == std::to_string(b["n_end"].get<std::uint64_t>()));
    CHECK(f[3] == std::to_string(b["fails"].get<std::uint64_t>()));
    CHECK(f[4] == std::to_string(b["indeterminate"].get<std::uint64_t>()));
    const std::string mm = b["min_margin"]["value"].get<std::string>();
    CHECK(f[5].rfind(mm + "+-", 0) == 0);
    CHECK(f[6] == std::to_string(b["min_margin"]["n"].get<std::uint64_t>()));
    CHECK(text.out.find(f[0]) != std::string::npos);
    CHECK(text.out.find(mm) != std::string::npos);
  }
}

TEST_CASE("resume through the CLI") {
  const fs::path dir = fs::temp_directory_path() / ("primemeans-cli-" + std::to_string(::getpid()));
  fs::create_directories(dir);
  const std::string ckpt = (dir / "c.json").string();
  const std::string whole = cli({"verify", "--to", "40000", "--format", "json"}).out;
  const Result part =
      cli({"verify", "--to", "40000", "--format", "json", "--checkpoint", ckpt, "--stop-after", "15000"});
  CHECK(part.out != whole);
  CHECK(cli({"resume", "--checkpoint", ckpt, "--format", "json"}).out == whole);
  const Result quad = cli({"resume", "--checkpoint", ckpt, "--precision", "quad"});
  CHECK(quad.code == kExitUsage);
  CHECK(quad.err.find("job hash mismatch") != std::string::npos);
  const std::string out_file = (dir / "report.csv").string();
  CHECK(cli({"verify", "--bound", "ineq-3.1", "--to", "5000", "--format", "csv", "--out", out_file}).out.empty());
  CHECK(fs::file_size(out_file) > 0);
  fs::remove_all(dir);
}

TEST_CASE("catalog subcommand") {
  const Result r = cli({"catalog", "--format", "csv"});
  CHECK(r.code == kExitClean);
  CHECK(lines(r.out).size() == 39);
}
