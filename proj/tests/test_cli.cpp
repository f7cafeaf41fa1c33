#include <doctest.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "tailcond/copulas.hpp"
#include "tailcond/csv.hpp"
#include "tailcond/serialization.hpp"
#include "tailcond_cli/cli.hpp"

namespace fs = std::filesystem;
using namespace tailcond;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("tailcond-cli-" + std::to_string(::getpid())) / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string last_line(const std::string& text) {
  const auto end = text.find_last_not_of('\n');
  const auto start = text.rfind('\n', end);
  return text.substr(start == std::string::npos ? 0 : start + 1, end - (start == std::string::npos ? 0 : start + 1) + 1);
}

const std::vector<std::string> kSmallExperiment{"--preset", "desk", "--n",    "2000",   "--k",      "50",
                                                "--N",      "20",   "--M",    "3",      "--reps",   "200"};

std::vector<std::string> with(std::vector<std::string> head, const std::vector<std::string>& tail) {
  head.insert(head.end(), tail.begin(), tail.end());
  return head;
}

}  // namespace

TEST_CASE("eval wraps the copula df") {
  const auto r = invoke({"eval", "--family", "gumbel", "--theta", "3", "--u", "0.9,0.95,0.8"});
  REQUIRE(r.code == 0);
  const std::vector<double> u{0.9, 0.95, 0.8};
  CHECK(r.out == format_double(cdf(CopulaModel::archimedean(Generator::gumbel(3.0), 3), u)) + "\n");

  const auto sup = invoke({"eval", "--norm", "sup", "--u", "0.7,0.6"});
  CHECK(sup.out == "0.6\n");
}

TEST_CASE("conditional reports df and survival") {
  const auto r = invoke({"conditional", "--theta", "3", "--u", "0.99", "--v", "0.95,0.97"});
  REQUIRE(r.code == 0);
  const auto doc = json::parse(r.out);
  const auto model = CopulaModel::archimedean(Generator::gumbel(3.0), 3);
  const std::vector<double> v{0.95, 0.97};
  CHECK(doc["value"].get<double>() == conditional_cdf(model, 2, 0.99, v));
  CHECK(doc["j"] == 3);
  CHECK(doc["value"].get<double>() + doc["survival"].get<double>() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("probe verbs") {
  const auto c0 = invoke({"probe", "--family", "gumbel", "--theta", "4", "--kind", "C0", "--x", "2"});
  REQUIRE(c0.code == 0);
  const auto line = last_line(c0.out);
  const double ratio = std::stod(line.substr(line.find(',') + 1));
  CHECK(ratio == doctest::Approx(16.0).epsilon(1e-6));
  CHECK(c0.out.rfind("# kind=C0", 0) == 0);

  const auto c3 = invoke({"probe", "--family", "clayton", "--theta", "2", "--kind", "C3"});
  CHECK(c3.out.find("target=1 ") != std::string::npos);

  const auto doa = invoke({"probe", "--theta", "2", "--kind", "doa", "--x", "-1,-1"});
  REQUIRE(doa.code == 0);
  CHECK(doa.out.rfind("n,value,target,rel_error,clamped\n", 0) == 0);
  const auto row = last_line(doa.out);
  CHECK(row.rfind("1e+06,", 0) == 0);

  const auto cond = invoke({"probe", "--theta", "3", "--kind", "conditional", "--x", "-1,-1", "--n-grid", "1e4"});
  REQUIRE(cond.code == 0);
  CHECK(last_line(cond.out).find(",2,") != std::string::npos);

  CHECK(invoke({"probe", "--kind", "doa"}).code == cli::kExitUsageError);
}

TEST_CASE("sample output is deterministic") {
  const auto a = invoke({"sample", "--family", "clayton", "--theta", "2", "--d", "3", "--n", "200", "--seed", "5"});
  const auto b = invoke({"sample", "--family", "clayton", "--theta", "2", "--d", "3", "--n", "200", "--seed", "5"});
  const auto c = invoke({"sample", "--family", "clayton", "--theta", "2", "--d", "3", "--n", "200", "--seed", "6"});
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out != c.out);
  std::istringstream in(a.out);
  const auto table = read_csv(in);
  CHECK(table.header == std::vector<std::string>{"u1", "u2", "u3"});
  CHECK(table.rows() == 200);
}

TEST_CASE("exit codes") {
  CHECK(invoke({}).code == cli::kExitUsageError);
  CHECK(invoke({"frobnicate"}).code == cli::kExitUsageError);
  CHECK(invoke({"eval"}).code == cli::kExitUsageError);
  CHECK(invoke({"eval", "--theta", "abc", "--u", "0.9,0.9"}).code == cli::kExitUsageError);
  CHECK(invoke({"probe", "--kind", "C9"}).code == cli::kExitUsageError);

  const auto bad_theta = invoke({"eval", "--theta", "0.5", "--u", "0.9,0.9"});
  CHECK(bad_theta.code == cli::kExitDataError);
  CHECK(bad_theta.err.find("error:") == 0);
  CHECK(invoke({"eval", "--d", "3", "--u", "0.9,0.9"}).code == cli::kExitDataError);
  CHECK(invoke({"eval", "--u", "0.2,0.9"}).code == cli::kExitDataError);
  CHECK(invoke({"sample", "--norm", "logistic", "--n", "10"}).code == cli::kExitDataError);
  CHECK(invoke({"experiment", "--preset", "huge"}).code == cli::kExitDataError);

  const auto help = invoke({"--help"});
  CHECK(help.code == 0);
  CHECK(help.out.find("experiment") != std::string::npos);
}

TEST_CASE("maxima, pickands and test pipeline") {
  const auto dir = scratch("pipeline");
  const auto file = (dir / "maxima.csv").string();
  auto r = invoke(with({"maxima", "--out", file, "--theta", "4"}, kSmallExperiment));
  REQUIRE(r.code == 0);
  CHECK(slurp(file).rfind("# norming=unconditional", 0) == 0);

  r = invoke({"pickands", "--in", file, "--mesh", "0.25"});
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("t1,t2,t3,A\n", 0) == 0);

  r = invoke({"test", "--in", file});
  REQUIRE(r.code == 0);
  auto doc = json::parse(r.out);
  CHECK(doc["critical_source"]["kind"] == "builtin");
  CHECK(doc["reject"] == true);

  const auto cond_file = (dir / "conditional.csv").string();
  REQUIRE(invoke(with({"maxima", "--kind", "conditional", "--out", cond_file}, kSmallExperiment)).code == 0);
  CHECK(slurp(cond_file).rfind("# norming=conditional", 0) == 0);

  const auto four = (dir / "four.csv").string();
  REQUIRE(invoke(with({"maxima", "--d", "4", "--out", four}, kSmallExperiment)).code == 0);
  r = invoke({"test", "--in", four, "--reps", "100"});
  REQUIRE(r.code == 0);
  doc = json::parse(r.out);
  CHECK(doc["critical_source"]["kind"] == "montecarlo");
  CHECK(invoke({"test", "--in", four, "--critical", "builtin"}).code == cli::kExitDataError);
  CHECK(invoke({"test", "--in", (dir / "missing.csv").string()}).code == cli::kExitDataError);
}

TEST_CASE("experiment reports and config files") {
  const auto dir = scratch("experiment");
  const auto a = invoke(with({"experiment", "--out", dir.string(), "--threads", "1"}, kSmallExperiment));
  REQUIRE(a.code == 0);
  const auto doc = json::parse(a.out);
  CHECK(doc["runs"] == 3);
  CHECK(doc["config"]["n"] == 2000);
  CHECK(slurp(dir / "report.json") == a.out);
  CHECK(slurp(dir / "runs.csv").rfind("rep,s_unconditional", 0) == 0);

  const auto b = invoke(with({"experiment", "--threads", "2"}, kSmallExperiment));
  CHECK(b.out == a.out);

  const auto config = dir / "config.json";
  std::ofstream(config) << R"({"theta": 2.0, "M": 2})";
  const auto c = invoke(with({"experiment", "--config", config.string()}, {"--preset", "desk", "--n", "2000", "--k", "50",
                                                                          "--N", "20", "--reps", "200"}));
  REQUIRE(c.code == 0);
  CHECK(json::parse(c.out)["config"]["theta"] == 2.0);
  CHECK(json::parse(c.out)["runs"] == 2);

  std::ofstream(config) << R"({"dimension": 4})";
  CHECK(invoke({"experiment", "--config", config.string()}).code == cli::kExitDataError);

  const auto scaled = invoke(with({"experiment", "--preset", "full", "--scale", "desk", "--M", "1"},
                               {"--n", "2000", "--k", "50", "--N", "20", "--reps", "200"}));
  REQUIRE(scaled.code == 0);
  CHECK(json::parse(scaled.out)["config"]["N"] == 20);
}

TEST_CASE("experiment table") {
  const auto dir = scratch("table");
  const auto r = invoke(with({"experiment", "--table", "--dims", "3,4", "--thetas", "2", "--out", dir.string()},
                          kSmallExperiment));
  REQUIRE(r.code == 0);
  std::ifstream in(dir / "table1.csv");
  std::string header, row;
  std::getline(in, header);
  CHECK(header.rfind("d,theta,runs,rejection_rate_conditional", 0) == 0);
  int rows = 0;
  while (std::getline(in, row)) ++rows;
  CHECK(rows == 2);
  CHECK(r.err.find("d=4 theta=2") != std::string::npos);
}

TEST_CASE("figure bundle") {
  const auto dir = scratch("figure");
  const auto args = with({"figure", "--out", dir.string()}, kSmallExperiment);
  const auto r = invoke(args);
  REQUIRE(r.code == 0);
  const auto doc = json::parse(r.out);
  CHECK(doc["config"]["theta"] == 4.0);
  CHECK(doc["files"].size() == 12);
  for (int i = 1; i <= 6; ++i) {
    const auto stem = "fig1_panel" + std::to_string(i);
    CHECK(fs::exists(dir / (stem + ".csv")));
    CHECK(slurp(dir / (stem + ".svg")).rfind("<svg", 0) == 0);
  }
  std::istringstream panel1(slurp(dir / "fig1_panel1.csv"));
  CHECK(read_maxima_csv(panel1).rows() == 20);
  CHECK(doc["statistic_unconditional"].get<double>() > doc["statistic_conditional"].get<double>());

  const auto first = slurp(dir / "fig1_panel6.svg");
  REQUIRE(invoke(args).code == 0);
  CHECK(slurp(dir / "fig1_panel6.svg") == first);
  CHECK(invoke({"figure"}).code == cli::kExitUsageError);
}

TEST_CASE("calibrate") {
  const auto r = invoke({"calibrate", "--d", "2", "--reps", "300"});
  REQUIRE(r.code == 0);
  const auto doc = json::parse(r.out);
  CHECK(doc["builtin"] == 0.96);
  CHECK(std::abs(doc["difference"].get<double>()) < 0.2);
  CHECK(invoke({"calibrate", "--d", "2", "--alpha", "2"}).code == cli::kExitDataError);
}

TEST_CASE("the executable") {
  auto run = [](const std::string& args, std::string& out) {
    FILE* pipe = ::popen((std::string(TAILCOND_EXE) + " " + args + " 2>/dev/null").c_str(), "r");
    REQUIRE(pipe != nullptr);
    char buf[512];
    while (std::fgets(buf, sizeof buf, pipe)) out += buf;
    const int status = ::pclose(pipe);
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  };
  std::string out;
  CHECK(run("eval --family gumbel --theta 3 --u 0.9,0.95,0.8", out) == 0);
  CHECK(out == invoke({"eval", "--family", "gumbel", "--theta", "3", "--u", "0.9,0.95,0.8"}).out);
  std::string ignored;
  CHECK(run("eval --bogus", ignored) == 2);
  CHECK(run("eval --theta 0.1 --u 0.9,0.9", ignored) == 1);
}
