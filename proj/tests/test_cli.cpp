#include "scs/cli.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "scs/hecke.hpp"
#include "scs/shifted_sum.hpp"
#include "scs/weights.hpp"

using namespace scs;
using nlohmann::json;

namespace {

struct RunResult {
  int code = -1;
  std::string out, err;
};

RunResult invoke(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  RunResult r;
  r.code = cli::run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

// CSV body rows after the "# key = value" preamble and the header line
std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  bool seen_header = false;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    if (!seen_header) {
      seen_header = true;
      continue;
    }
    std::vector<std::string> fields;
    std::istringstream ls(line);
    std::string f;
    while (std::getline(ls, f, ',')) fields.push_back(f);
    rows.push_back(fields);
  }
  return rows;
}

}  // namespace

TEST_CASE("complex literal round trips") {
  CHECK(cli::parse_complex("2+0i") == cplx(2, 0));
  CHECK(cli::parse_complex("1.5-2.3i") == cplx(1.5, -2.3));
  CHECK(cli::parse_complex("-3i") == cplx(0, -3));
  CHECK(cli::parse_complex("7") == cplx(7, 0));
  CHECK(cli::parse_complex("1e-2+2e-3i") == cplx(0.01, 0.002));
  CHECK(cli::parse_complex(cli::format_complex(cplx(0.1, -0.7))) ==
        cplx(0.1, -0.7));
  CHECK_THROWS_AS(cli::parse_complex("abc"), std::invalid_argument);
  CHECK_THROWS_AS(cli::parse_complex(""), std::invalid_argument);
}

TEST_CASE("csv quoting") {
  CHECK(cli::csv_field("plain") == "plain");
  CHECK(cli::csv_field("a,b") == "\"a,b\"");
  CHECK(cli::csv_field("x\"y") == "\"x\"\"y\"");
}

TEST_CASE("verify suite emits a passing JSON report") {
  auto r = invoke({"verify", "--suite", "transforms"});
  CHECK(r.code == 0);
  auto j = json::parse(r.out);
  CHECK(j["suite"] == "transforms");
  CHECK(j["pass"] == true);
  CHECK(j["config"]["suite"] == "transforms");
  CHECK(j["checks"].size() >= 5);
  for (const auto& c : j["checks"]) {
    CHECK(c["pass"] == true);
    CHECK(c.contains("residual"));
    CHECK(c.contains("tolerance"));
  }
}

TEST_CASE("verify reports are byte identical across runs") {
  auto a = invoke({"verify", "--suite", "transforms"});
  auto b = invoke({"verify", "--suite", "transforms"});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
}

TEST_CASE("unknown suite is a usage error") {
  auto r = invoke({"verify", "--suite", "bogus"});
  CHECK(r.code == 2);
  CHECK(!r.err.empty());
}

TEST_CASE("sum row matches the library value") {
  auto r = invoke({"sum", "--pi1", "delta", "--pi2", "delta", "--h", "1",
                   "--Y", "32", "--sign", "minus", "--weight", "bump"});
  REQUIRE(r.code == 0);
  auto rows = csv_rows(r.out);
  REQUIRE(rows.size() == 1);
  REQUIRE(rows[0].size() == 6);

  auto W = WeightFunction::bump(1.5, 0.5);
  auto seq = tau_sequence(73);
  cplx ref = direct_sum(SumSpec(1, 32.0, SumSign::Minus, seq, seq, W, W));
  CHECK(std::abs(cli::parse_complex(rows[0][3]) - ref) <= 1e-15);
  CHECK(std::stod(rows[0][4]) >= std::abs(ref));  // termwise bound column
}

TEST_CASE("sum json format carries config and rows") {
  auto r = invoke({"sum", "--weight", "bump", "--h", "2", "--Y", "16",
                   "--sign", "plus", "--format", "json"});
  REQUIRE(r.code == 0);
  auto j = json::parse(r.out);
  CHECK(j["config"]["h"] == 2);
  CHECK(j["config"]["format"] == "json");
  REQUIRE(j["rows"].size() == 1);
  CHECK(j["rows"][0]["sign"] == "plus");
  CHECK(j["rows"][0].contains("termwise_bound"));
}

TEST_CASE("missing weight is a usage error") {
  auto r = invoke({"sum", "--h", "1", "--Y", "16"});
  CHECK(r.code == 2);
}

TEST_CASE("growth mode emits one slope row per shift") {
  auto r = invoke({"sum", "--weight", "bump", "--sign", "plus", "--h-range",
                   "1:2", "--Y-geom", "32:1024:2"});
  REQUIRE(r.code == 0);
  auto rows = csv_rows(r.out);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0][0] == "1");
  CHECK(rows[1][0] == "2");
  CHECK(std::isfinite(std::stod(rows[0][1])));  // slope
  CHECK(std::stod(rows[0][2]) > 0);             // sup ratio
  // half a ladder is a usage error
  CHECK(invoke({"sum", "--weight", "bump", "--h-range", "1:2"}).code == 2);
}

TEST_CASE("threads flag leaves the value bit identical") {
  std::vector<std::string> base = {"sum",  "--weight", "bump", "--h", "3",
                                   "--Y",  "2048",     "--sign", "plus"};
  auto one = base, two = base;
  one.insert(one.end(), {"--threads", "1"});
  two.insert(two.end(), {"--threads", "4"});
  auto a = invoke(one), b = invoke(two);
  REQUIRE(a.code == 0);
  REQUIRE(b.code == 0);
  CHECK(csv_rows(a.out)[0][3] == csv_rows(b.out)[0][3]);
}

TEST_CASE("dirichlet rows match the library and honor N doubling") {
  auto r = invoke({"dirichlet", "--h", "1", "--s", "2+0i", "--k", "0", "--N",
                   "500", "--double-N"});
  REQUIRE(r.code == 0);
  auto rows = csv_rows(r.out);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0][3] == "500");
  CHECK(rows[1][3] == "1000");
  auto seq = tau_sequence(1001);
  auto ref = dirichlet_partial(1, cplx(2, 0), 0, 500, seq, seq);
  CHECK(std::abs(cli::parse_complex(rows[0][4]) - ref.value) <= 1e-15);
  CHECK(std::stod(rows[0][5]) == doctest::Approx(ref.tail_bound));
}

TEST_CASE("dirichlet rejects the continuation region") {
  auto r = invoke({"dirichlet", "--h", "1", "--s", "0.8+0i", "--N", "500"});
  CHECK(r.code == 2);
  CHECK(r.err.find("out of scope") != std::string::npos);
}

TEST_CASE("maass ingest feeds the sum command") {
  std::string path = std::string(SCS_DATA_DIR) + "/maass_R13p7797_even.txt";
  auto ok = invoke({"sum", "--pi1", "maass:" + path, "--pi2", "maass:" + path,
                    "--h", "1", "--Y", "1", "--sign", "minus", "--weight",
                    "bump"});
  CHECK(ok.code == 0);
  CHECK(csv_rows(ok.out).size() == 1);

  auto missing = invoke({"sum", "--pi1", "maass:/nonexistent.txt", "--h", "1",
                         "--Y", "1", "--sign", "minus", "--weight", "bump"});
  CHECK(missing.code == 3);

  // data present but too short for the requested window
  auto short_run =
      invoke({"sum", "--pi1", "maass:" + path, "--pi2", "maass:" + path,
              "--h", "1", "--Y", "64", "--sign", "minus", "--weight", "bump"});
  CHECK(short_run.code == 3);
}

TEST_CASE("config file resolves below flags") {
  std::string path = "/tmp/scs_cli_test_config.txt";
  {
    std::ofstream f(path);
    f << "# comment line\n";
    f << "weight = bump\n";
    f << "sign = minus\n";
    f << "Y = 64\n";
  }
  auto from_file = invoke({"sum", "--config", path, "--h", "2"});
  REQUIRE(from_file.code == 0);
  CHECK(from_file.out.find("# Y = 64") != std::string::npos);
  CHECK(from_file.out.find("# sign = minus") != std::string::npos);

  auto overridden = invoke({"sum", "--config", path, "--h", "2", "--Y", "16"});
  REQUIRE(overridden.code == 0);
  CHECK(overridden.out.find("# Y = 16") != std::string::npos);
  std::remove(path.c_str());

  CHECK(invoke({"sum", "--config", "/nonexistent.cfg", "--weight", "bump"})
            .code == 2);
}

TEST_CASE("out flag writes the report to a file") {
  std::string path = "/tmp/scs_cli_test_report.json";
  auto r = invoke({"verify", "--suite", "transforms", "--out", path});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream f(path);
  REQUIRE(f.good());
  std::stringstream buf;
  buf << f.rdbuf();
  auto j = json::parse(buf.str());
  CHECK(j["pass"] == true);
  CHECK(j["config"]["out"] == path);
  std::remove(path.c_str());
}
