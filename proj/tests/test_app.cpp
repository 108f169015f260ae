#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "doctest.h"
#include "oracles.hpp"
#include "xxz/app/cache.hpp"
#include "xxz/app/check.hpp"
#include "xxz/app/cli.hpp"
#include "xxz/app/commands.hpp"
#include "xxz/app/config.hpp"
#include "xxz/app/format.hpp"
#include "xxz/app/pool.hpp"
#include "xxz/errors.hpp"

using namespace xxz;
using namespace xxz::app;
namespace fs = std::filesystem;

namespace {

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

fs::path scratch_dir(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("xxzent_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

struct Cli {
  int code;
  std::string out, err;
};

Cli cli(std::vector<std::string> args) {
  args.insert(args.begin(), "xxzent");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("config text and value parsing") {
    const auto kv = parse_config_text("# header\nL = 4, 8 # sizes\n\nmethod=ed\n  phi = pi/2\n");
    CHECK(kv.size() == 3);
    CHECK(kv.at("L") == "4, 8");
    CHECK(kv.at("method") == "ed");
    CHECK_THROWS_AS(parse_config_text("no equals sign"), UsageError);

    RunConfig cfg;
    for (const auto& [k, v] : kv) apply_setting(cfg, k, v);
    CHECK(*cfg.sizes == std::vector<int>{4, 8});
    CHECK(cfg.phi == std::numbers::pi / 2);
    CHECK_THROWS_AS(apply_setting(cfg, "colour", "blue"), UsageError);
    CHECK_THROWS_AS(apply_setting(cfg, "method", "qmc"), UsageError);

    const auto r = parse_real_list("-0.9:0.9:0.3");
    REQUIRE(r.size() == 7);
    CHECK(r[3] == 0.0);
    CHECK(std::signbit(r[3]) == false);
    CHECK(parse_real("2pi/3") == 2 * std::numbers::pi / 3);
    CHECK(parse_real("-pi") == -std::numbers::pi);
    CHECK(parse_real_list("").empty());
    CHECK_THROWS_AS(parse_real_list("1:0:0.1"), UsageError);
    CHECK(parse_int_list(" 4,8 ,16") == std::vector<int>{4, 8, 16});

    cfg.precision = 5;
    CHECK_THROWS_AS(cfg.validate(), UsageError);
    cfg.precision = 15;
    CHECK_NOTHROW(cfg.validate());
  }

  TEST_CASE("fixed-point formatting") {
    CHECK(fixed(0.1, 12) == "0.100000000000");
    CHECK(fixed(-1e-20, 6) == "0.000000");
    CHECK(fixed(-0.5, 6) == "-0.500000");
    CHECK(fixed(1024.0, 6) == "1024.000000");
    Csv csv({"a", "b"});
    csv.row({"1", "2"});
    CHECK(csv.str() == "a,b\n1,2\n");
    CHECK_THROWS(csv.row({"1"}));
  }

  TEST_CASE("worker pool keeps input order and rethrows") {
    const auto v = parallel_map<int>(100, 7, [](int i) { return i * i; });
    for (int i = 0; i < 100; ++i) CHECK(v[i] == i * i);
    CHECK_THROWS_AS(parallel_map<int>(10, 3,
                                      [](int i) -> int {
                                        if (i == 4) throw DomainError("boom");
                                        return i;
                                      }),
                    DomainError);
  }

  TEST_CASE("result cache round trip, collision and corruption") {
    const fs::path dir = scratch_dir("cache");
    const ResultCache cache(dir);
    const std::string key = cache_key("exact", "ed", {{"L", 8}, {"delta", -0.3}});
    const std::vector<double> v{0.1, -1.0 / 3.0, 1e-300};
    int calls = 0;
    auto compute = [&] {
      ++calls;
      return v;
    };
    CHECK(cache.fetch(key, compute) == v);
    CHECK(cache.fetch(key, compute) == v);
    CHECK(calls == 1);
    CHECK(cache.get(cache_key("exact", "ed", {{"L", 8}, {"delta", -0.30000000000000004}})) ==
          std::nullopt);
    for (const auto& e : fs::directory_iterator(dir)) {
      std::ofstream(e.path(), std::ios::trunc) << "garbage";
    }
    CHECK(cache.fetch(key, compute) == v);
    CHECK(calls == 2);
    CHECK(cache.corrupted() == 1);
    CHECK(cache.fetch(key, compute) == v);
    CHECK(calls == 2);
    CHECK(fnv1a("") == 0xcbf29ce484222325ull);
    CHECK(fnv1a("a") == 0xaf63dc4c8601ec8cull);
  }

  TEST_CASE("table rows") {
    RunConfig cfg;
    cfg.command = Command::Table;
    cfg.table_id = 1;
    cfg.sizes = std::vector<int>{};
    CHECK(run_table(cfg) == "L,method,N_exact,N_cft,diff,L2_diff\n");

    cfg.table_id = 4;
    cfg.sizes = std::vector<int>{4, 8};
    cfg.methods = std::vector<Method>{Method::ED};
    auto rows = parse_csv(run_table(cfg));
    REQUIRE(rows.size() == 3);
    CHECK(rows[1][2] == "0.400000000000");
    CHECK(rows[2][2] == "0.381121448251");
    CHECK(rows[1][3] == "NA");

    cfg.table_id = 2;
    cfg.methods = std::vector<Method>{Method::ED, Method::CFT};
    rows = parse_csv(run_table(cfg));
    for (int i : {1, 2}) {
      const int L = std::stoi(rows[i][0]);
      const auto g = oracle::ground(L, -0.5);
      CHECK(std::stod(rows[i][2]) == doctest::Approx(oracle::negativity(oracle::rdm12(L, g.psi))).epsilon(1e-11));
      CHECK(std::abs(std::stod(rows[i][4]) - (std::stod(rows[i][2]) - std::stod(rows[i][3]))) < 2e-12);
    }

    cfg.table_id = 4;
    cfg.sizes = std::vector<int>{32};
    cfg.methods = std::vector<Method>{Method::ED};
    CHECK_THROWS_AS(run_table(cfg), InfeasibleError);
    cfg.table_id = 2;
    cfg.methods = std::vector<Method>{Method::FreeFermion};
    CHECK_THROWS_AS(run_table(cfg), InfeasibleError);
  }

  TEST_CASE("table 5 degrades to UNAVAILABLE marginal cells") {
    RunConfig cfg;
    cfg.command = Command::Table;
    cfg.table_id = 5;
    cfg.sizes = std::vector<int>{16};
    cfg.methods = std::vector<Method>{Method::ED};
    const auto rows = parse_csv(run_table(cfg));
    REQUIRE(rows.size() == 6);
    CHECK(rows[0] == std::vector<std::string>{"L", "delta", "N_marginal", "N_ground"});
    for (int i = 1; i < 6; ++i) CHECK(rows[i][2] == "UNAVAILABLE");
    CHECK(rows[3][3] == "0.345995599194");
  }

  TEST_CASE("figure data") {
    RunConfig cfg;
    cfg.command = Command::Fig;
    cfg.fig_id = 1;
    cfg.sizes = std::vector<int>{4, 8};
    cfg.deltas = parse_real_list("-0.6:0.6:0.3");
    const auto rows = parse_csv(run_fig(cfg));
    REQUIRE(rows.size() == 1 + 3 * 5);
    // eps decreases as d eps / d delta grows along each curve.
    for (int c = 0; c < 3; ++c)
      for (int i = 1; i < 5; ++i) {
        const auto& a = rows[1 + c * 5 + i - 1];
        const auto& b = rows[1 + c * 5 + i];
        CHECK(std::stod(b[2]) < std::stod(a[2]));
        CHECK(std::stod(b[3]) > std::stod(a[3]));
      }
    CHECK(rows.back()[0] == "inf");

    RunConfig g;
    g.command = Command::Fig;
    g.fig_id = 2;
    g.sizes = std::vector<int>{8};
    g.sectors = std::vector<int>{0};
    g.deltas = parse_real_list("-0.5,0,0.5");
    RunConfig s;
    s.command = Command::Sweep;
    s.sizes = std::vector<int>{8};
    s.deltas = g.deltas;
    s.methods = std::vector<Method>{Method::ED};
    const auto fr = parse_csv(run_fig(g));
    const auto sr = parse_csv(run_sweep(s));
    REQUIRE(fr.size() == 4);
    REQUIRE(sr.size() == 4);
    for (int i = 1; i < 4; ++i) CHECK(fr[i][4] == sr[i][4]);
  }

  TEST_CASE("determinism and cache transparency") {
    RunConfig cfg;
    cfg.command = Command::Sweep;
    cfg.sizes = std::vector<int>{6, 8, 32};
    cfg.deltas = parse_real_list("-0.4:0.4:0.2");
    cfg.phi = 0.7;
    cfg.precision = 15;
    cfg.methods = std::vector<Method>{Method::Bethe, Method::CFT};
    const std::string plain = run_sweep(cfg);
    cfg.jobs = 4;
    CHECK(run_sweep(cfg) == plain);
    cfg.cache_dir = scratch_dir("transparency");
    CHECK(run_sweep(cfg) == plain);
    CHECK(run_sweep(cfg) == plain);
  }

  TEST_CASE("command line exit codes") {
    CHECK(cli({"table", "--id", "9"}).code == 2);
    CHECK(cli({"frobnicate"}).code == 2);
    CHECK(cli({"table", "--id", "1", "--precision", "3"}).code == 2);
    CHECK(cli({"table", "--id", "4", "--method", "ed", "--L", "32"}).code == 3);
    const Cli ok = cli({"table", "--id", "1", "--L", "4,8", "--precision", "8"});
    CHECK(ok.code == 0);
    CHECK(ok.out ==
          "L,method,N_exact,N_cft,diff,L2_diff\n"
          "4,ff,0.45710678,0.44637865,0.01072813,0.17165005\n"
          "8,ff,0.36666983,0.36604127,0.00062856,0.04022797\n");

    const fs::path dir = scratch_dir("cli");
    std::ofstream(dir / "run.conf") << "# flags override file\nL = 4\nprecision = 6\n";
    const Cli c = cli({"table", "--id", "2", "--config", (dir / "run.conf").string(), "--precision",
                       "9", "--out", (dir / "t.csv").string()});
    CHECK(c.code == 0);
    CHECK(c.out.empty());
    std::ifstream in(dir / "t.csv");
    std::stringstream ss;
    ss << in.rdbuf();
    CHECK(ss.str() == "L,method,N_exact,N_cft,diff,L2_diff\n4,ed,0.489830038,0.478556230,0.011273808,0.180380923\n");

    const std::string bin = XXZENT_PATH;
    CHECK(std::system((bin + " table --id 0 > /dev/null 2>&1").c_str()) != 0);
    CHECK(std::system((bin + " table --id 1 --L 4 > /dev/null 2>&1").c_str()) == 0);
  }

  TEST_CASE("check reports skips with a lowered ed cap") {
    RunConfig cfg;
    cfg.ed_max_L = 4;
    const CriterionResult one = run_criterion(1, cfg);
    CHECK(one.status == Status::Skipped);
    const CriterionResult two = run_criterion(2, cfg);
    CHECK(two.status == Status::Pass);
    std::vector<CriterionResult> rs{one, two};
    CHECK(exit_code(rs) == 3);
    rs.push_back({3, Status::Fail, 1.0, 0.5, "x"});
    CHECK(exit_code(rs) == 1);
    const std::string report = format_report({one, two});
    CHECK(report.rfind("criterion,status,measured,tolerance,detail\n1,SKIPPED,NA,NA,", 0) == 0);
  }
}
