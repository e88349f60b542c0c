#include "catch2/catch_amalgamated.hpp"

#include "commands.hpp"

#include <filesystem>
#include <sstream>

using namespace camel;
using namespace camel::cli;
using Catch::Matchers::ContainsSubstring;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

template <typename Fn, typename Opts>
Run run(Fn fn, const Opts& opts) {
  std::ostringstream out, err;
  const int code = fn(opts, out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("camel_cli_test_" + name);
}

}  // namespace

TEST_CASE("compute", "[cli]") {
  ComputeOptions o;
  o.n = 7;
  auto r = run(cmd_compute, o);
  CHECK(r.code == kPass);
  CHECK_THAT(r.out, ContainsSubstring("c(7) = 25/8 = 3 1/8"));
  CHECK_THAT(r.out, ContainsSubstring("simulate: 25/8"));
  CHECK_THAT(r.out, ContainsSubstring("all methods agree"));

  o.n = 73083734;
  o.method = "closed";
  r = run(cmd_compute, o);
  CHECK_THAT(r.out, ContainsSubstring("14 1003590240076691/1125899906842624"));
  CHECK_THAT(r.out, ContainsSubstring("approx. 14.8913671934578"));

  o.n = 1;
  o.method = "all";
  o.format = "json";
  r = run(cmd_compute, o);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["value"] == "1");
  CHECK(j["agree"] == true);
  CHECK(j["methods"].size() == 4);
}

TEST_CASE("compute respects the simulation cap", "[cli]") {
  ComputeOptions o;
  o.n = 1000;
  o.method = "simulate";
  CHECK(run(cmd_compute, o).code == kResource);
  o.method = "all";
  const auto r = run(cmd_compute, o);
  CHECK(r.code == kPass);
  CHECK_THAT(r.out, ContainsSubstring("simulate: skipped"));
  o.n = 0;
  CHECK(run(cmd_compute, o).code == kUsage);
}

TEST_CASE("trace rows", "[cli]") {
  TraceOptions o;
  o.n = 5;
  auto r = run(cmd_trace, o);
  CHECK(r.code == kPass);
  CHECK(r.out ==
        "N=5: (0, 0, 0, 0, 0), (0, 0, 1/4, 1/4), (1/4, 1/4, 5/8), (5/6, 5/6), (1 5/6)  =>  c(5) = 2 5/6\n");
  o.n = 3;
  CHECK(run(cmd_trace, o).out == "N=3: (0, 0, 0), (1/3, 1/3), (1 1/3)  =>  c(3) = 2 1/3\n");
  o.n = 1;
  o.format = "json";
  CHECK(run(cmd_trace, o).out == R"({"moves":[{"op":"eat"},{"op":"walk","to":"1"}],"n":1})"
                                 "\n");
  o.n = 4;
  o.format = "csv";
  CHECK(run(cmd_trace, o).out == "meal,bananas,positions\n1,4,0 0 0 0\n2,3,0 0 1/2\n3,2,2/3 2/3\n4,1,5/3\n");
  o.n = 600;
  CHECK(run(cmd_trace, o).code == kResource);
}

TEST_CASE("trace files round-trip through check-trace", "[cli]") {
  const auto trace_path = temp_file("uwc6.json");
  const auto configs_path = temp_file("uwc6_configs.json");
  TraceOptions o;
  o.n = 6;
  o.out_file = trace_path.string();
  o.configs_file = configs_path.string();
  REQUIRE(run(cmd_trace, o).code == kPass);

  std::ifstream cf(configs_path);
  const auto configs = nlohmann::json::parse(cf);
  CHECK(configs.dump() ==
        R"([["0","0","0","0","0","0"],["0","0","0","0","1/2"],["0","0","1/2","1/2"],["1/2","1/2","3/4"],["1","1"],["2"]])");

  CheckTraceOptions c;
  c.file = trace_path.string();
  c.format = "json";
  const auto r = run(cmd_check_trace, c);
  CHECK(r.code == kPass);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["bound_ok"] == true);
  CHECK(j["worst_slack"] == "0");
  CHECK(j["reach"] == "3");

  std::filesystem::remove(trace_path);
  std::filesystem::remove(configs_path);
}

TEST_CASE("check-trace failures", "[cli]") {
  const auto path = temp_file("bad.json");
  CheckTraceOptions c;
  c.file = path.string();
  c.format = "json";

  std::ofstream(path) << R"({"n":2,"moves":[{"op":"eat"},{"op":"walk","to":"1"},{"op":"eat"}]})";
  auto r = run(cmd_check_trace, c);
  CHECK(r.code == kCheckFailed);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["rule"] == "no-banana-here");
  CHECK(j["move_index"] == 2);

  std::ofstream(path) << R"({"n":2,"moves":[{"op":"eat"}]})";
  CHECK(run(cmd_check_trace, c).code == kCheckFailed);

  std::ofstream(path) << R"({"n":2,"moves":[{"op":"eat","to":0.5}]} trailing)";
  CHECK(run(cmd_check_trace, c).code == kUsage);

  c.file = temp_file("does_not_exist.json").string();
  CHECK(run(cmd_check_trace, c).code == kUsage);
  std::filesystem::remove(path);
}

TEST_CASE("verify", "[cli]") {
  VerifyOptions o;
  o.range = parse_range("6..6");
  auto r = run(cmd_verify, o);
  CHECK(r.code == kPass);
  CHECK_THAT(r.out, ContainsSubstring("s = [2, 4, 5, 5, 5, 5], s_1 + 1 = 3"));

  o.range = parse_range("1");
  CHECK(run(cmd_verify, o).code == kPass);

  o.range = parse_range("2..40");
  o.format = "json";
  r = run(cmd_verify, o);
  CHECK(r.code == kPass);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["pass"] == true);
  for (const auto& check : j["checks"]) CHECK(check["failed"] == 0);

  CHECK_THROWS_AS(parse_range("5..2"), std::invalid_argument);
  CHECK_THROWS_AS(parse_range("0..2"), std::invalid_argument);
  CHECK_THROWS_AS(parse_range("a"), std::invalid_argument);
}

TEST_CASE("fuzz", "[cli]") {
  FuzzOptions o;
  o.n = 5;
  o.count = 200;
  o.seed = 7;
  auto r = run(cmd_fuzz, o);
  CHECK(r.code == kPass);
  CHECK_THAT(r.out, ContainsSubstring("200/200 ok"));

  o.format = "json";
  o.count = 3;
  r = run(cmd_fuzz, o);
  std::istringstream lines(r.out);
  std::string line;
  int seen = 0;
  while (std::getline(lines, line)) {
    const auto j = nlohmann::json::parse(line);
    CHECK(j["n"] == 5);
    CHECK(j["seed"] == 7 + seen);
    CHECK(j["bound"] == "17/6");
    CHECK(j["ok"] == true);
    ++seen;
  }
  CHECK(seen == 3);

  // identical output regardless of the worker count
  o.count = 40;
  o.jobs = 1;
  const auto one = run(cmd_fuzz, o).out;
  o.jobs = 4;
  CHECK(run(cmd_fuzz, o).out == one);
}

TEST_CASE("oracle", "[cli]") {
  OracleOptions o;
  o.n = 3;
  o.k = 3;
  auto r = run(cmd_oracle, o);
  CHECK(r.code == kPass);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["optimum"] == "7/3");
  CHECK(j["n"] == 3);
  CHECK(j["k"] == 3);
  CHECK(j["states_visited"].get<std::uint64_t>() > 0);

  o.budget = 10;
  CHECK(run(cmd_oracle, o).code == kResource);
  o.n = 9;
  CHECK(run(cmd_oracle, o).code == kUsage);
}

TEST_CASE("table", "[cli]") {
  TableOptions o;
  o.range = parse_range("1..4");
  CHECK(run(cmd_table, o).out ==
        "n,c_num,c_den,decimal\n1,1,1,1.00000000000000\n2,2,1,2.00000000000000\n"
        "3,7,3,2.33333333333333\n4,8,3,2.66666666666667\n");
  o.format = "json";
  const auto j = nlohmann::json::parse(run(cmd_table, o).out);
  CHECK(j.size() == 4);
  CHECK(j[2]["c"] == "7/3");
}
