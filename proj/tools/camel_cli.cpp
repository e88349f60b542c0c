#include "commands.hpp"

#include "CLI11.hpp"

#include <iostream>

int main(int argc, char** argv) {
  using namespace camel::cli;

  CLI::App app{"Exact camel-and-bananas desert penetration: compute, trace, verify, fuzz"};
  app.require_subcommand(1);

  auto formats = CLI::IsMember({"text", "json", "csv"});
  std::uint64_t sim_cap = 512;

  ComputeOptions compute;
  auto* c = app.add_subcommand("compute", "Compute c(N) exactly");
  c->add_option("N", compute.n, "number of bananas")->required();
  c->add_option("--method", compute.method, "recurrence | closed | bound | simulate | all")
      ->check(CLI::IsMember({"recurrence", "closed", "bound", "simulate", "all"}));
  c->add_option("--format", compute.format)->check(formats);
  c->add_option("--digits", compute.digits, "significant digits of the decimal rendering")
      ->check(CLI::Range(1, 1000));
  c->add_option("--sim-cap", sim_cap, "largest N the simulator will run");

  TraceOptions trace;
  auto* t = app.add_subcommand("trace", "Emit the optimal strategy and its meal-time configurations");
  t->add_option("N", trace.n, "number of bananas")->required();
  t->add_option("--format", trace.format)->check(formats);
  t->add_option("--out", trace.out_file, "also write the JSON trace to this file");
  t->add_option("--configs", trace.configs_file, "write the per-meal configuration table (JSON) to this file");
  t->add_option("--sim-cap", sim_cap, "largest N the simulator will run");

  VerifyOptions verify;
  std::string verify_range;
  auto* v = app.add_subcommand("verify", "Run every identity and trace check over a range of N");
  v->add_option("RANGE", verify_range, "N or A..B")->required();
  v->add_option("--format", verify.format)->check(CLI::IsMember({"text", "json"}));
  v->add_option("--sim-cap", sim_cap, "largest N the simulator will run");

  FuzzOptions fuzz;
  auto* f = app.add_subcommand("fuzz", "Check random legal strategies against the optimality certificate");
  f->add_option("N", fuzz.n, "number of bananas")->required();
  f->add_option("--count", fuzz.count, "number of random traces");
  f->add_option("--seed", fuzz.seed, "first seed; trace i uses seed + i");
  f->add_option("--jobs", fuzz.jobs, "worker threads");
  f->add_option("--format", fuzz.format)->check(CLI::IsMember({"text", "json"}));
  f->add_option("--max-legs", fuzz.policy.max_legs, "free moves between meals");
  f->add_option("--denominator", fuzz.policy.denominator, "granularity of random fractions")
      ->check(CLI::PositiveNumber);
  f->add_option("--uwc-percent", fuzz.policy.uwc_percent, "chance of an optimal step at a meal")
      ->check(CLI::Range(0, 100));

  OracleOptions oracle;
  auto* o = app.add_subcommand("oracle", "Exhaustive optimum on a 1/k grid (N <= 4)");
  o->add_option("N", oracle.n, "number of bananas")->required();
  o->add_option("--grid", oracle.k, "grid density k")->required();
  o->add_option("--budget", oracle.budget, "maximum number of states to visit");
  o->add_option("--format", oracle.format)->check(CLI::IsMember({"text", "json"}));

  CheckTraceOptions check;
  auto* ct = app.add_subcommand("check-trace", "Validate a JSON trace and report the optimality inequalities");
  ct->add_option("FILE", check.file, "trace file, or - for stdin")->required();
  ct->add_option("--format", check.format)->check(CLI::IsMember({"text", "json"}));

  TableOptions table;
  std::string table_range;
  auto* tb = app.add_subcommand("table", "Tabulate c(N) over a range");
  tb->add_option("RANGE", table_range, "N or A..B")->required();
  tb->add_option("--format", table.format)->check(formats);
  tb->add_option("--digits", table.digits)->check(CLI::Range(1, 1000));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*c) {
      compute.sim_cap = sim_cap;
      return cmd_compute(compute, std::cout, std::cerr);
    }
    if (*t) {
      trace.sim_cap = sim_cap;
      return cmd_trace(trace, std::cout, std::cerr);
    }
    if (*v) {
      verify.range = parse_range(verify_range);
      verify.sim_cap = sim_cap;
      return cmd_verify(verify, std::cout, std::cerr);
    }
    if (*f) return cmd_fuzz(fuzz, std::cout, std::cerr);
    if (*o) return cmd_oracle(oracle, std::cout, std::cerr);
    if (*ct) return cmd_check_trace(check, std::cout, std::cerr);
    if (*tb) {
      table.range = parse_range(table_range);
      return cmd_table(table, std::cout, std::cerr);
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
