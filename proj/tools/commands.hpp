#pragma once

// Subcommand bodies for the `camel` tool. Each takes its parsed arguments plus
// output streams and returns the process exit code, so tests can drive them
// without spawning a process.

#include "camel/camel.hpp"

#include "json.hpp"

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace camel::cli {

enum Exit : int { kPass = 0, kCheckFailed = 1, kUsage = 2, kResource = 3 };

struct Range {
  std::uint64_t first = 1;
  std::uint64_t last = 1;
};

/// "A..B" or "A".
inline Range parse_range(const std::string& text) {
  auto number = [&](const std::string& s) {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
      throw std::invalid_argument("bad range '" + text + "'");
    return std::stoull(s);
  };
  const auto dots = text.find("..");
  Range r;
  if (dots == std::string::npos) {
    r.first = r.last = number(text);
  } else {
    r.first = number(text.substr(0, dots));
    r.last = number(text.substr(dots + 2));
  }
  if (r.first == 0 || r.last < r.first) throw std::invalid_argument("bad range '" + text + "'");
  return r;
}

inline bool verbose() {
  const char* v = std::getenv("CAMEL_LOG");
  return v && std::string(v) != "0" && std::string(v) != "quiet";
}

inline std::string row_text(const std::vector<Rational>& row) {
  std::string out = "(";
  for (std::size_t i = 0; i < row.size(); ++i) out += (i ? ", " : "") + row[i].mixed();
  return out + ")";
}

struct ComputeOptions {
  std::uint64_t n = 1;
  std::string method = "all";
  std::string format = "text";
  std::uint64_t sim_cap = 512;
  int digits = 15;
};

inline int cmd_compute(const ComputeOptions& o, std::ostream& out, std::ostream& err) {
  if (o.n == 0) {
    err << "compute: N must be at least 1\n";
    return kUsage;
  }
  const bool all = o.method == "all";
  std::vector<std::pair<std::string, Rational>> values;
  std::string skipped;
  if (all || o.method == "recurrence") values.emplace_back("recurrence", c_recurrence(o.n));
  if (all || o.method == "closed") values.emplace_back("closed", c_closed(o.n));
  if (all || o.method == "bound") values.emplace_back("bound", certify_upper_bound(o.n));
  if (all || o.method == "simulate") {
    if (o.n > o.sim_cap) {
      if (!all) {
        err << "compute: simulation of N = " << o.n << " exceeds the cap of " << o.sim_cap
            << " (raise it with --sim-cap)\n";
        return kResource;
      }
      skipped = "simulate";
    } else {
      const auto summary = validate_trace(uwc_trace(o.n));
      values.emplace_back("simulate", summary.max_pos);
    }
  }
  if (values.empty()) {
    err << "compute: unknown method '" << o.method << "'\n";
    return kUsage;
  }

  const Rational& value = values.front().second;
  bool agree = true;
  for (const auto& [name, v] : values) agree = agree && v == value;

  if (o.format == "json") {
    nlohmann::json j{{"n", o.n}, {"value", value.str()}, {"mixed", value.mixed()},
                     {"decimal", value.decimal(o.digits)}, {"agree", agree}};
    for (const auto& [name, v] : values) j["methods"][name] = v.str();
    if (!skipped.empty()) j["skipped"] = {skipped};
    out << j.dump() << "\n";
  } else if (o.format == "csv") {
    out << "n,method,c_num,c_den,decimal\n";
    for (const auto& [name, v] : values)
      out << o.n << "," << name << "," << v.numerator().get_str() << "," << v.denominator().get_str() << ","
          << v.decimal(o.digits) << "\n";
  } else {
    out << "c(" << o.n << ") = " << value.str();
    if (!value.is_integer()) out << " = " << value.mixed();
    out << "  (approx. " << value.decimal(o.digits) << ")\n";
    if (values.size() > 1 || !skipped.empty()) {
      for (const auto& [name, v] : values) out << "  " << name << ": " << v.str() << "\n";
      if (!skipped.empty()) out << "  " << skipped << ": skipped (N above --sim-cap)\n";
      out << (agree ? "all methods agree\n" : "METHODS DISAGREE\n");
    }
  }
  if (!agree) {
    err << "compute: methods disagree for N = " << o.n << "\n";
    return kCheckFailed;
  }
  return kPass;
}

struct TraceOptions {
  std::uint64_t n = 1;
  std::string format = "text";
  std::uint64_t sim_cap = 512;
  std::string out_file;
  std::string configs_file;
};

inline nlohmann::json configs_json(const std::vector<std::vector<Rational>>& rows) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& row : rows) {
    nlohmann::json r = nlohmann::json::array();
    for (const auto& p : row) r.push_back(p.str());
    j.push_back(std::move(r));
  }
  return j;
}

inline int cmd_trace(const TraceOptions& o, std::ostream& out, std::ostream& err) {
  if (o.n == 0) {
    err << "trace: N must be at least 1\n";
    return kUsage;
  }
  if (o.n > o.sim_cap) {
    err << "trace: N = " << o.n << " exceeds the simulation cap of " << o.sim_cap << "\n";
    return kResource;
  }
  const UwcRun run = uwc_run(o.n);
  const auto rows = meal_configs(run.trace);

  if (!o.out_file.empty()) {
    std::ofstream f(o.out_file);
    if (!f) {
      err << "trace: cannot write " << o.out_file << "\n";
      return kUsage;
    }
    f << trace_to_json(run.trace).dump(1) << "\n";
  }
  if (!o.configs_file.empty()) {
    std::ofstream f(o.configs_file);
    if (!f) {
      err << "trace: cannot write " << o.configs_file << "\n";
      return kUsage;
    }
    f << configs_json(rows).dump() << "\n";
  }

  if (o.format == "json") {
    out << trace_to_json(run.trace).dump() << "\n";
  } else if (o.format == "csv") {
    out << "meal,bananas,positions\n";
    for (std::size_t i = 0; i < rows.size(); ++i) {
      out << i + 1 << "," << rows[i].size() << ",";
      for (std::size_t j = 0; j < rows[i].size(); ++j) out << (j ? " " : "") << rows[i][j].str();
      out << "\n";
    }
  } else {
    out << "N=" << o.n << ": ";
    for (std::size_t i = 0; i < rows.size(); ++i) out << (i ? ", " : "") << row_text(rows[i]);
    out << "  =>  c(" << o.n << ") = " << run.reach.mixed() << "\n";
  }
  return kPass;
}

struct VerifyOptions {
  Range range;
  std::uint64_t sim_cap = 512;
  std::string format = "text";
};

/// Tallies of one named family of checks, with the first counterexample.
struct CheckTally {
  explicit CheckTally(std::string n) : name(std::move(n)) {}

  std::string name;
  std::uint64_t run = 0;
  std::uint64_t failed = 0;
  std::string first_failure;

  void record(bool ok, const std::string& what) {
    ++run;
    if (!ok && failed++ == 0) first_failure = what;
  }
};

inline int cmd_verify(const VerifyOptions& o, std::ostream& out, std::ostream& err) {
  const auto [lo, hi] = o.range;
  CheckTally methods{"recurrence = closed = chain bound"};
  CheckTally halving{"halving identities on the closed form"};
  CheckTally lambda{"lambda rows"};
  CheckTally legal{"UWC trace legal and reaches c(N)"};
  CheckTally meals{"meal-time structure"};
  CheckTally eating{"eating-position recurrence"};
  CheckTally chain{"chain identities"};
  CheckTally skins{"skin sum = (N - 1 + e_1)/2"};

  CamelRecurrence rec;
  std::vector<LambdaRow> rows = lambda_rows(std::max<std::uint64_t>(hi, 2));
  auto c = [](std::uint64_t n) { return c_closed(n); };

  for (std::uint64_t n = lo; n <= hi; ++n) {
    const std::string at = "N=" + std::to_string(n);
    if (verbose()) err << "verify: " << at << "\n";
    const Rational closed = c(n);
    methods.record(rec(n) == closed && certify_upper_bound(n) == closed, at);

    halving.record(c(2 * n + 1) == (c(2 * n) + c(2 * n + 2)) / 2 &&
                       c(2 * n) == (c(n) + c(n + 1) + 1) / 2,
                   at);

    if (n >= 2) {
      const LambdaRow& row = rows[n - 2];
      bool ok = row.weight_sum() == 1 && row.coeffs[0] == c(2 * n) &&
                row.coeffs[1] == 4 * (c(2 * n + 1) - c(2 * n));
      ok = ok && c(4 * n) == Rational(1, 2) + row.coeffs[1] / 8 + row.coeffs[0] &&
           c(4 * n + 2) == Rational(1, 2) + 3 * row.coeffs[1] / 8 + row.coeffs[0];
      lambda.record(ok, "n=" + std::to_string(n));
    }

    if (n > o.sim_cap) continue;
    const Trace trace = uwc_trace(n);
    TraceSummary summary;
    try {
      summary = validate_trace(trace);
    } catch (const RuleViolation& e) {
      legal.record(false, at + ": " + e.what());
      continue;
    }
    legal.record(summary.complete && summary.max_pos == closed,
                 at + ": reach " + summary.max_pos.str() + " vs " + closed.str());

    const auto report = check_meal_invariants(trace);
    const auto* bad = report.first_failure();
    meals.record(bad == nullptr, bad ? at + ": meal " + std::to_string(bad->meal + 1) + " " + row_text(bad->config) : at);

    const auto& e = summary.eating_sorted;
    bool rec_ok = true;
    std::size_t bad_index = 0;
    for (std::size_t i = 2; 2 * i <= n; ++i)
      if (!eating_recurrence_holds(e, i)) {
        rec_ok = false;
        bad_index = i;
        break;
      }
    eating.record(rec_ok, at + ": index " + std::to_string(bad_index));

    const auto clauses = check_chain_identities(summary.s_prime);
    bool chain_ok = clauses.all();
    if (n >= 2) chain_ok = chain_ok && summary.s_prime == s_chain(n).s;
    chain.record(chain_ok, at + ": k=" + std::to_string(clauses.first_bad_k));

    Rational total;
    for (const auto& x : e) total += x;
    skins.record(total == (Rational(static_cast<long>(n)) - 1 + e.front()) / 2, at);

    if (lo == hi && o.format == "text") {
      out << "s = [";
      for (std::size_t k = 0; k < summary.s_prime.size(); ++k) out << (k ? ", " : "") << summary.s_prime[k];
      out << "], s_1 + 1 = " << (summary.s_prime.front() + 1) << "\n";
    }
  }

  const std::vector<const CheckTally*> all{&methods, &halving, &lambda, &legal, &meals, &eating, &chain, &skins};
  bool pass = true;
  for (const auto* t : all) pass = pass && t->failed == 0;

  if (o.format == "json") {
    nlohmann::json j{{"from", lo}, {"to", hi}, {"pass", pass}};
    for (const auto* t : all) {
      nlohmann::json tj{{"name", t->name}, {"run", t->run}, {"failed", t->failed}};
      if (t->failed) tj["first_failure"] = t->first_failure;
      j["checks"].push_back(tj);
    }
    out << j.dump() << "\n";
  } else {
    for (const auto* t : all) {
      out << (t->failed ? "FAIL " : "ok   ") << t->name << ": " << t->run - t->failed << "/" << t->run;
      if (t->failed) out << "  first counterexample: " << t->first_failure;
      out << "\n";
    }
    out << (pass ? "all checks passed" : "verification FAILED") << " for N = " << lo << ".." << hi << "\n";
  }
  for (const auto* t : all)
    if (t->failed) err << "verify: " << t->name << " failed at " << t->first_failure << "\n";
  return pass ? kPass : kCheckFailed;
}

struct FuzzOptions {
  std::uint64_t n = 2;
  std::uint64_t count = 1000;
  std::uint64_t seed = 1;
  unsigned jobs = 1;
  std::string format = "text";
  FuzzPolicy policy;
};

struct FuzzOutcome {
  std::uint64_t seed = 0;
  Rational reach;
  bool ok = false;
  std::string error;
};

inline FuzzOutcome fuzz_one(std::uint64_t n, std::uint64_t seed, const FuzzPolicy& policy, const SChain& reference) {
  FuzzOutcome r;
  r.seed = seed;
  try {
    const auto summary = validate_trace(random_trace(n, seed, policy));
    r.reach = summary.max_pos;
    r.ok = lemma_b_report(summary, reference).all_ok();
  } catch (const std::exception& e) {
    r.error = e.what();
  }
  return r;
}

inline int cmd_fuzz(const FuzzOptions& o, std::ostream& out, std::ostream& err) {
  if (o.n == 0) {
    err << "fuzz: N must be at least 1\n";
    return kUsage;
  }
  const SChain reference = reference_chain(o.n);
  std::vector<FuzzOutcome> results(o.count);
  const unsigned jobs = std::max(1u, o.jobs);
  std::vector<std::thread> workers;
  for (unsigned w = 0; w < jobs; ++w)
    workers.emplace_back([&, w] {
      for (std::uint64_t i = w; i < o.count; i += jobs) results[i] = fuzz_one(o.n, o.seed + i, o.policy, reference);
    });
  for (auto& t : workers) t.join();

  std::uint64_t ok = 0;
  Rational best;
  const FuzzOutcome* first_bad = nullptr;
  for (const auto& r : results) {
    if (r.ok) ++ok;
    else if (!first_bad) first_bad = &r;
    if (best < r.reach) best = r.reach;
    if (o.format == "json")
      out << nlohmann::json{{"n", o.n}, {"seed", r.seed}, {"reach", r.reach.str()},
                            {"bound", reference.bound.str()}, {"ok", r.ok}}
                 .dump()
          << "\n";
  }
  if (o.format != "json") {
    out << ok << "/" << o.count << " ok, max observed reach " << best.str() << " (" << best.decimal(6) << ")"
        << (best < reference.bound ? " < " : best == reference.bound ? " = " : " > ") << "bound "
        << reference.bound.str() << "\n";
  }
  if (first_bad) {
    err << "fuzz: seed " << first_bad->seed << " failed"
        << (first_bad->error.empty() ? std::string(" the chain inequalities") : ": " + first_bad->error) << "\n";
    return kCheckFailed;
  }
  return kPass;
}

struct OracleOptions {
  std::uint64_t n = 2;
  std::uint64_t k = 2;
  std::uint64_t budget = 20'000'000;
  std::string format = "json";
};

inline int cmd_oracle(const OracleOptions& o, std::ostream& out, std::ostream& err) {
  OracleResult r;
  try {
    r = grid_oracle(o.n, o.k, o.budget);
  } catch (const ResourceError& e) {
    err << "oracle: " << e.what() << "\n";
    return kResource;
  } catch (const std::invalid_argument& e) {
    err << "oracle: " << e.what() << "\n";
    return kUsage;
  }
  const Rational bound = certify_upper_bound(o.n);
  if (o.format == "text") {
    out << "grid optimum for N=" << o.n << " on a 1/" << o.k << " grid: " << r.optimum.str() << " ("
        << r.states_visited << " states); c(" << o.n << ") = " << bound.str() << "\n";
  } else {
    out << nlohmann::json{{"n", o.n}, {"k", o.k}, {"optimum", r.optimum.str()}, {"states_visited", r.states_visited}}
               .dump()
        << "\n";
  }
  if (bound < r.optimum) {
    err << "oracle: grid optimum " << r.optimum.str() << " exceeds c(N) = " << bound.str() << "\n";
    return kCheckFailed;
  }
  return kPass;
}

inline nlohmann::json report_json(const LemmaBReport& r, const TraceSummary& s) {
  nlohmann::json j{{"n", r.n},
                   {"reach", s.max_pos.str()},
                   {"bound", r.reach.rhs.str()},
                   {"clause1_ok", r.clause1_ok},
                   {"clause2_ok", r.clause2_ok},
                   {"dominance_ok", r.dominance_ok},
                   {"bound_ok", r.bound_ok},
                   {"worst_slack", r.worst_slack.str()}};
  nlohmann::json e = nlohmann::json::array();
  for (const auto& x : s.eating_sorted) e.push_back(x.str());
  j["eating_sorted"] = std::move(e);
  return j;
}

struct CheckTraceOptions {
  std::string file;
  std::string format = "text";
};

inline int cmd_check_trace(const CheckTraceOptions& o, std::ostream& out, std::ostream& err) {
  std::string text;
  if (o.file == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    text = ss.str();
  } else {
    std::ifstream f(o.file);
    if (!f) {
      err << "check-trace: cannot read " << o.file << "\n";
      return kUsage;
    }
    std::ostringstream ss;
    ss << f.rdbuf();
    text = ss.str();
  }
  Trace trace;
  try {
    trace = parse_trace(text);
  } catch (const std::invalid_argument& e) {
    err << "check-trace: " << e.what() << "\n";
    return kUsage;
  }
  TraceSummary summary;
  try {
    summary = validate_trace(trace);
  } catch (const RuleViolation& e) {
    if (o.format == "json")
      out << nlohmann::json{{"n", trace.n}, {"legal", false}, {"rule", rule_name(e.rule())},
                            {"move_index", e.move_index()}}
                 .dump()
          << "\n";
    else
      out << "illegal: " << e.what() << "\n";
    return kCheckFailed;
  }
  if (!summary.complete) {
    err << "check-trace: incomplete trace, " << summary.eating_sorted.size() << " of " << trace.n
        << " bananas eaten\n";
    return kCheckFailed;
  }
  const LemmaBReport r = lemma_b_report(summary);
  if (o.format == "json") {
    auto j = report_json(r, summary);
    j["legal"] = true;
    out << j.dump() << "\n";
  } else {
    out << "legal trace, N=" << r.n << ", reach " << summary.max_pos.str() << " (c(N) = " << r.reach.rhs.str()
        << ")\n";
    out << "  clause s'_k <= N-1:     " << (r.clause1_ok ? "ok" : "FAIL") << "\n";
    out << "  clause s'_k recurrence: " << (r.clause2_ok ? "ok" : "FAIL") << "\n";
    out << "  dominance s'_k <= s_k:  " << (r.dominance_ok ? "ok" : "FAIL") << "\n";
    out << "  bound_ok:               " << (r.bound_ok ? "ok" : "FAIL") << "\n";
    out << "  worst slack:            " << r.worst_slack.str() << "\n";
  }
  return r.all_ok() ? kPass : kCheckFailed;
}

struct TableOptions {
  Range range;
  std::string format = "csv";
  int digits = 15;
};

inline int cmd_table(const TableOptions& o, std::ostream& out, std::ostream&) {
  if (o.format == "json") {
    nlohmann::json j = nlohmann::json::array();
    for (std::uint64_t n = o.range.first; n <= o.range.last; ++n) {
      const Rational v = c_closed(n);
      j.push_back({{"n", n}, {"c", v.str()}, {"mixed", v.mixed()}, {"decimal", v.decimal(o.digits)}});
    }
    out << j.dump() << "\n";
  } else if (o.format == "text") {
    for (std::uint64_t n = o.range.first; n <= o.range.last; ++n) {
      const Rational v = c_closed(n);
      out << "c(" << n << ") = " << v.mixed() << "  (" << v.decimal(o.digits) << ")\n";
    }
  } else {
    out << "n,c_num,c_den,decimal\n";
    for (std::uint64_t n = o.range.first; n <= o.range.last; ++n) {
      const Rational v = c_closed(n);
      out << n << "," << v.numerator().get_str() << "," << v.denominator().get_str() << "," << v.decimal(o.digits)
          << "\n";
    }
  }
  return kPass;
}

}  // namespace camel::cli
