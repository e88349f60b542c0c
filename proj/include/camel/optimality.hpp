#pragma once

// Evidence that no legal strategy beats c(N):
//   * lemma_b_report checks the chain inequalities s'_k <= ... on any complete
//     trace and compares it against the optimal chain,
//   * random_trace produces seeded legal strategies to feed it,
//   * grid_oracle solves the problem exactly on a 1/k grid for tiny N.

#include "camel/camel_function.hpp"
#include "camel/desert_model.hpp"
#include "camel/uwc_strategy.hpp"

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

namespace camel {

class ResourceError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Optimal chain s_1..s_N and reach c(N). N = 1 is the trivial chain [0].
inline SChain reference_chain(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("N must be positive");
  if (n == 1) return {{Rational(0)}, Rational(1)};
  return s_chain(n);
}

inline Rational certify_upper_bound(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("N must be positive");
  if (n == 1) return Rational(1);
  return s_chain_bound(n);
}

struct InequalityCheck {
  std::size_t k = 0;
  Rational lhs;
  Rational rhs;

  bool ok() const { return lhs <= rhs; }
  Rational slack() const { return rhs - lhs; }
};

struct LemmaBReport {
  std::size_t n = 0;
  std::vector<InequalityCheck> saturated;   // s'_k <= N - 1, k >= N/2
  std::vector<InequalityCheck> recurrence;  // s'_k <= s'_{2k-1}/4 + s'_{2k}/4 + (2k-1)/2, k <= N/2
  std::vector<InequalityCheck> dominance;   // s'_k <= s_k
  InequalityCheck reach;                    // max position <= c(N)
  bool clause1_ok = true;
  bool clause2_ok = true;
  bool dominance_ok = true;
  bool bound_ok = true;
  Rational worst_slack;

  bool all_ok() const { return clause1_ok && clause2_ok && dominance_ok && bound_ok; }
};

inline LemmaBReport lemma_b_report(const TraceSummary& summary, const SChain& reference) {
  if (!summary.complete)
    throw std::invalid_argument("trace is incomplete: " + std::to_string(summary.eating_sorted.size()) +
                                " of " + std::to_string(summary.n) + " bananas eaten");
  const std::size_t n = summary.n;
  if (reference.s.size() != n) throw std::invalid_argument("reference chain has the wrong length");
  const auto& sp = summary.s_prime;

  LemmaBReport r;
  r.n = n;
  const Rational top(static_cast<long>(n) - 1);
  for (std::size_t k = 1; k <= n; ++k) {
    if (2 * k >= n) r.saturated.push_back({k, sp[k - 1], top});
    if (2 * k <= n)
      r.recurrence.push_back(
          {k, sp[k - 1], sp[2 * k - 2] / 4 + sp[2 * k - 1] / 4 + Rational(static_cast<long>(2 * k - 1), 2)});
  }
  // descending, the order in which the chaining argument uses them
  for (std::size_t k = n; k >= 1; --k) r.dominance.push_back({k, sp[k - 1], reference.s[k - 1]});
  r.reach = {0, summary.max_pos, reference.bound};

  auto all = [](const std::vector<InequalityCheck>& v) {
    return std::all_of(v.begin(), v.end(), [](const InequalityCheck& c) { return c.ok(); });
  };
  r.clause1_ok = all(r.saturated);
  r.clause2_ok = all(r.recurrence);
  r.dominance_ok = all(r.dominance);
  r.bound_ok = r.reach.ok();

  r.worst_slack = r.reach.slack();
  for (const auto* group : {&r.saturated, &r.recurrence, &r.dominance})
    for (const auto& c : *group) r.worst_slack = min(r.worst_slack, c.slack());
  return r;
}

inline LemmaBReport lemma_b_report(const TraceSummary& summary) {
  return lemma_b_report(summary, reference_chain(summary.n));
}

/// Knobs for the random strategy generator. Percentages are 0..100.
struct FuzzPolicy {
  unsigned max_legs = 4;          // free moves between meals
  unsigned denominator = 12;      // granularity of random fractions
  unsigned pick_percent = 70;     // pick up a banana lying where the camel stands
  unsigned drop_percent = 50;     // drop the carried banana after a leg
  unsigned uwc_percent = 10;      // take an optimal step when the meal allows one
  unsigned full_final_percent = 80;  // walk the whole last mile forward
};

namespace detail {

class TraceBuilder {
public:
  explicit TraceBuilder(std::size_t n) : state_(initial_state(n)) { trace_.n = n; }

  void emit(const Move& m) {
    state_ = apply_move(std::move(state_), m, trace_.moves.size());
    trace_.moves.push_back(m);
  }
  void walk(const Rational& to) {
    if (to != state_.camel_pos) emit(Walk{to});
  }

  const WorldState& state() const { return state_; }
  Trace take() { return std::move(trace_); }

private:
  WorldState state_;
  Trace trace_;
};

}  // namespace detail

/// Seeded random legal strategy that eats all N bananas.
///
/// Two invariants rule out stranding. Between meals the camel keeps a banana
/// within reach: either it carries one, or some ground banana is no further
/// away than its remaining fuel. And all uneaten bananas stay inside one mile,
/// so after any meal the next banana is reachable on a full stomach. Each meal
/// ends by walking to a reachable banana and burning leftover fuel on a
/// forward out-and-back, so the next Eat happens on an empty stomach.
inline Trace random_trace(std::size_t n, std::uint64_t seed, const FuzzPolicy& policy = {}) {
  if (n == 0) throw std::invalid_argument("the stock must hold at least one banana");
  std::mt19937_64 rng(seed);
  auto below = [&rng](std::uint64_t bound) { return bound == 0 ? 0 : rng() % bound; };
  auto chance = [&](unsigned percent) { return below(100) < percent; };
  const unsigned den = std::max(1u, policy.denominator);
  auto fraction = [&] { return Rational(static_cast<long>(below(den + 1)), static_cast<long>(den)); };

  detail::TraceBuilder b(n);
  auto reachable = [&b] {
    const auto& s = b.state();
    std::vector<Rational> out;
    for (auto it = s.ground.begin(); it != s.ground.end(); it = s.ground.upper_bound(*it))
      if (abs(*it - s.camel_pos) <= s.fuel) out.push_back(*it);
    return out;
  };

  while (b.state().eaten.size() < n) {
    if (b.state().carrying) b.emit(Drop{});

    if (policy.uwc_percent && chance(policy.uwc_percent)) {
      BananaConfig cfg{b.state().ground};
      if (cfg.camel_at() == b.state().camel_pos && within_half_mile(cfg.positions) && is_paired(cfg.positions)) {
        if (cfg.size() > 3) {
          auto step = cfg.size() % 2 == 0 ? even_step(cfg) : odd_step(cfg);
          for (const auto& m : step.moves) b.emit(m);
        } else {
          for (const auto& m : final_phase(cfg).moves) b.emit(m);
        }
        continue;
      }
    }

    b.emit(Eat{});
    if (b.state().eaten.size() == n) {
      const Rational out = chance(policy.full_final_percent) ? Rational(1) : fraction();
      b.walk(b.state().camel_pos + out);
      break;
    }

    const auto legs = below(policy.max_legs + 1);
    for (std::uint64_t leg = 0; leg < legs; ++leg) {
      const auto& s = b.state();
      if (!s.carrying && s.ground.count(s.camel_pos) && chance(policy.pick_percent)) b.emit(PickUp{});
      Rational lo, hi;
      if (b.state().carrying) {
        lo = max(Rational(0), s.camel_pos - s.fuel);
        hi = s.camel_pos + s.fuel;
        if (!s.ground.empty()) {
          lo = max(lo, *s.ground.rbegin() - 1);
          hi = min(hi, *s.ground.begin() + 1);
        }
      } else {
        // stay within reach of a chosen banana
        const auto targets = reachable();
        const Rational& anchor = targets[below(targets.size())];
        lo = max(Rational(0), (s.camel_pos + anchor - s.fuel) / 2);
        hi = (s.camel_pos + anchor + s.fuel) / 2;
      }
      b.walk(lo + fraction() * (hi - lo));
      if (b.state().carrying && chance(policy.drop_percent)) b.emit(Drop{});
    }

    if (b.state().carrying) b.emit(Drop{});
    const auto targets = reachable();
    const Rational home = targets[below(targets.size())];
    b.walk(home);
    const Rational spare = b.state().fuel;
    if (spare.sign() > 0) {
      b.walk(home + spare / 2);
      b.walk(home);
    }
  }
  return b.take();
}

struct OracleResult {
  Rational optimum;
  std::uint64_t states_visited = 0;
};

/// Exact optimum of the problem restricted to positions and fuel in multiples
/// of 1/k: exhaustive search over (position, fuel, carrying, ground multiset).
/// Walks are single grid steps; Eat needs an empty stomach.
inline OracleResult grid_oracle(std::size_t n, std::size_t k, std::uint64_t state_budget = 20'000'000) {
  if (n == 0 || n > 4) throw std::invalid_argument("grid oracle supports 1 <= N <= 4");
  if (k == 0) throw std::invalid_argument("grid density must be positive");
  const std::size_t limit = n * k;  // no position beyond N miles is reachable
  if (limit > 255) throw ResourceError("grid oracle packs indices in 8 bits; N*k must be <= 255");

  struct State {
    std::uint8_t pos = 0;
    std::uint8_t fuel = 0;
    bool carrying = false;
    std::uint8_t count = 0;
    std::array<std::uint8_t, 4> ground{};  // sorted, first `count` used

    std::uint64_t key() const {
      std::uint64_t h = pos;
      h = (h << 8) | fuel;
      h = (h << 1) | (carrying ? 1u : 0u);
      h = (h << 3) | count;
      for (std::size_t i = 0; i < 4; ++i) h = (h << 8) | (i < count ? ground[i] : 0);
      return h;
    }
    int find(std::uint8_t p) const {
      for (int i = 0; i < count; ++i)
        if (ground[i] == p) return i;
      return -1;
    }
    void remove(int idx) {
      for (int i = idx; i + 1 < count; ++i) ground[i] = ground[i + 1];
      ground[--count] = 0;
    }
    void insert(std::uint8_t p) {
      int i = count++;
      while (i > 0 && ground[i - 1] > p) {
        ground[i] = ground[i - 1];
        --i;
      }
      ground[i] = p;
    }
  };

  State start;
  start.count = static_cast<std::uint8_t>(n);
  std::unordered_set<std::uint64_t> seen;
  std::vector<State> stack{start};
  seen.insert(start.key());
  std::size_t best = 0;

  auto push = [&](const State& s) {
    if (seen.insert(s.key()).second) {
      if (seen.size() > state_budget)
        throw ResourceError("grid oracle exceeded its state budget of " + std::to_string(state_budget));
      stack.push_back(s);
    }
  };

  while (!stack.empty()) {
    const State s = stack.back();
    stack.pop_back();
    best = std::max<std::size_t>(best, s.pos + s.fuel);

    if (s.fuel > 0) {
      if (s.pos < limit) {
        State t = s;
        ++t.pos;
        --t.fuel;
        push(t);
      }
      if (s.pos > 0) {
        State t = s;
        --t.pos;
        --t.fuel;
        push(t);
      }
    }
    const int here = s.find(s.pos);
    if (here >= 0 && s.fuel == 0) {
      State t = s;
      t.remove(here);
      t.fuel = static_cast<std::uint8_t>(k);
      push(t);
    }
    if (here >= 0 && !s.carrying) {
      State t = s;
      t.remove(here);
      t.carrying = true;
      push(t);
    }
    if (s.carrying) {
      State t = s;
      t.carrying = false;
      t.insert(s.pos);
      push(t);
    }
  }
  return {Rational(static_cast<long>(best), static_cast<long>(k)), seen.size()};
}

}  // namespace camel
