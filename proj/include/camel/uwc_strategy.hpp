#pragma once

// The optimal shuttle strategy. Between meals the bananas form pairs (plus one
// sole furthest banana when the count is odd), the camel stands at the hindmost
// pair and everything fits in half a mile. Each step eats from the hindmost
// pair and moves the other banana of that pair forward; with three or fewer
// bananas left the camel stops returning and pushes everything to the end.

#include "camel/desert_model.hpp"

#include <cstddef>
#include <iterator>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace camel {

class InvalidConfig : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Banana positions at meal-time. The camel stands at the minimum.
struct BananaConfig {
  std::multiset<Rational> positions;

  static BananaConfig stock(std::size_t n) {
    BananaConfig c;
    for (std::size_t i = 0; i < n; ++i) c.positions.insert(Rational(0));
    return c;
  }

  std::size_t size() const { return positions.size(); }
  const Rational& camel_at() const { return *positions.begin(); }
  const Rational& front() const { return *positions.rbegin(); }
  std::vector<Rational> sorted() const { return {positions.begin(), positions.end()}; }
};

/// True if the multiset splits into co-located pairs, plus (for odd sizes) one
/// leftover banana at the maximum position.
inline bool is_paired(const std::multiset<Rational>& positions) {
  if (positions.empty()) return true;
  const Rational& top = *positions.rbegin();
  for (auto it = positions.begin(); it != positions.end();) {
    const auto count = positions.count(*it);
    const bool odd = count % 2 == 1;
    if (odd && (positions.size() % 2 == 0 || *it != top)) return false;
    it = positions.upper_bound(*it);
  }
  return true;
}

inline bool within_half_mile(const std::multiset<Rational>& positions) {
  if (positions.empty()) return true;
  return *positions.rbegin() - *positions.begin() <= Rational(1, 2);
}

namespace detail {

inline void require_meal_config(const BananaConfig& c, const char* who) {
  if (c.positions.empty()) throw InvalidConfig(std::string(who) + ": no bananas");
  if (!within_half_mile(c.positions))
    throw InvalidConfig(std::string(who) + ": bananas spread over more than half a mile");
  if (!is_paired(c.positions)) throw InvalidConfig(std::string(who) + ": bananas are not paired");
}

// Builds a move list while tracking the camel's position, so zero-length
// walks and back-to-back pick/drop no-ops never get emitted.
class MoveWriter {
public:
  explicit MoveWriter(Rational at) : at_(std::move(at)) {}

  void eat() { moves_.emplace_back(Eat{}); }
  void pick() {
    if (!moves_.empty() && std::holds_alternative<Drop>(moves_.back())) {
      moves_.pop_back();
      return;
    }
    moves_.emplace_back(PickUp{});
  }
  void drop() {
    if (!moves_.empty() && std::holds_alternative<PickUp>(moves_.back())) {
      moves_.pop_back();
      return;
    }
    moves_.emplace_back(Drop{});
  }
  void walk(const Rational& to) {
    if (to == at_) return;
    moves_.emplace_back(Walk{to});
    at_ = to;
  }

  std::vector<Move> take() { return std::move(moves_); }

private:
  Rational at_;
  std::vector<Move> moves_;
};

inline Rational take_min(std::multiset<Rational>& s) {
  Rational v = *s.begin();
  s.erase(s.begin());
  return v;
}

}  // namespace detail

struct StepResult {
  BananaConfig next;
  std::vector<Move> moves;
};

/// Even banana count (at least 4): eat one of the hindmost pair, carry the
/// other as far as the remaining fuel allows while still returning to the new
/// hindmost banana.
inline StepResult even_step(const BananaConfig& config) {
  if (config.size() < 4 || config.size() % 2 != 0)
    throw InvalidConfig("even_step needs an even count of at least 4, got " + std::to_string(config.size()));
  detail::require_meal_config(config, "even_step");

  StepResult r{config, {}};
  auto& pos = r.next.positions;
  const Rational q = detail::take_min(pos);
  detail::take_min(pos);
  const Rational q_next = *pos.begin();
  const Rational target = (q + q_next + 1) / 2;
  pos.insert(target);

  detail::MoveWriter w(q);
  w.eat();
  w.pick();
  w.walk(target);
  w.drop();
  w.walk(q_next);
  r.moves = w.take();
  return r;
}

/// Odd banana count (at least 5): eat one of the hindmost pair, bring the
/// other up to the sole furthest banana, then leapfrog both forward by the
/// distance d that leaves exactly enough fuel to return.
inline StepResult odd_step(const BananaConfig& config) {
  if (config.size() < 5 || config.size() % 2 != 1)
    throw InvalidConfig("odd_step needs an odd count of at least 5, got " + std::to_string(config.size()));
  detail::require_meal_config(config, "odd_step");

  StepResult r{config, {}};
  auto& pos = r.next.positions;
  const Rational q = detail::take_min(pos);
  detail::take_min(pos);
  const Rational q_next = *pos.begin();
  const Rational f = *pos.rbegin();
  pos.erase(std::prev(pos.end()));
  const Rational d = (1 + q + q_next - 2 * f) / 4;
  const Rational ahead = f + d;
  pos.insert(ahead);
  pos.insert(ahead);

  detail::MoveWriter w(q);
  w.eat();
  w.pick();
  w.walk(f);
  w.drop();
  if (d.sign() != 0) {
    w.pick();
    w.walk(ahead);
    w.drop();
    w.walk(f);
    w.pick();
    w.walk(ahead);
    w.drop();
  }
  w.walk(q_next);
  r.moves = w.take();
  return r;
}

struct FinalResult {
  Rational distance;
  std::vector<Move> moves;
};

/// Endgame for one to three bananas; the camel never turns back.
inline FinalResult final_phase(const BananaConfig& config) {
  if (config.size() < 1 || config.size() > 3)
    throw InvalidConfig("final_phase needs 1 to 3 bananas, got " + std::to_string(config.size()));
  detail::require_meal_config(config, "final_phase");

  const auto sorted = config.sorted();
  detail::MoveWriter w(sorted.front());
  Rational pair_at = sorted.front();

  if (sorted.size() == 1) {
    w.eat();
    w.walk(pair_at + 1);
    return {pair_at + 1, w.take()};
  }
  if (sorted.size() == 3) {
    const Rational& p = sorted[0];
    const Rational& f = sorted[2];
    const Rational d = (1 - (f - p)) / 3;
    w.eat();
    w.pick();
    w.walk(f);
    w.drop();
    w.pick();
    w.walk(f + d);
    w.drop();
    w.walk(f);
    w.pick();
    w.walk(f + d);
    w.drop();
    pair_at = f + d;
  }
  w.eat();
  w.pick();
  w.walk(pair_at + 1);
  w.drop();
  w.eat();
  w.walk(pair_at + 2);
  return {pair_at + 2, w.take()};
}

struct UwcRun {
  Trace trace;
  Rational reach;
};

inline UwcRun uwc_run(std::size_t n) {
  if (n == 0) throw std::invalid_argument("the stock must hold at least one banana");
  UwcRun run;
  run.trace.n = n;
  auto& moves = run.trace.moves;
  BananaConfig config = BananaConfig::stock(n);
  while (config.size() > 3) {
    StepResult step = config.size() % 2 == 0 ? even_step(config) : odd_step(config);
    moves.insert(moves.end(), std::make_move_iterator(step.moves.begin()),
                 std::make_move_iterator(step.moves.end()));
    config = std::move(step.next);
  }
  FinalResult fin = final_phase(config);
  moves.insert(moves.end(), std::make_move_iterator(fin.moves.begin()),
               std::make_move_iterator(fin.moves.end()));
  run.reach = std::move(fin.distance);
  return run;
}

inline Trace uwc_trace(std::size_t n) { return uwc_run(n).trace; }

/// Ground configuration (sorted, carried banana included at the camel's spot)
/// just before each Eat of the trace.
inline std::vector<std::vector<Rational>> meal_configs(const Trace& trace) {
  std::vector<std::vector<Rational>> rows;
  WorldState s = initial_state(trace.n);
  for (std::size_t i = 0; i < trace.moves.size(); ++i) {
    if (std::holds_alternative<Eat>(trace.moves[i])) {
      std::multiset<Rational> all = s.ground;
      if (s.carrying) all.insert(s.camel_pos);
      rows.emplace_back(all.begin(), all.end());
    }
    s = apply_move(std::move(s), trace.moves[i], i);
  }
  return rows;
}

/// Eating positions in ascending order: e_N <= ... <= e_1.
inline std::vector<Rational> uwc_eating_positions(std::size_t n) {
  auto e = replay(uwc_trace(n)).eaten;
  std::sort(e.begin(), e.end());
  return e;
}

struct MealCheck {
  std::size_t meal = 0;        // 0-based
  std::size_t move_index = 0;  // index of the Eat
  std::vector<Rational> config;
  bool camel_at_min = false;
  bool within_half_mile = false;
  bool paired = false;

  bool ok() const { return camel_at_min && within_half_mile && paired; }
};

struct MealReport {
  std::vector<MealCheck> meals;

  bool all_pass() const {
    return std::all_of(meals.begin(), meals.end(), [](const MealCheck& m) { return m.ok(); });
  }
  const MealCheck* first_failure() const {
    for (const auto& m : meals)
      if (!m.ok()) return &m;
    return nullptr;
  }
};

/// Checks the meal-time structure (camel with the hindmost banana, half-mile
/// spread, pairing) at every Eat of the trace.
inline MealReport check_meal_invariants(const Trace& trace) {
  MealReport report;
  WorldState s = initial_state(trace.n);
  for (std::size_t i = 0; i < trace.moves.size(); ++i) {
    if (std::holds_alternative<Eat>(trace.moves[i])) {
      std::multiset<Rational> all = s.ground;
      if (s.carrying) all.insert(s.camel_pos);
      MealCheck m;
      m.meal = report.meals.size();
      m.move_index = i;
      m.config.assign(all.begin(), all.end());
      m.camel_at_min = !all.empty() && *all.begin() == s.camel_pos;
      m.within_half_mile = camel::within_half_mile(all);
      m.paired = is_paired(all);
      report.meals.push_back(std::move(m));
    }
    s = apply_move(std::move(s), trace.moves[i], i);
  }
  return report;
}

}  // namespace camel
