#pragma once

// Rules of the desert: a camel on a half-line, one banana on its back, one in
// its stomach, one mile per banana. Strategies are replayed move by move and
// every rule violation is reported with the index of the offending move.

#include "camel/rational.hpp"

#include <algorithm>
#include <cstddef>
#include <functional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace camel {

struct Eat {
  friend bool operator==(const Eat&, const Eat&) = default;
};
struct Walk {
  Rational to;
  friend bool operator==(const Walk&, const Walk&) = default;
};
struct PickUp {
  friend bool operator==(const PickUp&, const PickUp&) = default;
};
struct Drop {
  friend bool operator==(const Drop&, const Drop&) = default;
};

using Move = std::variant<Eat, Walk, PickUp, Drop>;

struct Trace {
  std::size_t n = 0;
  std::vector<Move> moves;
};

enum class Rule {
  FuelExceeded,
  EatWithFuel,
  NoBananaHere,
  AlreadyCarrying,
  NotCarrying,
  NegativePosition,
};

inline const char* rule_name(Rule r) {
  switch (r) {
    case Rule::FuelExceeded: return "fuel-exceeded";
    case Rule::EatWithFuel: return "eat-with-fuel";
    case Rule::NoBananaHere: return "no-banana-here";
    case Rule::AlreadyCarrying: return "already-carrying";
    case Rule::NotCarrying: return "not-carrying";
    case Rule::NegativePosition: return "negative-position";
  }
  return "unknown";
}

class RuleViolation : public std::runtime_error {
public:
  RuleViolation(Rule rule, std::size_t move_index, const std::string& detail)
      : std::runtime_error(std::string(rule_name(rule)) + " at move " +
                           std::to_string(move_index) + ": " + detail),
        rule_(rule),
        move_index_(move_index) {}

  Rule rule() const { return rule_; }
  std::size_t move_index() const { return move_index_; }

private:
  Rule rule_;
  std::size_t move_index_;
};

struct WorldState {
  Rational camel_pos;
  Rational fuel;
  bool carrying = false;
  std::multiset<Rational> ground;
  std::vector<Rational> eaten;  // chronological
  Rational max_pos;
  Rational walked;  // total distance so far

  std::size_t banana_count() const { return eaten.size() + ground.size() + (carrying ? 1 : 0); }
};

inline WorldState initial_state(std::size_t n) {
  if (n == 0) throw std::invalid_argument("the stock must hold at least one banana");
  WorldState s;
  for (std::size_t i = 0; i < n; ++i) s.ground.insert(Rational(0));
  return s;
}

inline std::string describe(const Move& m) {
  struct {
    std::string operator()(const Eat&) const { return "eat"; }
    std::string operator()(const Walk& w) const { return "walk to " + w.to.str(); }
    std::string operator()(const PickUp&) const { return "pick"; }
    std::string operator()(const Drop&) const { return "drop"; }
  } v;
  return std::visit(v, m);
}

/// Applies one move. Takes the state by value so replay loops can move it through.
inline WorldState apply_move(WorldState s, const Move& move, std::size_t index = 0) {
  if (std::holds_alternative<Eat>(move)) {
    if (s.fuel.sign() != 0)
      throw RuleViolation(Rule::EatWithFuel, index, "stomach still holds " + s.fuel.str() + " mile(s)");
    auto it = s.ground.find(s.camel_pos);
    if (it == s.ground.end())
      throw RuleViolation(Rule::NoBananaHere, index, "nothing to eat at " + s.camel_pos.str());
    s.ground.erase(it);
    s.eaten.push_back(s.camel_pos);
    s.fuel = 1;
  } else if (const auto* w = std::get_if<Walk>(&move)) {
    if (w->to.sign() < 0)
      throw RuleViolation(Rule::NegativePosition, index, "target " + w->to.str() + " lies behind the stock");
    Rational dist = abs(w->to - s.camel_pos);
    if (dist > s.fuel)
      throw RuleViolation(Rule::FuelExceeded, index,
                          "walk of " + dist.str() + " with " + s.fuel.str() + " left");
    s.fuel -= dist;
    s.walked += dist;
    s.camel_pos = w->to;
    if (s.max_pos < s.camel_pos) s.max_pos = s.camel_pos;
  } else if (std::holds_alternative<PickUp>(move)) {
    if (s.carrying) throw RuleViolation(Rule::AlreadyCarrying, index, "back already loaded");
    auto it = s.ground.find(s.camel_pos);
    if (it == s.ground.end())
      throw RuleViolation(Rule::NoBananaHere, index, "nothing to pick up at " + s.camel_pos.str());
    s.ground.erase(it);
    s.carrying = true;
  } else {
    if (!s.carrying) throw RuleViolation(Rule::NotCarrying, index, "nothing to drop");
    s.carrying = false;
    s.ground.insert(s.camel_pos);
  }
  return s;
}

struct TraceSummary {
  std::size_t n = 0;
  std::vector<Rational> eating_sorted;  // e'_1 >= e'_2 >= ... >= e'_N
  std::vector<Rational> s_prime;        // s'_1 .. s'_N
  std::vector<Rational> eaten_in_order;
  Rational max_pos;
  bool complete = false;
};

/// s_k = e_1 + 2 * (e_2 + ... + e_k) for k = 1..N; input sorted descending.
inline std::vector<Rational> weighted_prefix_sums(std::span<const Rational> eating_sorted) {
  if (eating_sorted.empty()) throw std::invalid_argument("no eating positions");
  std::vector<Rational> s;
  s.reserve(eating_sorted.size());
  s.push_back(eating_sorted[0]);
  for (std::size_t k = 1; k < eating_sorted.size(); ++k)
    s.push_back(s.back() + 2 * eating_sorted[k]);
  return s;
}

/// Replays the whole trace and returns the final world state.
inline WorldState replay(const Trace& trace) {
  WorldState s = initial_state(trace.n);
  for (std::size_t i = 0; i < trace.moves.size(); ++i) s = apply_move(std::move(s), trace.moves[i], i);
  return s;
}

inline TraceSummary summarize(std::size_t n, const WorldState& s) {
  TraceSummary out;
  out.n = n;
  out.eaten_in_order = s.eaten;
  out.max_pos = s.max_pos;
  out.complete = s.eaten.size() == n;
  out.eating_sorted = s.eaten;
  // Uneaten bananas are not eating positions; an incomplete trace reports only what was eaten.
  std::sort(out.eating_sorted.begin(), out.eating_sorted.end(), std::greater<>());
  if (!out.eating_sorted.empty()) out.s_prime = weighted_prefix_sums(out.eating_sorted);
  return out;
}

inline TraceSummary validate_trace(const Trace& trace) { return summarize(trace.n, replay(trace)); }

}  // namespace camel
