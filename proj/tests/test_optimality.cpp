#include "catch2/catch_amalgamated.hpp"

#include "camel/optimality.hpp"
#include "oracles.hpp"

using namespace camel;
using oracle::q;

TEST_CASE("optimal traces meet every inequality with equality", "[optimality]") {
  for (std::size_t n = 1; n <= 20; ++n) {
    INFO("N = " << n);
    const auto r = lemma_b_report(validate_trace(uwc_trace(n)));
    CHECK(r.all_ok());
    CHECK(r.worst_slack == 0);
    for (const auto& c : r.saturated) CHECK(c.slack() == 0);
    for (const auto& c : r.recurrence) CHECK(c.slack() == 0);
    for (const auto& c : r.dominance) CHECK(c.slack() == 0);
  }
}

TEST_CASE("a wasteful strategy stays inside the bound", "[optimality]") {
  // N = 4, moving bananas only a quarter mile per trip and burning the rest
  const Trace t{4,
                {// meal at 0: ferry one banana to 1/4, return, burn 1/2
                 Eat{}, PickUp{}, Walk{q(1, 4)}, Drop{}, Walk{q(0)}, Walk{q(1, 4)}, Walk{q(0)},
                 // meal at 0: ferry the last stock banana to 1/4, burn 3/4 there
                 Eat{}, PickUp{}, Walk{q(1, 4)}, Drop{}, Walk{q(5, 8)}, Walk{q(1, 4)},
                 // meal at 1/4: push the other banana to 1/2, burn 3/4 there
                 Eat{}, PickUp{}, Walk{q(1, 2)}, Drop{}, Walk{q(7, 8)}, Walk{q(1, 2)},
                 // last meal at 1/2, then walk out
                 Eat{}, Walk{q(3, 2)}}};
  const auto summary = validate_trace(t);
  REQUIRE(summary.complete);
  CHECK(summary.eating_sorted == std::vector<Rational>{q(1, 2), q(1, 4), 0, 0});
  CHECK(summary.max_pos == q(3, 2));
  const auto r = lemma_b_report(summary);
  CHECK(r.all_ok());
  CHECK(r.bound_ok);
  CHECK(r.reach.slack() == q(8, 3) - q(3, 2));
  CHECK(r.worst_slack > 0);
}

TEST_CASE("two-banana optimum", "[optimality]") {
  const auto s = validate_trace(Trace{2, {Eat{}, PickUp{}, Walk{q(1)}, Drop{}, Eat{}, Walk{q(2)}}});
  const auto r = lemma_b_report(s);
  CHECK(s.s_prime.front() == 1);
  CHECK(r.dominance.back().lhs == 1);
  CHECK(r.dominance.back().rhs == 1);
  CHECK(r.all_ok());
}

TEST_CASE("incomplete traces are refused", "[optimality]") {
  const auto s = validate_trace(Trace{2, {Eat{}}});
  CHECK_THROWS_AS(lemma_b_report(s), std::invalid_argument);
}

TEST_CASE("certified ceiling", "[optimality]") {
  CHECK(certify_upper_bound(3) == q(7, 3));
  CHECK(certify_upper_bound(1) == 1);
  CHECK(certify_upper_bound(73083734) == 14 + Rational(BigInt("1003590240076691"), BigInt("1125899906842624")));
  CHECK_THROWS_AS(certify_upper_bound(0), std::invalid_argument);
}

TEST_CASE("random traces are legal, complete and deterministic", "[optimality][fuzz]") {
  for (std::size_t n = 1; n <= 8; ++n) {
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
      INFO("N = " << n << ", seed = " << seed);
      const Trace t = random_trace(n, seed);
      const auto summary = validate_trace(t);
      REQUIRE(summary.complete);
      CHECK(summary.eating_sorted.back() == 0);
      CHECK(summary.max_pos <= summary.eating_sorted.front() + 1);
      Rational skins;
      for (const auto& e : summary.eating_sorted) skins += e;
      CHECK(skins <= (Rational(static_cast<long>(n)) - 1 + summary.eating_sorted.front()) / 2);
      CHECK(lemma_b_report(summary).all_ok());
      CHECK(random_trace(n, seed).moves == t.moves);
    }
  }
}

TEST_CASE("fuzz extremes", "[optimality][fuzz]") {
  FuzzPolicy lazy;
  lazy.max_legs = 0;
  lazy.uwc_percent = 0;
  FuzzPolicy eager;
  eager.uwc_percent = 100;
  eager.full_final_percent = 100;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    CHECK(validate_trace(random_trace(1, seed, lazy)).max_pos <= 1);
    CHECK(validate_trace(random_trace(2, seed)).max_pos <= 2);
    // always taking the optimal step reproduces the optimum exactly
    for (std::size_t n : {2u, 5u, 9u}) CHECK(validate_trace(random_trace(n, seed, eager)).max_pos == c_closed(n));
    const auto r = lemma_b_report(validate_trace(random_trace(6, seed, lazy)));
    CHECK(r.all_ok());
  }
  FuzzPolicy fine;
  fine.denominator = 97;
  fine.max_legs = 9;
  for (std::uint64_t seed = 0; seed < 20; ++seed)
    CHECK(lemma_b_report(validate_trace(random_trace(10, seed, fine))).all_ok());
}

TEST_CASE("grid oracle attains c(N) on the right grid", "[optimality][oracle]") {
  CHECK(grid_oracle(1, 1).optimum == 1);
  CHECK(grid_oracle(2, 2).optimum == 2);
  CHECK(grid_oracle(3, 3).optimum == q(7, 3));
  CHECK(grid_oracle(4, 6).optimum == q(8, 3));
}

TEST_CASE("grid oracle soundness and refinement", "[optimality][oracle]") {
  for (std::size_t n = 1; n <= 3; ++n) {
    Rational prev;
    for (std::size_t k : {1u, 2u, 4u, 8u}) {
      INFO("N = " << n << ", k = " << k);
      const auto r = grid_oracle(n, k);
      CHECK(r.optimum <= certify_upper_bound(n));
      CHECK(prev <= r.optimum);
      prev = r.optimum;
    }
  }
  for (std::size_t k : {1u, 2u, 3u, 4u, 5u}) CHECK(grid_oracle(4, k).optimum <= q(8, 3));
  CHECK(grid_oracle(4, 2).optimum <= grid_oracle(4, 4).optimum);
  // thirds do not contain the N = 4 optimum (it needs sixths)
  CHECK(grid_oracle(4, 3).optimum < q(8, 3));
}

TEST_CASE("grid oracle limits", "[optimality][oracle]") {
  CHECK_THROWS_AS(grid_oracle(5, 2), std::invalid_argument);
  CHECK_THROWS_AS(grid_oracle(2, 0), std::invalid_argument);
  CHECK_THROWS_AS(grid_oracle(4, 100), ResourceError);
  CHECK_THROWS_WITH(grid_oracle(3, 4, 50), Catch::Matchers::ContainsSubstring("budget of 50"));
}
