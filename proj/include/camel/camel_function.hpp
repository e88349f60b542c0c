#pragma once

// The penetration distance c(N), computed three independent ways:
//   * the halving recurrence  c(2n+1) = (c(2n) + c(2n+2))/2,
//                             c(2n)   = (c(n) + c(n+1) + 1)/2,  c(1) = 1
//   * the closed form         c(n) = F(n, h(n)) with h(n) the largest power of two <= n
//   * the weighted eating-position chain s_1 .. s_N, whose s_1 + 1 is c(N)
// plus the affine coefficients expressing c(N) through the eating positions.

#include "camel/rational.hpp"

#include <array>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

namespace camel {

namespace detail {

// Gauss-Jordan elimination over the rationals for a small dense system.
template <std::size_t Dim>
std::array<Rational, Dim> solve_linear(std::array<std::array<Rational, Dim>, Dim> a,
                                       std::array<Rational, Dim> b) {
  for (std::size_t col = 0; col < Dim; ++col) {
    std::size_t pivot = col;
    while (pivot < Dim && a[pivot][col].sign() == 0) ++pivot;
    if (pivot == Dim) throw std::domain_error("singular linear system");
    std::swap(a[pivot], a[col]);
    std::swap(b[pivot], b[col]);
    for (std::size_t row = 0; row < Dim; ++row) {
      if (row == col || a[row][col].sign() == 0) continue;
      const Rational factor = a[row][col] / a[col][col];
      for (std::size_t j = col; j < Dim; ++j) a[row][j] -= factor * a[col][j];
      b[row] -= factor * b[col];
    }
  }
  std::array<Rational, Dim> x;
  for (std::size_t i = 0; i < Dim; ++i) x[i] = b[i] / a[i][i];
  return x;
}

}  // namespace detail

/// Memoized evaluation of the halving recurrence.
///
/// c(2), c(3) and c(4) refer to each other (c(2) to itself, c(3) and c(4)
/// mutually), so they come from one 3x3 linear solve of the n = 1 and m = 1
/// instances; every larger argument reduces to strictly smaller ones.
///
/// An instance is not thread-safe; use one per thread.
class CamelRecurrence {
public:
  CamelRecurrence() {
    memo_.emplace(1, Rational(1));
    const Rational h(1, 2);
    // unknowns: c(2), c(3), c(4)
    const auto base = detail::solve_linear<3>(
        {{{1 - h, 0, 0},     // c2 = c1/2 + c2/2 + 1/2
          {-h, 1, -h},       // c3 = c2/2 + c4/2
          {-h, -h, 1}}},     // c4 = c2/2 + c3/2 + 1/2
        {h * memo_.at(1) + h, 0, h});
    memo_.emplace(2, base[0]);
    memo_.emplace(3, base[1]);
    memo_.emplace(4, base[2]);
  }

  const Rational& operator()(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("c(n) needs n >= 1");
    if (auto it = memo_.find(n); it != memo_.end()) return it->second;
    Rational v;
    if (n % 2 == 0) {
      const std::uint64_t m = n / 2;
      v = ((*this)(m) + (*this)(m + 1) + 1) / 2;
    } else {
      const std::uint64_t m = n / 2;
      v = ((*this)(2 * m) + (*this)(2 * m + 2)) / 2;
    }
    return memo_.emplace(n, std::move(v)).first->second;
  }

  std::size_t memo_size() const { return memo_.size(); }

private:
  std::unordered_map<std::uint64_t, Rational> memo_;
};

inline Rational c_recurrence(std::uint64_t n) {
  CamelRecurrence c;
  return c(n);
}

/// g(x) = -x^2/6 + x + 1
inline Rational g_eval(const Rational& x) { return -(x * x) / 6 + x + 1; }

inline std::uint64_t h_floor_pow2(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("h(n) needs n >= 1");
  return std::bit_floor(n);
}

/// F(n, m) = log2(m)/2 + g((n-1)/m) + ((n-1) mod 2)/(6 m^2), for m a power of two.
inline Rational f_closed(std::uint64_t n, std::uint64_t m) {
  if (n == 0) throw std::invalid_argument("F(n, m) needs n >= 1");
  if (!std::has_single_bit(m))
    throw std::domain_error("F(n, m) is only rational for m a power of two, got m = " + std::to_string(m));
  const long k = std::countr_zero(m);
  const Rational mq{BigInt(static_cast<unsigned long>(m))};
  const Rational x = Rational(BigInt(static_cast<unsigned long>(n - 1))) / mq;
  Rational out = Rational(k, 2) + g_eval(x);
  if ((n - 1) % 2 == 1) out += 1 / (6 * mq * mq);
  return out;
}

inline Rational c_closed(std::uint64_t n) { return f_closed(n, h_floor_pow2(n)); }

struct FIdentities {
  bool doubling = false;   // F(2m, 2m) = F(2m, m)
  bool odd_mean = false;   // F(2n+1, m) = (F(2n, m) + F(2n+2, m)) / 2
  bool halving = false;    // F(2n, 2m) = (F(n, m) + F(n+1, m) + 1) / 2

  bool all() const { return doubling && odd_mean && halving; }
};

inline FIdentities verify_f_identities(std::uint64_t n, std::uint64_t m) {
  if (!std::has_single_bit(m)) throw std::domain_error("m must be a power of two");
  FIdentities r;
  r.doubling = f_closed(2 * m, 2 * m) == f_closed(2 * m, m);
  r.odd_mean = f_closed(2 * n + 1, m) == (f_closed(2 * n, m) + f_closed(2 * n + 2, m)) / 2;
  r.halving = f_closed(2 * n, 2 * m) == (f_closed(n, m) + f_closed(n + 1, m) + 1) / 2;
  return r;
}

/// c(N) = coeffs[0] + sum_{i=1..n} coeffs[i] * e_{n+i}, valid whenever 2n <= N.
struct LambdaRow {
  std::size_t n = 0;
  std::vector<Rational> coeffs;

  Rational weight_sum() const {
    Rational s;
    for (std::size_t i = 1; i < coeffs.size(); ++i) s += coeffs[i];
    return s;
  }
};

/// Advances row n to row n+1 by substituting
/// e_{n+1} = e_{2n}/4 + e_{2n+1}/2 + e_{2n+2}/4 + 1/2.
inline LambdaRow next_lambda_row(const LambdaRow& row) {
  const std::size_t n = row.n;
  const Rational& lead = row.coeffs[1];
  LambdaRow next;
  next.n = n + 1;
  next.coeffs.resize(n + 2);
  next.coeffs[0] = row.coeffs[0] + lead / 2;
  for (std::size_t i = 1; i + 1 <= n; ++i) next.coeffs[i] = row.coeffs[i + 1];
  next.coeffs[n - 1] += lead / 4;  // e_{2n}
  next.coeffs[n] = lead / 2;       // e_{2n+1}
  next.coeffs[n + 1] = lead / 4;   // e_{2n+2}
  return next;
}

inline LambdaRow lambda_base_row() {
  // c = e_2 + 2 and e_2 = 2/3 e_3 + 1/3 e_4 + 2/3
  return {2, {Rational(8, 3), Rational(2, 3), Rational(1, 3)}};
}

inline LambdaRow lambda_coeffs(std::size_t n) {
  if (n < 2) throw std::domain_error("lambda rows start at n = 2");
  LambdaRow row = lambda_base_row();
  while (row.n < n) row = next_lambda_row(row);
  return row;
}

/// Rows 2..max_n, built incrementally.
inline std::vector<LambdaRow> lambda_rows(std::size_t max_n) {
  std::vector<LambdaRow> rows;
  if (max_n < 2) return rows;
  rows.push_back(lambda_base_row());
  while (rows.back().n < max_n) rows.push_back(next_lambda_row(rows.back()));
  return rows;
}

struct SChain {
  std::vector<Rational> s;  // s_1 .. s_N
  Rational bound;           // s_1 + 1
};

/// The eating-position chain for N bananas, evaluated top-down from the
/// saturated tail s_k = N - 1 (k >= N/2).
inline SChain s_chain(std::uint64_t big_n) {
  if (big_n < 2) throw std::invalid_argument("s_chain needs N >= 2");
  const auto n = static_cast<std::size_t>(big_n);
  SChain out;
  out.s.assign(n, Rational(static_cast<long>(n - 1)));
  // s[k-1] holds s_k; indices with 2k < N follow the recurrence
  for (std::size_t k = (n - 1) / 2; k >= 2; --k)
    out.s[k - 1] = out.s[2 * k - 2] / 4 + out.s[2 * k - 1] / 4 + Rational(static_cast<long>(2 * k - 1), 2);
  if (2 < n)  // s_1 = s_1/4 + s_2/4 + 1/2
    out.s[0] = (out.s[1] + 2) / 3;
  out.bound = out.s[0] + 1;
  return out;
}

/// s_1 + 1 of the same chain without materializing it.
///
/// The chain is a binary tree: s_k depends on s_{2k-1} and s_{2k}, whose
/// depth-d descendants are the indices 2^d (k-1) + 1 .. 2^d k. When every
/// descendant at depth d is saturated (>= N/2) and none above is, s_k is an
/// affine function of k whose coefficients depend only on d. Only the
/// O(log^2 N) nodes straddling the saturation threshold are expanded.
class SChainBound {
public:
  explicit SChainBound(std::uint64_t big_n) : n_(big_n) {
    if (big_n < 2) throw std::invalid_argument("s_chain needs N >= 2");
    // depth 0: s = N - 1; depth d+1 from d: a' = a + 1, b' = (2b - a)/4 - 1/2
    affine_.push_back({Rational(0), Rational(BigInt(static_cast<unsigned long>(n_ - 1)))});
  }

  Rational bound() { return value(1) + 1; }

  Rational value(std::uint64_t k) {
    if (saturated(k)) return Rational(BigInt(static_cast<unsigned long>(n_ - 1)));
    if (k == 1) return (value(2) + 2) / 3;
    if (auto it = memo_.find(k); it != memo_.end()) return it->second;

    Rational v;
    if (auto depth = uniform_depth(k)) {
      const auto& [a, b] = affine(*depth);
      v = a * Rational(BigInt(static_cast<unsigned long>(k))) + b;
    } else {
      v = value(2 * k - 1) / 4 + value(2 * k) / 4 + Rational(BigInt(static_cast<unsigned long>(2 * k - 1)), 2);
    }
    return memo_.emplace(k, std::move(v)).first->second;
  }

  std::size_t expanded() const { return memo_.size(); }

private:
  bool saturated(std::uint64_t k) const { return 2 * k >= n_; }

  // Smallest d with every depth-d descendant saturated, provided all
  // depth-(d-1) descendants are not.
  std::optional<unsigned> uniform_depth(std::uint64_t k) const {
    unsigned d = 0;
    unsigned __int128 lo = k, hi = k;
    while (2 * hi < n_) {
      lo = 2 * lo - 1;
      hi = 2 * hi;
      ++d;
    }
    // hi at depth d is saturated; all of depth d must be
    if (2 * lo >= n_) return d;
    return std::nullopt;
  }

  const std::pair<Rational, Rational>& affine(unsigned depth) {
    while (affine_.size() <= depth) {
      const auto& [a, b] = affine_.back();
      affine_.push_back({a + 1, (2 * b - a) / 4 - Rational(1, 2)});
    }
    return affine_[depth];
  }

  std::uint64_t n_;
  std::vector<std::pair<Rational, Rational>> affine_;
  std::unordered_map<std::uint64_t, Rational> memo_;
};

inline Rational s_chain_bound(std::uint64_t big_n) {
  if (big_n == 1) return Rational(1);
  return SChainBound(big_n).bound();
}

/// e_n = e_{2n-2}/4 + e_{2n-1}/2 + e_{2n}/4 + 1/2 for one index n (2 <= n, 2n <= N).
/// `e_desc` holds e_1, e_2, ... (descending positions).
inline bool eating_recurrence_holds(std::span<const Rational> e_desc, std::size_t n) {
  if (n < 2 || 2 * n > e_desc.size()) throw std::out_of_range("index outside the recurrence range");
  auto e = [&](std::size_t i) -> const Rational& { return e_desc[i - 1]; };
  return e(n) == e(2 * n - 2) / 4 + e(2 * n - 1) / 2 + e(2 * n) / 4 + Rational(1, 2);
}

struct LemmaAClauses {
  bool saturated = true;  // s_k = N - 1 for all k >= N/2
  bool recurrence = true; // s_k = s_{2k-1}/4 + s_{2k}/4 + (2k-1)/2 for all k <= N/2
  std::size_t first_bad_k = 0;

  bool all() const { return saturated && recurrence; }
};

/// Checks both chain identities exactly on s_1..s_N. At k = N/2 (even N) both
/// clauses apply and both are checked.
inline LemmaAClauses check_chain_identities(std::span<const Rational> s) {
  LemmaAClauses r;
  const std::size_t n = s.size();
  const Rational top(static_cast<long>(n) - 1);
  for (std::size_t k = 1; k <= n; ++k) {
    const Rational& sk = s[k - 1];
    if (2 * k >= n && sk != top) {
      r.saturated = false;
      if (!r.first_bad_k) r.first_bad_k = k;
    }
    if (2 * k <= n) {
      const Rational rhs = s[2 * k - 2] / 4 + s[2 * k - 1] / 4 + Rational(static_cast<long>(2 * k - 1), 2);
      if (sk != rhs) {
        r.recurrence = false;
        if (!r.first_bad_k) r.first_bad_k = k;
      }
    }
  }
  return r;
}

}  // namespace camel
