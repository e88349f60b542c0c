#pragma once

// Exact rational numbers backed by GMP. Every position, fuel amount and
// distance in the library is a Rational; no floating point is used on the
// computation path.

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <functional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace camel {

using BigInt = mpz_class;

class Rational {
public:
  Rational() = default;
  Rational(long v) : v_(v) {}                 // NOLINT(google-explicit-constructor)
  Rational(int v) : v_(static_cast<long>(v)) {}  // NOLINT(google-explicit-constructor)
  Rational(long num, long den) : v_(num, den) {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    v_.canonicalize();
  }
  Rational(const BigInt& num, const BigInt& den = 1) : v_(num, den) {  // NOLINT
    if (den == 0) throw std::domain_error("rational with zero denominator");
    v_.canonicalize();
  }
  explicit Rational(mpq_class v) : v_(std::move(v)) { v_.canonicalize(); }

  /// Parses "p/q" or "p". Whitespace, decimal points and exponents are rejected.
  static Rational parse(std::string_view text) {
    auto digits = [](std::string_view s) {
      if (s.empty()) return false;
      for (char c : s)
        if (c < '0' || c > '9') return false;
      return true;
    };
    std::string_view body = text;
    if (!body.empty() && body.front() == '-') body.remove_prefix(1);
    const auto slash = body.find('/');
    std::string_view num_part = body.substr(0, slash);
    std::string_view den_part =
        slash == std::string_view::npos ? std::string_view("1") : body.substr(slash + 1);
    if (!digits(num_part) || !digits(den_part))
      throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
    BigInt num(std::string(num_part), 10);
    BigInt den(std::string(den_part), 10);
    if (den == 0)
      throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    if (text.front() == '-') num = -num;
    return Rational(num, den);
  }

  BigInt numerator() const { return v_.get_num(); }
  BigInt denominator() const { return v_.get_den(); }
  const mpq_class& raw() const { return v_; }

  bool is_integer() const { return v_.get_den() == 1; }
  int sign() const { return sgn(v_); }

  /// Largest integer not exceeding the value.
  BigInt floor() const {
    BigInt q;
    mpz_fdiv_q(q.get_mpz_t(), v_.get_num_mpz_t(), v_.get_den_mpz_t());
    return q;
  }

  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.v_ == 0) throw std::domain_error("division by zero");
    v_ /= o.v_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.v_)); }

  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.v_, b.v_);
    return c < 0 ? std::strong_ordering::less
                 : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
  }

  /// Wire form: "p/q", or "p" when the value is an integer.
  std::string str() const {
    if (is_integer()) return v_.get_num().get_str();
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
  }

  /// Mixed-number form, e.g. "14 1003590240076691/1125899906842624" or "-1 1/3".
  std::string mixed() const {
    if (is_integer()) return str();
    const bool neg = sign() < 0;
    const mpq_class mag = neg ? mpq_class(-v_) : v_;
    BigInt whole, rem;
    mpz_fdiv_qr(whole.get_mpz_t(), rem.get_mpz_t(), mag.get_num_mpz_t(),
                mag.get_den_mpz_t());
    std::string out = neg ? "-" : "";
    if (whole != 0) out += whole.get_str() + " ";
    out += rem.get_str() + "/" + mag.get_den().get_str();
    return out;
  }

  /// Decimal approximation rounded half-up to `significant` digits.
  std::string decimal(int significant = 15) const {
    if (significant < 1) significant = 1;
    if (sign() == 0) return "0";
    const bool neg = sign() < 0;
    const mpq_class mag = neg ? mpq_class(-v_) : v_;

    // exponent e with 10^e <= mag < 10^(e+1)
    long e = 0;
    {
      mpq_class t = mag;
      while (t >= 10) { t /= 10; ++e; }
      while (t < 1) { t *= 10; --e; }
    }
    BigInt limit;
    mpz_ui_pow_ui(limit.get_mpz_t(), 10, static_cast<unsigned long>(significant));
    long frac_digits = 0;
    BigInt scale_pow, rounded;
    for (;;) {
      frac_digits = significant - 1 - e;
      mpz_ui_pow_ui(scale_pow.get_mpz_t(), 10,
                    static_cast<unsigned long>(frac_digits >= 0 ? frac_digits : -frac_digits));
      mpq_class scaled = frac_digits >= 0 ? mpq_class(mag * scale_pow) : mpq_class(mag / scale_pow);
      scaled += mpq_class(1, 2);
      mpz_fdiv_q(rounded.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
      if (rounded < limit) break;
      ++e;  // rounding carried into the next decade
    }
    if (frac_digits < 0) rounded *= scale_pow;

    std::string digits = rounded.get_str();
    if (frac_digits > 0) {
      const auto fd = static_cast<std::size_t>(frac_digits);
      if (digits.size() <= fd) digits.insert(0, fd - digits.size() + 1, '0');
      digits.insert(digits.size() - fd, ".");
    }
    return neg ? "-" + digits : digits;
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

private:
  mpq_class v_;
};

inline Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }
inline const Rational& min(const Rational& a, const Rational& b) { return b < a ? b : a; }
inline const Rational& max(const Rational& a, const Rational& b) { return a < b ? b : a; }

inline Rational pow2(unsigned k) {
  BigInt p;
  mpz_ui_pow_ui(p.get_mpz_t(), 2, k);
  return Rational(p);
}

}  // namespace camel

template <>
struct std::hash<camel::Rational> {
  std::size_t operator()(const camel::Rational& r) const noexcept {
    const auto& q = r.raw();
    std::size_t h = mpz_get_ui(q.get_num_mpz_t()) * 1000003u;
    return h ^ (mpz_get_ui(q.get_den_mpz_t()) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2));
  }
};
