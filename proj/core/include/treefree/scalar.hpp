#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <string_view>
#include <variant>

namespace treefree {

using Rational = mpq_class;

// A number in one of the two arithmetic modes of the toolkit.
//
// Exact scalars hold arbitrary-precision rationals and compare exactly.
// Float scalars hold a double and compare with one process-wide absolute
// tolerance (set once at startup, see set_epsilon). Mixing modes in an
// expression demotes the result to float.
class Scalar {
 public:
  Scalar() : v_(Rational(0)) {}
  Scalar(long n) : v_(Rational(n)) {}     // NOLINT: implicit for integer literals
  Scalar(int n) : v_(Rational(n)) {}      // NOLINT

  static Scalar rational(long num, long den);
  static Scalar rational(Rational q);
  static Scalar floating(double d);
  // Exact value of the binary expansion of d (every finite double is
  // rational).
  static Scalar exact_from_double(double d);

  // Accepts "p/q", integer and decimal literals ("3", "-7/2", "0.25",
  // "1.5e-3"). In exact mode decimals convert exactly (0.1 -> 1/10);
  // in float mode everything becomes a double.
  static std::optional<Scalar> parse(std::string_view text, bool exact);

  bool is_exact() const { return std::holds_alternative<Rational>(v_); }
  const Rational& rat() const { return std::get<Rational>(v_); }
  double to_double() const;

  // Three-way comparison: exact when both sides are exact, otherwise
  // |a-b| <= epsilon() counts as equal.
  int compare(const Scalar& o) const;
  int sign() const;
  Scalar abs() const;

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

  friend bool operator==(const Scalar& a, const Scalar& b) { return a.compare(b) == 0; }
  friend bool operator!=(const Scalar& a, const Scalar& b) { return a.compare(b) != 0; }
  friend bool operator<(const Scalar& a, const Scalar& b) { return a.compare(b) < 0; }
  friend bool operator<=(const Scalar& a, const Scalar& b) { return a.compare(b) <= 0; }
  friend bool operator>(const Scalar& a, const Scalar& b) { return a.compare(b) > 0; }
  friend bool operator>=(const Scalar& a, const Scalar& b) { return a.compare(b) >= 0; }

  // Tolerance-free ordering on the underlying values. Use this as a sort
  // comparator; epsilon comparisons are not a strict weak order.
  bool raw_less(const Scalar& o) const;
  bool raw_equal(const Scalar& o) const;

  // "p/q" (or "n" for integers) in exact mode, shortest round-trip
  // decimal in float mode. Byte-deterministic.
  std::string str() const;

  // The process-wide comparison tolerance for float mode. Default 1e-9.
  static double epsilon();
  static void set_epsilon(double eps);

 private:
  explicit Scalar(Rational q) : v_(std::move(q)) {}
  explicit Scalar(double d) : v_(d) {}

  std::variant<Rational, double> v_;
};

inline Scalar min(const Scalar& a, const Scalar& b) { return a <= b ? a : b; }
inline Scalar max(const Scalar& a, const Scalar& b) { return a >= b ? a : b; }

std::string format_double(double d);

}  // namespace treefree
