#include "treefree/scalar.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "treefree/errors.hpp"

namespace treefree {

namespace {
double g_epsilon = 1e-9;
}

double Scalar::epsilon() { return g_epsilon; }
void Scalar::set_epsilon(double eps) { g_epsilon = eps; }

Scalar Scalar::rational(long num, long den) {
  Rational q(num, den);
  q.canonicalize();
  return Scalar(std::move(q));
}

Scalar Scalar::rational(Rational q) {
  q.canonicalize();
  return Scalar(std::move(q));
}

Scalar Scalar::floating(double d) { return Scalar(d); }

Scalar Scalar::exact_from_double(double d) {
  return Scalar(Rational(d));
}

double Scalar::to_double() const {
  if (is_exact()) return rat().get_d();
  return std::get<double>(v_);
}

int Scalar::compare(const Scalar& o) const {
  if (is_exact() && o.is_exact()) {
    int c = cmp(rat(), o.rat());
    return c < 0 ? -1 : c > 0 ? 1 : 0;
  }
  double a = to_double();
  double b = o.to_double();
  if (std::fabs(a - b) <= g_epsilon) return 0;
  return a < b ? -1 : 1;
}

int Scalar::sign() const { return compare(Scalar()); }

Scalar Scalar::abs() const {
  if (is_exact()) return Scalar(Rational(::abs(rat())));
  return Scalar(std::fabs(std::get<double>(v_)));
}

Scalar Scalar::operator-() const {
  if (is_exact()) return Scalar(Rational(-rat()));
  return Scalar(-std::get<double>(v_));
}

Scalar& Scalar::operator+=(const Scalar& o) {
  if (is_exact() && o.is_exact()) {
    v_ = Rational(rat() + o.rat());
  } else {
    v_ = to_double() + o.to_double();
  }
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  if (is_exact() && o.is_exact()) {
    v_ = Rational(rat() - o.rat());
  } else {
    v_ = to_double() - o.to_double();
  }
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
  if (is_exact() && o.is_exact()) {
    v_ = Rational(rat() * o.rat());
  } else {
    v_ = to_double() * o.to_double();
  }
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) {
  if (is_exact() && o.is_exact()) {
    if (o.rat() == 0) throw Error(Errc::Internal, "division by zero");
    v_ = Rational(rat() / o.rat());
  } else {
    double d = o.to_double();
    if (d == 0.0) throw Error(Errc::Internal, "division by zero");
    v_ = to_double() / d;
  }
  return *this;
}

bool Scalar::raw_less(const Scalar& o) const {
  if (is_exact() && o.is_exact()) return cmp(rat(), o.rat()) < 0;
  return to_double() < o.to_double();
}

bool Scalar::raw_equal(const Scalar& o) const {
  if (is_exact() && o.is_exact()) return cmp(rat(), o.rat()) == 0;
  return to_double() == o.to_double();
}

std::string format_double(double d) {
  if (d == 0.0) d = 0.0;  // normalize -0
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", d);
  // Prefer the shortest representation that round-trips.
  for (int prec = 1; prec < 17; ++prec) {
    char shorter[64];
    std::snprintf(shorter, sizeof(shorter), "%.*g", prec, d);
    if (std::strtod(shorter, nullptr) == d) return shorter;
  }
  return buf;
}

std::string Scalar::str() const {
  if (is_exact()) return rat().get_str();
  return format_double(std::get<double>(v_));
}

namespace {

bool is_integer_literal(std::string_view s) {
  if (!s.empty() && (s[0] == '+' || s[0] == '-')) s.remove_prefix(1);
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

// Exact conversion of a decimal literal (with optional exponent) to a
// rational.
std::optional<Rational> decimal_to_rational(std::string_view s) {
  bool neg = false;
  std::size_t i = 0;
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
    neg = s[i] == '-';
    ++i;
  }
  std::string digits;
  long frac_digits = 0;
  bool seen_digit = false, seen_dot = false;
  for (; i < s.size() && (std::isdigit(static_cast<unsigned char>(s[i])) || s[i] == '.'); ++i) {
    if (s[i] == '.') {
      if (seen_dot) return std::nullopt;
      seen_dot = true;
    } else {
      digits.push_back(s[i]);
      seen_digit = true;
      if (seen_dot) ++frac_digits;
    }
  }
  if (!seen_digit) return std::nullopt;
  long exp10 = 0;
  if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
    ++i;
    bool eneg = false;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
      eneg = s[i] == '-';
      ++i;
    }
    if (i >= s.size()) return std::nullopt;
    long v = 0;
    for (; i < s.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(s[i]))) return std::nullopt;
      v = v * 10 + (s[i] - '0');
      if (v > 1000000) return std::nullopt;
    }
    exp10 = eneg ? -v : v;
  }
  if (i != s.size()) return std::nullopt;
  mpz_class num(digits.empty() ? "0" : digits, 10);
  if (neg) num = -num;
  long shift = exp10 - frac_digits;
  Rational q(num);
  mpz_class pow10;
  mpz_ui_pow_ui(pow10.get_mpz_t(), 10, static_cast<unsigned long>(shift < 0 ? -shift : shift));
  if (shift >= 0) {
    q *= Rational(pow10);
  } else {
    q /= Rational(pow10);
  }
  q.canonicalize();
  return q;
}

}  // namespace

std::optional<Scalar> Scalar::parse(std::string_view text, bool exact) {
  // trim
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) return std::nullopt;

  auto slash = text.find('/');
  if (slash != std::string_view::npos) {
    std::string_view num = text.substr(0, slash);
    std::string_view den = text.substr(slash + 1);
    if (!is_integer_literal(num) || !is_integer_literal(den)) return std::nullopt;
    mpz_class n{std::string(num), 10}, d{std::string(den), 10};
    if (d == 0) return std::nullopt;
    if (exact) {
      Rational q(n, d);
      q.canonicalize();
      return Scalar(std::move(q));
    }
    return Scalar(std::strtod(std::string(num).c_str(), nullptr) /
                  std::strtod(std::string(den).c_str(), nullptr));
  }

  auto q = decimal_to_rational(text);  // also validates the format
  if (!q) return std::nullopt;
  if (exact) return Scalar(std::move(*q));
  return Scalar(std::strtod(std::string(text).c_str(), nullptr));
}

const char* errc_name(Errc code) {
  switch (code) {
    case Errc::NotSquare: return "NotSquare";
    case Errc::NotSymmetric: return "NotSymmetric";
    case Errc::NegativeDistance: return "NegativeDistance";
    case Errc::NonzeroDiagonal: return "NonzeroDiagonal";
    case Errc::TriangleViolation: return "TriangleViolation";
    case Errc::DuplicatePoints: return "DuplicatePoints";
    case Errc::FourPointViolation: return "FourPointViolation";
    case Errc::NegativeAttachment: return "NegativeAttachment";
    case Errc::UnsupportedPoint: return "UnsupportedPoint";
    case Errc::UnsortedInput: return "UnsortedInput";
    case Errc::MissingBasePoint: return "MissingBasePoint";
    case Errc::UnboundedObjective: return "UnboundedObjective";
    case Errc::EmptyPart: return "EmptyPart";
    case Errc::CrossSeparationZero: return "CrossSeparationZero";
    case Errc::BoundViolated: return "BoundViolated";
    case Errc::InvalidTree: return "InvalidTree";
    case Errc::InvalidMarks: return "InvalidMarks";
    case Errc::NonpositiveWeight: return "NonpositiveWeight";
    case Errc::UnknownLabel: return "UnknownLabel";
    case Errc::MalformedInput: return "MalformedInput";
    case Errc::Internal: return "Internal";
  }
  return "Unknown";
}

}  // namespace treefree
