#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <ostream>
#include <string>

#include "hwmlab/guards.hpp"

namespace hwmlab {

using BigInt = boost::multiprecision::cpp_int;

/// Exact rational scalar. Arbitrary precision so that rank computations and
/// projector normalizations never overflow; weights themselves are stored as
/// doubled 64-bit integers and only cross into Rational at API boundaries.
using Rational = boost::multiprecision::cpp_rational;

inline Rational rational_from_doubled(std::int64_t twice) {
  return Rational(BigInt(twice), BigInt(2));
}

/// Canonical text form: "p" when the denominator is 1, otherwise "p/q" with
/// q > 0 and gcd(p, q) = 1. This is the form used in all JSON payloads.
inline std::string format_rational(const Rational& r) {
  const BigInt num = boost::multiprecision::numerator(r);
  const BigInt den = boost::multiprecision::denominator(r);
  std::string s = num.str();
  if (den != 1) {
    s += '/';
    s += den.str();
  }
  return s;
}

namespace detail {
inline bool is_integer_token(const std::string& s) {
  if (s.empty()) return false;
  std::size_t start = (s[0] == '-') ? 1 : 0;
  if (start == s.size()) return false;
  for (std::size_t k = start; k < s.size(); ++k) {
    if (s[k] < '0' || s[k] > '9') return false;
  }
  return true;
}
}  // namespace detail

/// Parses "p" or "p/q". Rejects anything else (whitespace, empty fields,
/// zero denominators) with std::invalid_argument.
inline Rational parse_rational(const std::string& s) {
  const std::size_t slash = s.find('/');
  if (slash == std::string::npos) {
    require_arg(detail::is_integer_token(s), "malformed rational: " + s);
    return Rational(BigInt(s));
  }
  const std::string num = s.substr(0, slash);
  const std::string den = s.substr(slash + 1);
  require_arg(detail::is_integer_token(num) && detail::is_integer_token(den),
              "malformed rational: " + s);
  const BigInt d(den);
  require_arg(d > 0, "rational denominator must be positive: " + s);
  return Rational(BigInt(num), d);
}

/// Element of Q(i). Every coefficient in the enveloping-algebra layer and
/// the q-expansion layer is one of these.
struct GaussianRational {
  Rational re;
  Rational im;

  GaussianRational() = default;
  GaussianRational(Rational r) : re(std::move(r)) {}  // NOLINT(runtime/explicit)
  GaussianRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}
  static GaussianRational integer(std::int64_t v) { return GaussianRational(Rational(v)); }
  /// The purely imaginary unit times v.
  static GaussianRational imaginary(Rational v) { return GaussianRational(Rational(0), std::move(v)); }

  bool is_zero() const { return re == 0 && im == 0; }
  bool is_real() const { return im == 0; }

  GaussianRational conj() const { return GaussianRational(re, -im); }

  friend GaussianRational operator+(const GaussianRational& a, const GaussianRational& b) {
    return GaussianRational(a.re + b.re, a.im + b.im);
  }
  friend GaussianRational operator-(const GaussianRational& a, const GaussianRational& b) {
    return GaussianRational(a.re - b.re, a.im - b.im);
  }
  friend GaussianRational operator-(const GaussianRational& a) {
    return GaussianRational(-a.re, -a.im);
  }
  friend GaussianRational operator*(const GaussianRational& a, const GaussianRational& b) {
    return GaussianRational(a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re);
  }
  friend GaussianRational operator/(const GaussianRational& a, const GaussianRational& b) {
    require_arg(!b.is_zero(), "division by zero Gaussian rational");
    const Rational norm = b.re * b.re + b.im * b.im;
    return GaussianRational((a.re * b.re + a.im * b.im) / norm,
                            (a.im * b.re - a.re * b.im) / norm);
  }
  GaussianRational& operator+=(const GaussianRational& o) { re += o.re; im += o.im; return *this; }
  GaussianRational& operator-=(const GaussianRational& o) { re -= o.re; im -= o.im; return *this; }
  GaussianRational& operator*=(const GaussianRational& o) { *this = *this * o; return *this; }

  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re == b.re && a.im == b.im;
  }
  friend bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }
};

/// Canonical text form: "a" for reals, "bi" for pure imaginaries, "a+bi" or
/// "a-bi" otherwise. The imaginary coefficient is always written out, so the
/// unit appears as "1i" rather than a bare "i".
inline std::string format_gaussian(const GaussianRational& g) {
  if (g.im == 0) return format_rational(g.re);
  std::string im = format_rational(g.im) + "i";
  if (g.re == 0) return im;
  std::string s = format_rational(g.re);
  if (g.im > 0) s += '+';
  return s + im;
}

inline GaussianRational parse_gaussian(const std::string& s) {
  require_arg(!s.empty(), "empty Gaussian rational");
  if (s.back() != 'i') return GaussianRational(parse_rational(s));
  std::string body = s.substr(0, s.size() - 1);
  if (body.empty() || body == "-") body += '1';  // accept bare "i" and "-i"
  // Split off a real part if a sign follows a digit somewhere inside.
  for (std::size_t k = body.size(); k-- > 1;) {
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] >= '0' && body[k - 1] <= '9') {
      std::string re = body.substr(0, k);
      std::string im = body.substr(body[k] == '+' ? k + 1 : k);
      return GaussianRational(parse_rational(re), parse_rational(im));
    }
  }
  return GaussianRational(Rational(0), parse_rational(body));
}

inline std::ostream& operator<<(std::ostream& os, const GaussianRational& g) {
  return os << format_gaussian(g);
}

}  // namespace hwmlab
