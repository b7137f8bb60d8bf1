#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include <cstdlib>
#include <sstream>
#include <string>
#include <variant>

namespace ngas {

namespace mp = boost::multiprecision;

inline constexpr unsigned kRealDigits = 50;

using Integer = mp::number<mp::gmp_int, mp::et_off>;
using Rational = mp::number<mp::gmp_rational, mp::et_off>;
using Real = mp::number<mp::mpfr_float_backend<kRealDigits>, mp::et_off>;

inline Rational make_rational(long num, long den = 1) {
  return Rational(Integer(num), Integer(den));
}

// Exact conversion of a double (every finite double is a dyadic rational).
inline Rational rational_from_double(double x) {
  return Rational(x);
}

// Parses "p/q", an integer, or a terminating decimal ("0.125", "1e-3") exactly.
inline Rational parse_rational(const std::string& text) {
  auto slash = text.find('/');
  if (slash != std::string::npos) {
    if (text.find('/', slash + 1) != std::string::npos) throw std::invalid_argument("not a number: " + text);
    Rational num = parse_rational(text.substr(0, slash));
    Rational den = parse_rational(text.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator: " + text);
    return num / den;
  }
  std::string mant = text;
  long exp10 = 0;
  auto e = mant.find_first_of("eE");
  if (e != std::string::npos) {
    exp10 = std::stol(mant.substr(e + 1));
    mant = mant.substr(0, e);
  }
  auto dot = mant.find('.');
  if (dot != std::string::npos) {
    exp10 -= static_cast<long>(mant.size() - dot - 1);
    mant.erase(dot, 1);
  }
  if (mant.empty() || mant == "-" || mant == "+")
    throw std::invalid_argument("not a number: " + text);
  bool neg = mant[0] == '-';
  if (mant[0] == '+' || neg) mant.erase(0, 1);
  // A leading zero would make gmp read the digits as octal.
  auto nz = mant.find_first_not_of('0');
  mant = nz == std::string::npos ? "0" : mant.substr(nz);
  if (mant.find_first_not_of("0123456789") != std::string::npos) throw std::invalid_argument("not a number: " + text);
  Rational r{Integer(mant)};
  if (neg) r = -r;
  Integer ten = 10;
  Integer scale = mp::pow(ten, static_cast<unsigned>(exp10 < 0 ? -exp10 : exp10));
  return exp10 < 0 ? Rational(r / Rational(scale)) : Rational(r * Rational(scale));
}

inline Real to_real(const Rational& q) {
  return Real(mp::numerator(q)) / Real(mp::denominator(q));
}

inline std::string to_string(const Rational& q) {
  if (mp::denominator(q) == 1) return mp::numerator(q).str();
  return mp::numerator(q).str() + "/" + mp::denominator(q).str();
}

inline std::string to_string(const Real& x, int digits = 20) {
  std::ostringstream os;
  os.precision(digits);
  os << x;
  return os.str();
}

inline std::string to_fixed(const Real& x, int decimals) {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(decimals);
  os << x;
  std::string s = os.str();
  if (s.rfind("-0.", 0) == 0 && s.find_first_not_of("-0.") == std::string::npos) s.erase(0, 1);
  return s;
}

// Either an exact rational or a high-precision real.
class NumericValue {
 public:
  NumericValue() : v_(Rational(0)) {}
  NumericValue(Rational q) : v_(std::move(q)) {}
  NumericValue(Real x) : v_(std::move(x)) {}

  bool is_exact() const { return std::holds_alternative<Rational>(v_); }
  const Rational& exact() const { return std::get<Rational>(v_); }
  Real real() const { return is_exact() ? to_real(exact()) : std::get<Real>(v_); }
  double to_double() const { return static_cast<double>(real()); }
  std::string str(int digits = 20) const { return is_exact() ? to_string(exact()) : to_string(std::get<Real>(v_), digits); }

 private:
  std::variant<Rational, Real> v_;
};

// Decimal places used for printed reals; NGAS_PRECISION overrides.
inline int output_decimals(int fallback = 6) {
  if (const char* env = std::getenv("NGAS_PRECISION")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0 && v <= 40) return static_cast<int>(v);
  }
  return fallback;
}

}  // namespace ngas
