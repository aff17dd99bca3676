#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cmath>
#include <cstdint>
#include <string>

#include "skew/errors.hpp"

namespace skew {

using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;
using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;

enum class Backend { Exact, Float };

template <class S>
struct Scalar;

template <>
struct Scalar<Rational> {
  static constexpr Backend backend = Backend::Exact;
  static constexpr bool exact = true;
  static const char* name() { return "exact"; }
  static bool is_zero(const Rational& x, double = 0) { return x == 0; }
  static double to_double(const Rational& x) { return x.convert_to<double>(); }
  // Exact binary value of a finite double.
  static Rational from_double(double x) { return Rational(x); }
  static Rational from_int(long long v) { return Rational(v); }
  static Rational abs(const Rational& x) { return x < 0 ? Rational(-x) : x; }
};

template <>
struct Scalar<double> {
  static constexpr Backend backend = Backend::Float;
  static constexpr bool exact = false;
  static const char* name() { return "float"; }
  static bool is_zero(double x, double tol = 0) { return std::abs(x) <= tol; }
  static double to_double(double x) { return x; }
  static double from_double(double x) { return x; }
  static double from_int(long long v) { return static_cast<double>(v); }
  static double abs(double x) { return std::abs(x); }
};

template <class S>
inline constexpr bool is_exact_v = Scalar<S>::exact;

inline Rational make_rational(long long num, long long den = 1) {
  if (den == 0) throw Error(Errc::DivisionByZero, "zero denominator");
  return Rational(num) / Rational(den);
}

// "num/den" in lowest terms with positive denominator; denominator always written.
std::string rational_to_string(const Rational& x);
// Accepts "n", "n/d", optional sign.
Rational rational_from_string(const std::string& s);

// Exact square root if x is the square of a rational.
bool rational_sqrt(const Rational& x, Rational& root);

// Simplest rational (smallest denominator, then numerator) in the closed interval [lo, hi].
Rational simplest_between(const Rational& lo, const Rational& hi);

// Simplest rational within |x - r| <= tol.
Rational rationalize(double x, double tol);

// A pure quaternion vector (a, b, c) with a^2+b^2+c^2 = m, searched over small
// denominators; false if none found within the budget.
bool three_squares(const Rational& m, Rational& a, Rational& b, Rational& c, int budget = 64);

}  // namespace skew
