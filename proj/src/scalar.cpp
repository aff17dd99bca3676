#include "skew/scalar.hpp"

#include <algorithm>
#include <cctype>

namespace skew {

const char* errc_name(Errc e) {
  switch (e) {
    case Errc::BackendMismatch: return "BackendMismatch";
    case Errc::ArityMismatch: return "ArityMismatch";
    case Errc::ZeroPolynomial: return "ZeroPolynomial";
    case Errc::DivisionByZero: return "DivisionByZero";
    case Errc::NonCentralCoefficients: return "NonCentralCoefficients";
    case Errc::NonzeroConstantTerm: return "NonzeroConstantTerm";
    case Errc::NotMultilinear: return "NotMultilinear";
    case Errc::LambdaZero: return "LambdaZero";
    case Errc::ExactnessUnavailable: return "ExactnessUnavailable";
    case Errc::NoWitness: return "NoWitness";
    case Errc::Singular: return "Singular";
    case Errc::ShapeMismatch: return "ShapeMismatch";
    case Errc::ClusterAmbiguous: return "ClusterAmbiguous";
    case Errc::ShapeTooSmall: return "ShapeTooSmall";
    case Errc::CentralScalar: return "CentralScalar";
    case Errc::SearchExhausted: return "SearchExhausted";
    case Errc::BadLevel: return "BadLevel";
    case Errc::GenericityExhausted: return "GenericityExhausted";
    case Errc::NotNilpotent: return "NotNilpotent";
    case Errc::SolverExhausted: return "SolverExhausted";
    case Errc::NonzeroTrace: return "NonzeroTrace";
    case Errc::NotUnitScalar: return "NotUnitScalar";
    case Errc::DecomposerIncomplete: return "DecomposerIncomplete";
    case Errc::ExcludedCase: return "ExcludedCase";
    case Errc::MalformedCertificate: return "MalformedCertificate";
    case Errc::SingularJacobian: return "SingularJacobian";
    case Errc::Format: return "Format";
  }
  return "Unknown";
}

std::string rational_to_string(const Rational& x) {
  Integer num = boost::multiprecision::numerator(x);
  Integer den = boost::multiprecision::denominator(x);
  return num.str() + "/" + den.str();
}

static bool all_digits(const std::string& s) {
  if (s.empty()) return false;
  return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

Rational rational_from_string(const std::string& raw) {
  std::string s;
  for (char c : raw)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  bool neg = false;
  std::size_t pos = 0;
  if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) {
    neg = s[pos] == '-';
    ++pos;
  }
  std::string body = s.substr(pos);
  auto slash = body.find('/');
  std::string num = slash == std::string::npos ? body : body.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : body.substr(slash + 1);
  if (!all_digits(num) || !all_digits(den)) throw Error(Errc::Format, "bad rational '" + raw + "'");
  Integer n(num), d(den);
  if (d == 0) throw Error(Errc::DivisionByZero, "zero denominator in '" + raw + "'");
  Rational r(n, d);
  return neg ? Rational(-r) : r;
}

static bool integer_sqrt(const Integer& v, Integer& root) {
  if (v < 0) return false;
  root = boost::multiprecision::sqrt(v);
  return root * root == v;
}

bool rational_sqrt(const Rational& x, Rational& root) {
  if (x < 0) return false;
  Integer rn, rd;
  if (!integer_sqrt(boost::multiprecision::numerator(x), rn)) return false;
  if (!integer_sqrt(boost::multiprecision::denominator(x), rd)) return false;
  root = Rational(rn, rd);
  return true;
}

static Integer floor_div(const Rational& x) {
  Integer n = boost::multiprecision::numerator(x);
  Integer d = boost::multiprecision::denominator(x);
  Integer q = n / d;
  if (q * d > n) q -= 1;
  return q;
}

// Stern-Brocot descent via continued fractions.
static Rational simplest_between_positive(Rational lo, Rational hi) {
  Integer fl = floor_div(lo);
  if (Rational(fl) == lo) return lo;
  if (Rational(fl + 1) <= hi) return Rational(fl + 1);
  // lo and hi share the integer part fl; recurse on reciprocals of fractional parts.
  Rational a = lo - Rational(fl);
  Rational b = hi - Rational(fl);
  Rational inner = simplest_between_positive(Rational(1) / b, Rational(1) / a);
  return Rational(fl) + Rational(1) / inner;
}

Rational simplest_between(const Rational& lo_in, const Rational& hi_in) {
  Rational lo = lo_in, hi = hi_in;
  if (lo > hi) std::swap(lo, hi);
  if (lo <= 0 && hi >= 0) return Rational(0);
  if (hi < 0) return -simplest_between_positive(-hi, -lo);
  return simplest_between_positive(lo, hi);
}

Rational rationalize(double x, double tol) {
  Rational c(x);
  Rational t(tol);
  return simplest_between(c - t, c + t);
}

bool three_squares(const Rational& m, Rational& a, Rational& b, Rational& c, int budget) {
  if (m < 0) return false;
  if (m == 0) {
    a = b = c = 0;
    return true;
  }
  Integer num = boost::multiprecision::numerator(m);
  Integer den = boost::multiprecision::denominator(m);
  // m = (num*den)/den^2, so a representation of num*den by integer squares scales down by den.
  Integer t = num * den;
  long long steps = 0;
  const long long cap = static_cast<long long>(budget) * 4096;
  Integer x = boost::multiprecision::sqrt(t);
  for (; x >= 0; --x) {
    Integer r1 = t - x * x;
    Integer y = boost::multiprecision::sqrt(r1);
    for (; y >= 0 && y * y * 2 >= r1 - y * y; --y) {
      Integer r2 = r1 - y * y;
      Integer z;
      if (integer_sqrt(r2, z)) {
        a = Rational(x, den);
        b = Rational(y, den);
        c = Rational(z, den);
        return true;
      }
      if (++steps > cap) return false;
    }
    if (++steps > cap) return false;
  }
  return false;
}

}  // namespace skew
