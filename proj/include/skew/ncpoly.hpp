#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "skew/cpoly.hpp"
#include "skew/quat.hpp"

namespace skew {

// Word tokens: VAR(l) is stored as l >= 0 (0-based), UNIT as -1 (i), -2 (j), -3 (k).
using Token = int;
using Word = std::vector<Token>;

constexpr Token kUnitI = -1, kUnitJ = -2, kUnitK = -3;

inline bool is_unit(Token t) { return t < 0; }

// u*v for units u, v: returns (sign, unit) with unit 0 meaning the scalar sign alone.
inline std::pair<int, Token> unit_product(Token u, Token v) {
  if (u == v) return {-1, 0};
  int a = -u, b = -v;  // 1 = i, 2 = j, 3 = k
  int c = 6 - a - b;
  bool cyclic = (b - a + 3) % 3 == 1;
  return {cyclic ? 1 : -1, -c};
}

template <class S>
Quat<S> unit_quat(Token u) {
  switch (u) {
    case kUnitI: return Quat<S>::i();
    case kUnitJ: return Quat<S>::j();
    default: return Quat<S>::k();
  }
}

// Element of H(F)<X_1..X_m>: F-scalars times words, at most one unit between variables.
template <class S>
class NCPoly {
 public:
  using Terms = std::map<Word, S>;

  NCPoly() = default;
  explicit NCPoly(int m) : m_(m) {}

  static NCPoly var(int m, int l) {
    if (l < 0 || l >= m) throw Error(Errc::ArityMismatch, "variable index out of range");
    NCPoly p(m);
    p.add_term(Word{l}, S(1));
    return p;
  }
  static NCPoly unit(int m, Token u) {
    NCPoly p(m);
    p.add_term(Word{u}, S(1));
    return p;
  }
  static NCPoly constant(int m, const Quat<S>& q) {
    NCPoly p(m);
    p.add_term(Word{}, q.a);
    p.add_term(Word{kUnitI}, q.b);
    p.add_term(Word{kUnitJ}, q.c);
    p.add_term(Word{kUnitK}, q.d);
    return p;
  }
  static NCPoly scalar(int m, const S& c) {
    NCPoly p(m);
    p.add_term(Word{}, c);
    return p;
  }

  int nvars() const { return m_; }
  const Terms& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }

  // Adds c * w after reducing w to normal form.
  void add_term(const Word& w, const S& c) {
    if (c == S(0)) return;
    S coeff = c;
    Word nw;
    for (Token t : w) {
      if (!is_unit(t) && t >= m_) throw Error(Errc::ArityMismatch, "variable index out of range");
      if (is_unit(t) && !nw.empty() && is_unit(nw.back())) {
        auto [sg, u] = unit_product(nw.back(), t);
        nw.pop_back();
        if (sg < 0) coeff = -coeff;
        if (u != 0) nw.push_back(u);
      } else {
        nw.push_back(t);
      }
    }
    auto it = t_.find(nw);
    if (it == t_.end()) {
      t_.emplace(std::move(nw), coeff);
      return;
    }
    it->second += coeff;
    if (it->second == S(0)) t_.erase(it);
  }

  NCPoly operator-() const {
    NCPoly r(m_);
    for (auto& [w, c] : t_) r.t_.emplace(w, -c);
    return r;
  }
  NCPoly& operator+=(const NCPoly& q) {
    check(q);
    for (auto& [w, c] : q.t_) add_term(w, c);
    return *this;
  }
  NCPoly& operator-=(const NCPoly& q) {
    check(q);
    for (auto& [w, c] : q.t_) add_term(w, -c);
    return *this;
  }
  friend NCPoly operator+(NCPoly p, const NCPoly& q) { return p += q; }
  friend NCPoly operator-(NCPoly p, const NCPoly& q) { return p -= q; }
  friend NCPoly operator*(const NCPoly& p, const NCPoly& q) {
    p.check(q);
    NCPoly r(p.m_);
    for (auto& [wa, ca] : p.t_)
      for (auto& [wb, cb] : q.t_) {
        Word w = wa;
        w.insert(w.end(), wb.begin(), wb.end());
        r.add_term(w, ca * cb);
      }
    return r;
  }
  NCPoly& operator*=(const NCPoly& q) { return *this = *this * q; }
  friend NCPoly operator*(const S& s, const NCPoly& p) {
    NCPoly r(p.m_);
    for (auto& [w, c] : p.t_) r.add_term(w, s * c);
    return r;
  }
  bool operator==(const NCPoly& q) const { return m_ == q.m_ && t_ == q.t_; }
  bool operator!=(const NCPoly& q) const { return !(*this == q); }

  // Number of VAR tokens in the longest word.
  int total_degree() const {
    int d = -1;
    for (auto& [w, c] : t_) {
      int k = 0;
      for (Token t : w) k += !is_unit(t);
      d = std::max(d, k);
    }
    return d;
  }
  int degree_in(int l) const {
    int d = -1;
    for (auto& [w, c] : t_) {
      int k = 0;
      for (Token t : w) k += t == l;
      d = std::max(d, k);
    }
    return d;
  }

  template <class T>
  T eval_generic(const std::vector<T>& point) const {
    if (static_cast<int>(point.size()) != m_) throw Error(Errc::ArityMismatch, "evaluation point");
    T acc(S(0));
    for (auto& [w, c] : t_) {
      T m(c);
      for (Token t : w) m = m * (is_unit(t) ? T(unit_quat<S>(t)) : point[t]);
      acc = acc + m;
    }
    return acc;
  }

  Quat<S> eval(const std::vector<Quat<S>>& point) const { return eval_generic(point); }

 private:
  void check(const NCPoly& q) const {
    if (m_ != q.m_) throw Error(Errc::ArityMismatch, "variable counts differ");
  }
  int m_ = 0;
  Terms t_;
};

enum class NcOp { Add, Sub, Mul };

template <class S>
NCPoly<S> nc_arith(const NCPoly<S>& p, const NCPoly<S>& q, NcOp op) {
  switch (op) {
    case NcOp::Add: return p + q;
    case NcOp::Sub: return p - q;
    case NcOp::Mul: return p * q;
  }
  return p;
}

template <class S>
Quat<S> nc_eval(const NCPoly<S>& p, const std::vector<Quat<S>>& point) {
  return p.eval(point);
}

template <class S>
Quat<S> constant_term(const NCPoly<S>& p) {
  Quat<S> q;
  for (auto& [w, c] : p.terms()) {
    if (w.empty()) q.a += c;
    if (w.size() == 1 && is_unit(w[0])) q += c * unit_quat<S>(w[0]);
  }
  return q;
}

template <class S>
bool is_central_coeffs(const NCPoly<S>& p) {
  for (auto& [w, c] : p.terms())
    for (Token t : w)
      if (is_unit(t)) return false;
  return true;
}

template <class S>
CPoly<S> abelianize(const NCPoly<S>& p) {
  if (!is_central_coeffs(p)) throw Error(Errc::NonCentralCoefficients, "abelianize");
  const int m = p.nvars();
  CPoly<S> r(m);
  for (auto& [w, c] : p.terms()) {
    std::vector<int> e(m, 0);
    for (Token t : w) ++e[t];
    r.add_term(e, c);
  }
  return r;
}

// Commutator [a, b] = ab - ba.
template <class S>
NCPoly<S> commutator(const NCPoly<S>& a, const NCPoly<S>& b) {
  return a * b - b * a;
}

template <class S>
struct CentralWitness {
  std::vector<S> point;
  S value;
};

// First point of the grid {0..deg}^m (first coordinate varying fastest) where p is nonzero.
template <class S>
std::optional<CentralWitness<S>> central_witness(const NCPoly<S>& p) {
  if (!is_central_coeffs(p)) throw Error(Errc::NonCentralCoefficients, "central_witness");
  if (!qis_zero(constant_term(p))) throw Error(Errc::NonzeroConstantTerm, "central_witness");
  CPoly<S> ab = abelianize(p);
  if (ab.is_zero()) return std::nullopt;
  const int m = p.nvars();
  const int d = std::max(ab.total_degree(), 1);
  std::vector<int> idx(m, 0);
  for (;;) {
    std::vector<S> pt(m);
    for (int l = 0; l < m; ++l) pt[l] = S(idx[l]);
    S v = ab.eval(pt);
    if (v != S(0)) return CentralWitness<S>{pt, v};
    int l = 0;
    while (l < m && ++idx[l] > d) idx[l++] = 0;
    if (l == m) break;
  }
  return std::nullopt;
}

// f = sum a_t x^t with left quaternion coefficients in a central variable x.
template <class S>
class UniPoly {
 public:
  UniPoly() = default;
  explicit UniPoly(std::vector<Quat<S>> c) : c_(std::move(c)) { trim(); }

  static UniPoly x() { return UniPoly({Quat<S>(), Quat<S>(S(1))}); }
  static UniPoly constant(const Quat<S>& q) { return UniPoly({q}); }

  const std::vector<Quat<S>>& coeffs() const { return c_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  Quat<S> coeff(int t) const { return t >= 0 && t < static_cast<int>(c_.size()) ? c_[t] : Quat<S>(); }
  const Quat<S>& lead() const { return c_.back(); }

  UniPoly& operator+=(const UniPoly& g) {
    if (g.c_.size() > c_.size()) c_.resize(g.c_.size());
    for (std::size_t t = 0; t < g.c_.size(); ++t) c_[t] += g.c_[t];
    trim();
    return *this;
  }
  UniPoly& operator-=(const UniPoly& g) {
    if (g.c_.size() > c_.size()) c_.resize(g.c_.size());
    for (std::size_t t = 0; t < g.c_.size(); ++t) c_[t] -= g.c_[t];
    trim();
    return *this;
  }
  friend UniPoly operator+(UniPoly f, const UniPoly& g) { return f += g; }
  friend UniPoly operator-(UniPoly f, const UniPoly& g) { return f -= g; }
  friend UniPoly operator*(const UniPoly& f, const UniPoly& g) {
    if (f.is_zero() || g.is_zero()) return UniPoly();
    std::vector<Quat<S>> r(f.c_.size() + g.c_.size() - 1);
    for (std::size_t s = 0; s < f.c_.size(); ++s)
      for (std::size_t t = 0; t < g.c_.size(); ++t) r[s + t] += f.c_[s] * g.c_[t];
    return UniPoly(std::move(r));
  }
  friend UniPoly operator*(const Quat<S>& q, const UniPoly& f) {
    std::vector<Quat<S>> r = f.c_;
    for (auto& c : r) c = q * c;
    return UniPoly(std::move(r));
  }
  bool operator==(const UniPoly& g) const { return c_ == g.c_; }

  // Right evaluation sum a_t d^t.
  Quat<S> eval_right(const Quat<S>& d) const {
    Quat<S> acc, pw(S(1));
    for (auto& a : c_) {
      acc += a * pw;
      pw = pw * d;
    }
    return acc;
  }

  double abs_coeff_sum() const {
    double s = 0;
    for (auto& a : c_) s += qabs(a);
    return s;
  }

 private:
  void trim() {
    while (!c_.empty() && qis_zero(c_.back())) c_.pop_back();
  }
  std::vector<Quat<S>> c_;
};

template <class S>
Quat<S> uni_eval_right(const UniPoly<S>& f, const Quat<S>& d) {
  return f.eval_right(d);
}

enum class UniOp { Add, Sub, Mul };

template <class S>
UniPoly<S> uni_arith(const UniPoly<S>& f, const UniPoly<S>& g, UniOp op) {
  switch (op) {
    case UniOp::Add: return f + g;
    case UniOp::Sub: return f - g;
    case UniOp::Mul: return f * g;
  }
  return f;
}

// f(x) = p(values with x at index keep). values has length m (entry at keep ignored) or m - 1.
template <class S>
UniPoly<S> specialize(const NCPoly<S>& p, int keep, const std::vector<S>& values) {
  if (!is_central_coeffs(p)) throw Error(Errc::NonCentralCoefficients, "specialize");
  const int m = p.nvars();
  if (keep < 0 || keep >= m) throw Error(Errc::ArityMismatch, "kept index out of range");
  std::vector<S> full(m, S(0));
  if (static_cast<int>(values.size()) == m) {
    full = values;
  } else if (static_cast<int>(values.size()) == m - 1) {
    for (int l = 0, t = 0; l < m; ++l)
      if (l != keep) full[l] = values[t++];
  } else {
    throw Error(Errc::ArityMismatch, "specialization values");
  }
  std::vector<Quat<S>> c;
  for (auto& [w, coef] : p.terms()) {
    S v = coef;
    int k = 0;
    for (Token t : w) {
      if (t == keep)
        ++k;
      else
        v *= full[t];
    }
    if (static_cast<int>(c.size()) <= k) c.resize(k + 1);
    c[k] += Quat<S>(v);
  }
  return UniPoly<S>(std::move(c));
}

template <class S>
bool is_multilinear(const NCPoly<S>& p) {
  if (p.is_zero() || !is_central_coeffs(p)) return false;
  const int m = p.nvars();
  for (auto& [w, c] : p.terms()) {
    if (static_cast<int>(w.size()) != m) return false;
    std::vector<int> seen(m, 0);
    for (Token t : w)
      if (seen[t]++) return false;
  }
  return true;
}

// (lambda^-1 target, 1, ..., 1) with lambda the coefficient sum.
template <class S>
std::vector<Quat<S>> multilinear_witness(const NCPoly<S>& p, const Quat<S>& target) {
  if (!is_multilinear(p)) throw Error(Errc::NotMultilinear, "multilinear_witness");
  S lambda(0);
  for (auto& [w, c] : p.terms()) lambda += c;
  if (lambda == S(0)) throw Error(Errc::LambdaZero, "coefficient sum is zero");
  std::vector<Quat<S>> pt(p.nvars(), Quat<S>(S(1)));
  pt[0] = target / lambda;
  return pt;
}

}  // namespace skew
