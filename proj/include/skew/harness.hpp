#pragma once

#include <atomic>
#include <cstdint>
#include <string>
#include <thread>
#include <vector>

#include "skew/json_io.hpp"

namespace skew {

// Square matrix of commutative polynomials over S, all in the same variable set.
template <class S>
class SymMat {
 public:
  SymMat() = default;
  SymMat(int n, int nvars);

  // Upper triangular matrix whose entries (i <= j) are the fresh variables first, first + 1, ... in row order.
  static SymMat generic_upper(int n, int nvars, int first);
  static SymMat identity(int n, int nvars);

  int size() const { return n_; }
  int nvars() const { return nv_; }
  CPoly<S>& operator()(int i, int j) { return e_[static_cast<std::size_t>(i) * n_ + j]; }
  const CPoly<S>& operator()(int i, int j) const { return e_[static_cast<std::size_t>(i) * n_ + j]; }

  SymMat& operator+=(const SymMat& b);
  friend SymMat operator*(const SymMat& a, const SymMat& b) { return a.mul(b); }
  SymMat scaled(const S& c) const;
  bool is_zero() const;
  Mat<S> eval(const std::vector<S>& point) const;

 private:
  SymMat mul(const SymMat& b) const;
  int n_ = 0, nv_ = 0;
  std::vector<CPoly<S>> e_;
};

// p on n generic upper triangular matrices, one fresh variable per entry per substituted variable.
// Variable index of entry (i, j), i <= j, of X_l is l * n(n+1)/2 + (row-order position).
template <class S>
SymMat<S> generic_triangular_eval(const NCPoly<S>& p, int n);

// Largest m with p an identity of T_m (0 when p does not vanish on F).
template <class S>
int ord(const NCPoly<S>& p);

struct SuiteReport {
  std::string suite;
  std::uint64_t seed = 0;
  int trials = 0;
  Json failures = Json::array();  // each {"inputs", "value", "claim"}
  std::string verdict = "pass";   // pass | counterexamples | informational
  Json notes = Json::object();
};

Json report_to_json(const SuiteReport& r);
SuiteReport report_from_json(const Json& j);

// Exit status convention shared with the command line: counterexamples -> 1.
inline int report_exit_code(const SuiteReport& r) { return r.verdict == "counterexamples" ? 1 : 0; }

SuiteReport panja_prasad_suite(const NCPoly<Rational>& p, int n, int trials, std::uint64_t seed, int jobs = 1);
SuiteReport des_suite(const NCPoly<Rational>& p, int n, int trials, std::uint64_t seed, int jobs = 1);
SuiteReport det_examples_suite();
SuiteReport closure_suites(int trials, std::uint64_t seed, int jobs = 1);

// Re-checks every failure of a des or panja-prasad report from its embedded witnesses; true when each
// failure is a genuine violation of the recorded claim.
bool recheck_report(const SuiteReport& r);

// Runs f(0..count-1) on up to `jobs` threads; f must write only to its own index.
template <class F>
void parallel_for(int count, int jobs, F&& f) {
  if (jobs <= 1 || count <= 1) {
    for (int t = 0; t < count; ++t) f(t);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  const int workers = std::min(jobs, count);
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (int t; (t = next.fetch_add(1)) < count;) f(t);
    });
  for (auto& th : pool) th.join();
}

}  // namespace skew
