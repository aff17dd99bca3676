#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "skew/ncpoly.hpp"

namespace skew {

// Whole conjugacy class {q : qtrace(q) = s, qnorm(q) = n} with s^2 < 4n.
template <class S>
struct SphericalClass {
  S s, n;
};

template <class S>
struct RootSet {
  std::vector<Quat<S>> isolated;
  std::vector<SphericalClass<S>> spherical;
  std::vector<S> central;
  // EXACT only: some roots are irrational and listed as rational approximants.
  bool approx = false;
};

// Tolerance for accepting a FLOAT right root: 1e-8 (1 + sum |coeffs|).
template <class S>
double root_tolerance(const UniPoly<S>& f) {
  return 1e-8 * (1 + f.abs_coeff_sum());
}

template <class S>
RootSet<S> niven_roots(const UniPoly<S>& f);

template <class S>
int conjugacy_class_count(const RootSet<S>& rs);

template <class S>
bool gordon_motzkin_check(const UniPoly<S>& f);

// b with f(b) = c (right evaluation).
template <class S>
Quat<S> preimage(const UniPoly<S>& f, const Quat<S>& c);

// Point of H^m with p(point) = target; all coordinates central except one.
template <class S>
std::vector<Quat<S>> image_oracle(const NCPoly<S>& p, const Quat<S>& target);

struct InfinitudeReport {
  int sample = 0;
  int distinct = 0;
  std::string note;
};

template <class S>
InfinitudeReport image_infinitude_probe(const UniPoly<S>& f, int sample, std::uint64_t seed);

// Member of a spherical class: s/2 + v with v pure of norm n - s^2/4.
template <class S>
Quat<S> spherical_member(const SphericalClass<S>& c);

}  // namespace skew
