#pragma once

// Shared generators for the randomized suites. Every suite seeds its own
// engine so failures reproduce.

#include <cmath>
#include <numbers>
#include <random>
#include <set>
#include <vector>

#include "expkern/apolar.hpp"
#include "expkern/filters.hpp"
#include "expkern/mpoly.hpp"

namespace testing {

using namespace expkern;

using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

inline int uniform_int(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

inline Complex random_complex(Rng& rng, double scale = 1.0) {
  return {uniform(rng, -scale, scale), uniform(rng, -scale, scale)};
}

/// Modulus in [lo, hi], uniform argument.
inline Complex annulus(Rng& rng, double lo, double hi) {
  return std::polar(uniform(rng, lo, hi), uniform(rng, 0.0, 2.0 * std::numbers::pi));
}

inline Point annulus_point(Rng& rng, std::size_t s, double lo = 0.5, double hi = 2.0) {
  Point p(s);
  for (auto& z : p) z = annulus(rng, lo, hi);
  return p;
}

inline Poly random_poly(Rng& rng, std::size_t s, int degree, int terms) {
  const auto monos = monomials_up_to(s, degree);
  Poly f(s);
  for (int i = 0; i < terms; ++i)
    f.add_term(monos[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<int>(monos.size()) - 1))],
               random_complex(rng));
  return f;
}

inline Poly random_laurent(Rng& rng, std::size_t s, int lo, int hi, int terms) {
  Poly f(s);
  for (int i = 0; i < terms; ++i) {
    MultiIndex a(s);
    for (std::size_t j = 0; j < s; ++j) a[j] = uniform_int(rng, lo, hi);
    f.add_term(a, random_complex(rng));
  }
  return f;
}

/// Grows a lower set from the origin by adding random addable corners.
inline std::vector<MultiIndex> random_lower_set(Rng& rng, std::size_t s, std::size_t size) {
  std::set<MultiIndex, GradedLex> set{MultiIndex(s)};
  while (set.size() < size) {
    std::vector<MultiIndex> corners;
    for (const auto& a : set)
      for (std::size_t j = 0; j < s; ++j) {
        const MultiIndex b = a + MultiIndex::unit(s, j);
        if (set.contains(b)) continue;
        bool ok = true;
        for (std::size_t k = 0; k < s && ok; ++k)
          if (b[k] > 0) ok = set.contains(b - MultiIndex::unit(s, k));
        if (ok) corners.push_back(b);
      }
    set.insert(corners[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<int>(corners.size()) - 1))]);
  }
  return {set.begin(), set.end()};
}

inline Poly random_linear(Rng& rng, std::size_t s) {
  Poly l(s);
  for (std::size_t j = 0; j < s; ++j) l.add_term(MultiIndex::unit(s, j), random_complex(rng));
  return l;
}

/// span{1, l, ..., l^k}
inline DInvariantSpace power_space(const Poly& l, int k) {
  std::vector<Poly> b{Poly::constant(l.dim(), 1.0)};
  for (int i = 0; i < k; ++i) b.push_back(b.back() * l);
  return DInvariantSpace(std::move(b));
}

inline double distance(const Poly& a, const Poly& b) { return (a - b).max_abs_coeff(); }

/// s = 1 polynomial from coefficients c0 + c1 z + ...
inline Poly univariate(std::vector<Complex> c) {
  Poly f(1);
  for (std::size_t k = 0; k < c.size(); ++k) f.add_term(MultiIndex{static_cast<int>(k)}, c[k]);
  return f;
}

}  // namespace testing
