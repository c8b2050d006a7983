#pragma once

// Apolar (Bombieri) inner product and D-invariant polynomial spaces.
//
//   (f, g) = sum_alpha alpha! f_alpha conj(g_alpha)
//
// On real coefficients this is (f(D) g)(0); multiplication by p is adjoint
// to p(D), and homogeneous polynomials of different degree are orthogonal.

#include <cmath>
#include <optional>
#include <vector>

#include "expkern/mpoly.hpp"

namespace expkern {

Complex bombieri(const Poly& f, const Poly& g);
inline double bombieri_norm(const Poly& f) { return std::sqrt(bombieri(f, f).real()); }

/// |(p(D) f, g) - (f, conj(p) g)|
double adjoint_check(const Poly& p, const Poly& f, const Poly& g);

struct DInvarianceCheck {
  bool invariant = true;
  /// (basis position, coordinate) of the first derivative found outside the span.
  std::optional<std::pair<std::size_t, std::size_t>> witness;
  double max_residual = 0.0;
};

/// Default relative tolerance for span membership.
inline constexpr double kSpanTol = 1e-8;

/// Throws std::invalid_argument on an empty or linearly dependent family.
DInvarianceCheck is_d_invariant(const std::vector<Poly>& basis, double tol = kSpanTol);

/// Relative least-squares residual of f against span(basis).
double span_residual(const std::vector<Poly>& basis, const Poly& f);

/// A finite-dimensional polynomial space closed under differentiation,
/// held through a basis. Validated on construction.
class DInvariantSpace {
 public:
  explicit DInvariantSpace(std::vector<Poly> basis, double tol = kSpanTol);

  std::size_t dim() const { return basis_.size(); }
  std::size_t vars() const { return vars_; }
  int degree() const;
  const std::vector<Poly>& basis() const { return basis_; }

  /// Monomials x^alpha for every alpha in a lower set (validated).
  static DInvariantSpace lower_set(std::size_t vars, const std::vector<MultiIndex>& set);
  /// Pi_k, all polynomials of degree at most k.
  static DInvariantSpace fat_point(std::size_t vars, int k);

 private:
  std::vector<Poly> basis_;
  std::size_t vars_ = 0;
};

/// Homogeneous basis that is orthonormal for the apolar product, ordered by
/// degree.
struct OrthoHomogBasis {
  std::vector<Poly> elements;
  std::vector<int> degrees;
};

/// Degree-graded Gram-Schmidt with two orthogonalization passes. Throws
/// std::invalid_argument when the space is not spanned by the homogeneous
/// components of its elements.
OrthoHomogBasis ortho_homog_basis(const DInvariantSpace& space);

/// |f - sum_q (f, q) q| / |f|, relative coefficient norm.
double ortho_expansion_residual(const OrthoHomogBasis& q, const Poly& f);

/// |f(x+y) - sum_q (conj(q)(D) f)(y) q(x)|. Throws when f is outside the span.
double taylor_identity_residual(const DInvariantSpace& space, const Poly& f,
                                std::span<const Complex> x, std::span<const Complex> y);

}  // namespace expkern
