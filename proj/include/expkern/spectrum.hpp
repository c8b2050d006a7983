#pragma once

// Zeros with multiplicity spaces, the dual conditions q(D) h*(1/theta) = 0,
// Hermite fundamental polynomials and kernel assembly.
//
// A spectrum lists pairs (theta, Q_theta). The exponential base is theta; all
// dual functionals are evaluated at the componentwise inverse 1/theta, and
// always against the orthonormal homogeneous basis of Q_theta.

#include <vector>

#include "expkern/apolar.hpp"
#include "expkern/filters.hpp"
#include "expkern/linalg.hpp"
#include "expkern/newton.hpp"

namespace expkern {

class Zero {
 public:
  /// Throws on zero components, dimension mismatch, or a multiplicity space
  /// without a homogeneous basis.
  Zero(Point theta, DInvariantSpace mult);

  const Point& theta() const { return theta_; }
  /// Componentwise 1/theta, where the dual conditions live.
  const Point& point() const { return inverse_; }
  const DInvariantSpace& mult() const { return mult_; }
  const OrthoHomogBasis& ortho() const { return ortho_; }
  std::size_t dim() const { return mult_.dim(); }

 private:
  Point theta_;
  Point inverse_;
  DInvariantSpace mult_;
  OrthoHomogBasis ortho_;
};

class Spectrum {
 public:
  explicit Spectrum(std::size_t vars, std::vector<Zero> zeros = {});

  std::size_t vars() const { return vars_; }
  const std::vector<Zero>& zeros() const { return zeros_; }
  std::size_t total_multiplicity() const;
  /// Smallest pairwise distance between thetas (infinity for < 2 zeros).
  double min_separation() const;
  bool distinct(double tol = 1e-9) const { return min_separation() > tol; }

 private:
  std::size_t vars_;
  std::vector<Zero> zeros_;
};

/// (q(D) f)(point)
Complex dual_apply(const Poly& q, const LaurentPoly& f, std::span<const Complex> point);
/// sum_beta |q_beta| sum_gamma |(D^beta f)_gamma point^gamma|: the magnitude
/// dual_apply's rounding error is relative to.
double dual_scale(const Poly& q, const LaurentPoly& f, std::span<const Complex> point);

struct DualEntry {
  std::size_t filter = 0;
  std::size_t zero = 0;
  std::size_t q = 0;
  Complex value;
  double scale = 0.0;
  bool pass = false;
};

struct ZeroDimReport {
  std::vector<DualEntry> entries;
  double max_abs = 0.0;
  bool pass = true;
};

/// Evaluates every dual condition on the Laurent-normalized symbols.
ZeroDimReport verify_zero_dim(std::span<const Impulse> h, const Spectrum& spec, Tolerance tol = {});

/// Rows (zero, q) in spectrum order, columns the monomials:
/// V[(theta, q), beta] = (q(D) x^beta)(1/theta).
linalg::Matrix collocation_matrix(const Spectrum& spec, const std::vector<MultiIndex>& monomials);

struct FundamentalSystem {
  /// f[zero][q], Kronecker-dual to the functionals of the spectrum.
  std::vector<std::vector<Poly>> f;
  int degree = 0;
  /// duals(i, j) = functional i applied to fundamental j; the identity up to rounding.
  linalg::Matrix duals;
};

/// Minimal-degree, minimum-norm Hermite fundamental polynomials. Throws
/// VerificationError for repeated thetas or when no degree up to
/// max deg Q + total multiplicity reaches full rank.
FundamentalSystem hermite_fundamentals(const Spectrum& spec);

/// n filters whose symbols lie in the nullspace of the collocation matrix
/// over Pi_d; each is annihilated by every dual functional of spec.
std::vector<Impulse> ideal_complement_filters(const Spectrum& spec, std::size_t n, int d);
/// The whole nullspace basis over Pi_d.
std::vector<Impulse> ideal_complement_basis(const Spectrum& spec, int d);

struct KernelComponent {
  Point theta;
  PThetaBasis basis;
  /// Residual oracle of each basis element against the filters.
  std::vector<ThetaResidual> certificates;
};

struct KernelOptions {
  PThetaConvention convention = kDefaultConvention;
  Tolerance tol{};
  int window_pad = 0;
};

/// P_theta bases for every zero, certified against h by the residual oracle.
/// Throws VerificationError if a dual condition or a certificate fails, and
/// std::invalid_argument for repeated thetas.
std::vector<KernelComponent> kernel_basis(std::span<const Impulse> h, const Spectrum& spec,
                                          const KernelOptions& opts = {});

/// Flattens a kernel basis into one ExpPolySeq per basis element.
std::vector<ExpPolySeq> kernel_sequences(const std::vector<KernelComponent>& kernel);

/// dim Pi_d - rank of { z^gamma h* : |gamma| + deg h* <= d }.
int quotient_dim_estimate(std::span<const Impulse> h, int d);

/// Runs both P_theta conventions through the annihilation test on the
/// spectrum theta = (1, 2), Q = span{1, x+y, (x+y)^2}; returns the one that
/// passes. Throws if not exactly one does.
PThetaConvention calibrate_convention();

}  // namespace expkern
