#pragma once

// Coefficient-matrix views of polynomial families and the handful of dense
// factorizations the library needs (rank, nullspace, least squares).

#include <Eigen/Dense>
#include <map>
#include <vector>

#include "expkern/mpoly.hpp"

namespace expkern::linalg {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Column index of each monomial that occurs in a family of polynomials.
class MonomialIndex {
 public:
  MonomialIndex() = default;
  explicit MonomialIndex(std::vector<MultiIndex> monomials);
  static MonomialIndex covering(std::span<const LaurentPoly> polys);

  std::size_t size() const { return monos_.size(); }
  const std::vector<MultiIndex>& monomials() const { return monos_; }
  /// -1 when the monomial is not indexed.
  long find(const MultiIndex& gamma) const;

  Vector coefficients(const LaurentPoly& f) const;
  LaurentPoly to_poly(const Vector& v, std::size_t dim) const;

 private:
  std::vector<MultiIndex> monos_;
  std::map<MultiIndex, long, GradedLex> pos_;
};

/// Columns are coefficient vectors of polys.
Matrix coefficient_matrix(std::span<const LaurentPoly> polys, const MonomialIndex& index);

/// Number of singular values above rel * sigma_max.
int numerical_rank(const Matrix& m, double rel);

/// Orthonormal basis of the right nullspace (columns), singular values
/// below rel * sigma_max counted as zero.
Matrix nullspace(const Matrix& m, double rel);

/// Moore-Penrose pseudo-inverse with the same cutoff.
Matrix pseudo_inverse(const Matrix& m, double rel);

/// min_c |B c - v|, absolute.
double least_squares_residual(const Matrix& b, const Vector& v);

}  // namespace expkern::linalg
