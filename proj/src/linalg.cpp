#include "expkern/linalg.hpp"

#include <set>

namespace expkern::linalg {

MonomialIndex::MonomialIndex(std::vector<MultiIndex> monomials) : monos_(std::move(monomials)) {
  for (std::size_t i = 0; i < monos_.size(); ++i) pos_.emplace(monos_[i], static_cast<long>(i));
}

MonomialIndex MonomialIndex::covering(std::span<const LaurentPoly> polys) {
  std::set<MultiIndex, GradedLex> all;
  for (const auto& f : polys)
    for (const auto& [g, c] : f.terms()) all.insert(g);
  return MonomialIndex(std::vector<MultiIndex>(all.begin(), all.end()));
}

long MonomialIndex::find(const MultiIndex& gamma) const {
  auto it = pos_.find(gamma);
  return it == pos_.end() ? -1 : it->second;
}

Vector MonomialIndex::coefficients(const LaurentPoly& f) const {
  Vector v = Vector::Zero(static_cast<long>(monos_.size()));
  for (const auto& [g, c] : f.terms()) {
    long i = find(g);
    if (i < 0) throw std::invalid_argument("monomial " + g.str() + " outside coefficient index");
    v(i) = c;
  }
  return v;
}

LaurentPoly MonomialIndex::to_poly(const Vector& v, std::size_t dim) const {
  LaurentPoly f(dim);
  for (long i = 0; i < v.size(); ++i) f.add_term(monos_[static_cast<std::size_t>(i)], v(i));
  return f;
}

Matrix coefficient_matrix(std::span<const LaurentPoly> polys, const MonomialIndex& index) {
  Matrix m(static_cast<long>(index.size()), static_cast<long>(polys.size()));
  for (std::size_t k = 0; k < polys.size(); ++k) m.col(static_cast<long>(k)) = index.coefficients(polys[k]);
  return m;
}

int numerical_rank(const Matrix& m, double rel) {
  if (m.size() == 0) return 0;
  Eigen::BDCSVD<Matrix> svd(m);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) == 0.0) return 0;
  int r = 0;
  for (long i = 0; i < sv.size(); ++i)
    if (sv(i) > rel * sv(0)) ++r;
  return r;
}

Matrix nullspace(const Matrix& m, double rel) {
  const long n = m.cols();
  if (m.rows() == 0) return Matrix::Identity(n, n);
  Eigen::BDCSVD<Matrix> svd(m, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  long r = 0;
  if (sv.size() > 0 && sv(0) > 0.0)
    for (long i = 0; i < sv.size(); ++i)
      if (sv(i) > rel * sv(0)) ++r;
  return svd.matrixV().rightCols(n - r);
}

Matrix pseudo_inverse(const Matrix& m, double rel) {
  Eigen::BDCSVD<Matrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  Eigen::VectorXd inv = Eigen::VectorXd::Zero(sv.size());
  for (long i = 0; i < sv.size(); ++i)
    if (sv(0) > 0.0 && sv(i) > rel * sv(0)) inv(i) = 1.0 / sv(i);
  return svd.matrixV() * inv.asDiagonal() * svd.matrixU().adjoint();
}

double least_squares_residual(const Matrix& b, const Vector& v) {
  const double nv = v.norm();
  if (b.cols() == 0) return nv;
  Eigen::ColPivHouseholderQR<Matrix> qr(b);
  Vector c = qr.solve(v);
  return (b * c - v).norm();
}

}  // namespace expkern::linalg
