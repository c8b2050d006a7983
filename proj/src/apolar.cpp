#include "expkern/apolar.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "expkern/linalg.hpp"

namespace expkern {

Complex bombieri(const Poly& f, const Poly& g) {
  if (f.dim() != g.dim()) throw DimensionMismatch("bombieri: dimension mismatch");
  Complex s = 0.0;
  // both term maps are sorted the same way, so walk them in lockstep
  auto a = f.terms().begin();
  auto b = g.terms().begin();
  const GradedLex less;
  while (a != f.terms().end() && b != g.terms().end()) {
    if (less(a->first, b->first)) {
      ++a;
    } else if (less(b->first, a->first)) {
      ++b;
    } else {
      if (!a->first.nonnegative()) throw std::invalid_argument("bombieri: Laurent exponent");
      s += factorial(a->first) * a->second * std::conj(b->second);
      ++a;
      ++b;
    }
  }
  return s;
}

double adjoint_check(const Poly& p, const Poly& f, const Poly& g) {
  const Complex lhs = bombieri(apply_poly_diff(p, f), g);
  const Complex rhs = bombieri(f, p.conj() * g);
  return std::abs(lhs - rhs);
}

double span_residual(const std::vector<Poly>& basis, const Poly& f) {
  std::vector<Poly> all = basis;
  all.push_back(f);
  auto index = linalg::MonomialIndex::covering(all);
  auto b = linalg::coefficient_matrix(basis, index);
  const double nf = f.norm2();
  if (nf == 0.0) return 0.0;
  return linalg::least_squares_residual(b, index.coefficients(f)) / nf;
}

DInvarianceCheck is_d_invariant(const std::vector<Poly>& basis, double tol) {
  if (basis.empty()) throw std::invalid_argument("empty basis");
  const std::size_t s = basis.front().dim();
  for (const auto& q : basis) {
    if (q.dim() != s) throw DimensionMismatch("basis elements in different dimensions");
    if (!q.is_polynomial()) throw std::invalid_argument("basis element is a Laurent polynomial");
    if (q.is_zero()) throw std::invalid_argument("basis contains the zero polynomial");
  }
  {
    auto index = linalg::MonomialIndex::covering(basis);
    auto b = linalg::coefficient_matrix(basis, index);
    if (linalg::numerical_rank(b, 1e-10) < static_cast<int>(basis.size()))
      throw std::invalid_argument("basis is linearly dependent");
  }
  DInvarianceCheck out;
  std::vector<Poly> all = basis;
  for (const auto& q : basis)
    for (std::size_t j = 0; j < s; ++j) all.push_back(diff(q, MultiIndex::unit(s, j)));
  auto index = linalg::MonomialIndex::covering(all);
  auto b = linalg::coefficient_matrix(basis, index);
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const double nq = basis[i].norm2();
    for (std::size_t j = 0; j < s; ++j) {
      const Poly& d = all[basis.size() + i * s + j];
      const double r = linalg::least_squares_residual(b, index.coefficients(d)) / nq;
      out.max_residual = std::max(out.max_residual, r);
      if (r > tol && out.invariant) {
        out.invariant = false;
        out.witness = std::make_pair(i, j);
      }
    }
  }
  return out;
}

DInvariantSpace::DInvariantSpace(std::vector<Poly> basis, double tol) : basis_(std::move(basis)) {
  auto check = is_d_invariant(basis_, tol);
  vars_ = basis_.front().dim();
  if (!check.invariant) {
    const auto [i, j] = *check.witness;
    throw std::invalid_argument("space is not D-invariant: D_" + std::to_string(j + 1) + " of " +
                                basis_[i].str() + " leaves the span");
  }
}

int DInvariantSpace::degree() const {
  int d = 0;
  for (const auto& q : basis_) d = std::max(d, q.degree());
  return d;
}

DInvariantSpace DInvariantSpace::lower_set(std::size_t vars, const std::vector<MultiIndex>& set) {
  std::set<MultiIndex, GradedLex> members(set.begin(), set.end());
  for (const auto& a : members) {
    if (a.dim() != vars || !a.nonnegative()) throw std::invalid_argument("bad lower-set index");
    for (std::size_t j = 0; j < vars; ++j) {
      if (a[j] == 0) continue;
      if (!members.contains(a - MultiIndex::unit(vars, j)))
        throw std::invalid_argument("index set " + a.str() + " is not a lower set");
    }
  }
  std::vector<Poly> basis;
  for (const auto& a : members) basis.push_back(Poly::monomial(a));
  return DInvariantSpace(std::move(basis));
}

DInvariantSpace DInvariantSpace::fat_point(std::size_t vars, int k) {
  return lower_set(vars, monomials_up_to(vars, k));
}

OrthoHomogBasis ortho_homog_basis(const DInvariantSpace& space) {
  OrthoHomogBasis out;
  const int deg = space.degree();
  for (int k = 0; k <= deg; ++k) {
    std::vector<Poly> layer;
    for (const auto& q : space.basis()) {
      Poly h = q.homogeneous_part(k);
      if (h.is_zero()) continue;
      double n0 = bombieri_norm(h);
      Poly v = h;
      for (int pass = 0; pass < 2; ++pass)
        for (const auto& e : layer) v -= e * bombieri(v, e);
      double n1 = bombieri_norm(v);
      if (n1 <= kSpanTol * n0) continue;
      layer.push_back(v * Complex(1.0 / n1));
    }
    for (auto& e : layer) {
      out.elements.push_back(std::move(e));
      out.degrees.push_back(k);
    }
  }
  if (out.elements.size() != space.dim()) {
    throw std::invalid_argument("space is not spanned by homogeneous polynomials: components span " +
                                std::to_string(out.elements.size()) + " dimensions, space has " +
                                std::to_string(space.dim()));
  }
  return out;
}

double ortho_expansion_residual(const OrthoHomogBasis& q, const Poly& f) {
  Poly g(f.dim());
  for (const auto& e : q.elements) g += e * bombieri(f, e);
  const double nf = f.norm2();
  return nf == 0.0 ? g.norm2() : (f - g).norm2() / nf;
}

double taylor_identity_residual(const DInvariantSpace& space, const Poly& f,
                                std::span<const Complex> x, std::span<const Complex> y) {
  if (span_residual(space.basis(), f) > kSpanTol)
    throw std::invalid_argument("polynomial is not in the span of the space");
  const auto q = ortho_homog_basis(space);
  Point xy(x.begin(), x.end());
  for (std::size_t j = 0; j < xy.size(); ++j) xy[j] += y[j];
  Complex sum = 0.0;
  for (const auto& e : q.elements) sum += eval(apply_poly_diff(e.conj(), f), y) * eval(e, x);
  return std::abs(eval(f, xy) - sum);
}

}  // namespace expkern
