#include "expkern/newton.hpp"

#include <array>
#include <cmath>

namespace expkern {

namespace {

constexpr int kMaxStirling = 20;

// S(n, k), Stirling numbers of the second kind; exact in double up to n = 20.
double stirling2(int n, int k) {
  static const auto table = [] {
    std::array<std::array<double, kMaxStirling + 1>, kMaxStirling + 1> t{};
    t[0][0] = 1.0;
    for (int i = 1; i <= kMaxStirling; ++i)
      for (int j = 1; j <= i; ++j) t[i][j] = j * t[i - 1][j] + t[i - 1][j - 1];
    return t;
  }();
  if (n > kMaxStirling) throw std::domain_error("degree above Stirling table guard");
  if (k < 0 || k > n) return 0.0;
  return table[n][k];
}

void require_polynomial(const Poly& f, const char* what) {
  if (!f.is_polynomial()) throw std::invalid_argument(std::string(what) + ": Laurent exponents");
}

void accumulate_stirling(const MultiIndex& gamma, Complex c, std::size_t j, MultiIndex& kappa,
                         NewtonCoeffs& out) {
  if (j == gamma.dim()) {
    if (c != Complex(0.0)) {
      auto [it, inserted] = out.try_emplace(kappa, c);
      if (!inserted) it->second += c;
    }
    return;
  }
  for (int k = (gamma[j] == 0 ? 0 : 1); k <= gamma[j]; ++k) {
    kappa[j] = k;
    accumulate_stirling(gamma, c * stirling2(gamma[j], k), j + 1, kappa, out);
  }
}

}  // namespace

Poly forward_difference(const Poly& f, const MultiIndex& gamma) {
  if (gamma.dim() != f.dim()) throw DimensionMismatch("difference order dimension");
  if (!gamma.nonnegative()) throw std::invalid_argument("negative difference order " + gamma.str());
  require_polynomial(f, "forward_difference");
  Poly r = f;
  for (std::size_t j = 0; j < gamma.dim(); ++j) {
    Point e(f.dim(), 0.0);
    e[j] = 1.0;
    for (int k = 0; k < gamma[j]; ++k) r = translate(r, e) - r;
  }
  return r;
}

NewtonCoeffs newton_coeffs(const Poly& f) {
  require_polynomial(f, "newton_coeffs");
  NewtonCoeffs out;
  MultiIndex kappa(f.dim());
  for (const auto& [g, c] : f.terms()) accumulate_stirling(g, c, 0, kappa, out);
  std::erase_if(out, [](const auto& kv) { return kv.second == Complex(0.0); });
  return out;
}

Poly from_newton(const NewtonCoeffs& c, std::size_t dim) {
  Poly r(dim);
  for (const auto& [g, v] : c) r += falling_factorial(g) * v;
  return r;
}

Poly L_op(const Poly& f) {
  Poly r(f.dim());
  for (const auto& [g, c] : newton_coeffs(f)) r.add_term(g, c);
  return r;
}

Poly L_inv(const Poly& f) {
  require_polynomial(f, "L_inv");
  Poly g(f.dim());
  Poly rest = f;
  // each step removes the top degree of rest exactly, since L fixes leading forms
  while (!rest.is_zero()) {
    Poly top = rest.homogeneous_part(rest.degree());
    g += top;
    rest -= L_op(top);
  }
  return g;
}

const char* to_string(PThetaConvention c) {
  return c == PThetaConvention::with_sigma_minus ? "with-sigma" : "without-sigma";
}

int PThetaBasis::degree() const {
  int d = 0;
  for (const auto& p : elements) d = std::max(d, p.degree());
  return d;
}

PThetaBasis build_p_theta(const DInvariantSpace& q, const Point& theta,
                          PThetaConvention convention) {
  if (theta.size() != q.vars()) throw DimensionMismatch("theta dimension");
  for (const auto& t : theta)
    if (t == Complex(0.0)) throw std::domain_error("theta has a zero component");
  PThetaBasis out{theta, {}, convention};
  for (const auto& e : ortho_homog_basis(q).elements) {
    Poly p = L_inv(scale_vars(e, theta));
    if (convention == PThetaConvention::with_sigma_minus) p = sigma_minus(p);
    out.elements.push_back(std::move(p));
  }
  return out;
}

linalg::Matrix shift_matrix(const PThetaBasis& p, const Point& y) {
  const auto n = static_cast<long>(p.elements.size());
  std::vector<Poly> shifted;
  shifted.reserve(p.elements.size());
  for (const auto& e : p.elements) shifted.push_back(translate(e, y));
  std::vector<Poly> all = p.elements;
  all.insert(all.end(), shifted.begin(), shifted.end());
  auto index = linalg::MonomialIndex::covering(all);
  linalg::Matrix b = linalg::coefficient_matrix(p.elements, index);
  Eigen::ColPivHouseholderQR<linalg::Matrix> qr(b);
  qr.setThreshold(1e-12);
  if (qr.rank() < n) throw VerificationError("shift_matrix: P_theta basis is numerically dependent");
  linalg::Matrix g(n, n);
  for (long i = 0; i < n; ++i) {
    linalg::Vector coeffs = qr.solve(index.coefficients(shifted[static_cast<std::size_t>(i)]));
    g.row(i) = coeffs.transpose();
  }
  return g;
}

}  // namespace expkern
