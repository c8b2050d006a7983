#include "expkern/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace expkern {

namespace {

Complex ipow(Complex z, int n) {
  if (n < 0) return ipow(1.0 / z, -n);
  Complex r = 1.0;
  while (n > 0) {
    if (n & 1) r *= z;
    z *= z;
    n >>= 1;
  }
  return r;
}

// (q(D) x^beta)(point) = sum_alpha q_alpha (beta)_alpha point^(beta - alpha)
Complex dual_of_monomial(const Poly& q, const MultiIndex& beta, std::span<const Complex> point) {
  Complex s = 0.0;
  for (const auto& [a, c] : q.terms()) {
    double k = 1.0;
    for (std::size_t j = 0; j < beta.dim() && k != 0.0; ++j) k *= falling(beta[j], a[j]);
    if (k == 0.0) continue;
    Complex m = c * k;
    for (std::size_t j = 0; j < beta.dim(); ++j) m *= ipow(point[j], beta[j] - a[j]);
    s += m;
  }
  return s;
}

Impulse normalized_impulse(const linalg::Vector& v, const std::vector<MultiIndex>& monos,
                           std::size_t dim) {
  // largest coefficient becomes exactly 1
  long arg = 0;
  v.cwiseAbs().maxCoeff(&arg);
  LaurentPoly sym(dim);
  for (long i = 0; i < v.size(); ++i)
    sym.add_term(monos[static_cast<std::size_t>(i)], i == arg ? Complex(1.0) : v(i) / v(arg));
  return Impulse::from_symbol(std::move(sym));
}

void require_distinct(const Spectrum& spec) {
  if (!spec.distinct())
    throw std::invalid_argument("spectrum has repeated theta values");
}

}  // namespace

Zero::Zero(Point theta, DInvariantSpace mult)
    : theta_(std::move(theta)), mult_(std::move(mult)), ortho_(ortho_homog_basis(mult_)) {
  if (theta_.size() != mult_.vars()) throw DimensionMismatch("theta and multiplicity space dimensions");
  inverse_.resize(theta_.size());
  for (std::size_t j = 0; j < theta_.size(); ++j) {
    if (theta_[j] == Complex(0.0)) throw std::domain_error("theta has a zero component");
    inverse_[j] = 1.0 / theta_[j];
  }
}

Spectrum::Spectrum(std::size_t vars, std::vector<Zero> zeros) : vars_(vars), zeros_(std::move(zeros)) {
  if (vars_ == 0) throw std::invalid_argument("spectrum needs at least one variable");
  for (const auto& z : zeros_)
    if (z.theta().size() != vars_) throw DimensionMismatch("zero dimension differs from spectrum");
}

std::size_t Spectrum::total_multiplicity() const {
  std::size_t n = 0;
  for (const auto& z : zeros_) n += z.dim();
  return n;
}

double Spectrum::min_separation() const {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < zeros_.size(); ++i)
    for (std::size_t k = 0; k < i; ++k) {
      double d = 0.0;
      for (std::size_t j = 0; j < vars_; ++j) d += std::norm(zeros_[i].theta()[j] - zeros_[k].theta()[j]);
      best = std::min(best, std::sqrt(d));
    }
  return best;
}

Complex dual_apply(const Poly& q, const LaurentPoly& f, std::span<const Complex> point) {
  return eval(apply_poly_diff(q, f), point);
}

double dual_scale(const Poly& q, const LaurentPoly& f, std::span<const Complex> point) {
  double s = 0.0;
  for (const auto& [a, c] : q.terms()) s += std::abs(c) * eval_scale(diff(f, a), point);
  return s;
}

ZeroDimReport verify_zero_dim(std::span<const Impulse> h, const Spectrum& spec, Tolerance tol) {
  ZeroDimReport report;
  for (std::size_t i = 0; i < h.size(); ++i) {
    if (h[i].dim() != spec.vars()) throw DimensionMismatch("filter and spectrum dimensions differ");
    if (h[i].is_zero()) throw std::invalid_argument("zero impulse response");
    const Poly sym = laurent_normalize(symbol(h[i])).poly;
    for (std::size_t z = 0; z < spec.zeros().size(); ++z) {
      const Zero& zero = spec.zeros()[z];
      for (std::size_t k = 0; k < zero.ortho().elements.size(); ++k) {
        const Poly& q = zero.ortho().elements[k];
        DualEntry e{i, z, k, dual_apply(q, sym, zero.point()), dual_scale(q, sym, zero.point()), false};
        e.pass = tol.accepts(std::abs(e.value), e.scale);
        report.pass = report.pass && e.pass;
        report.max_abs = std::max(report.max_abs, std::abs(e.value));
        report.entries.push_back(e);
      }
    }
  }
  return report;
}

linalg::Matrix collocation_matrix(const Spectrum& spec, const std::vector<MultiIndex>& monomials) {
  const auto rows = static_cast<long>(spec.total_multiplicity());
  linalg::Matrix v(rows, static_cast<long>(monomials.size()));
  long r = 0;
  for (const auto& zero : spec.zeros())
    for (const auto& q : zero.ortho().elements) {
      for (std::size_t c = 0; c < monomials.size(); ++c)
        v(r, static_cast<long>(c)) = dual_of_monomial(q, monomials[c], zero.point());
      ++r;
    }
  return v;
}

FundamentalSystem hermite_fundamentals(const Spectrum& spec) {
  if (!spec.distinct()) throw VerificationError("hermite_fundamentals: repeated theta values");
  const auto m = static_cast<long>(spec.total_multiplicity());
  FundamentalSystem out;
  if (m == 0) {
    out.duals = linalg::Matrix(0, 0);
    return out;
  }
  int d0 = 0;
  for (const auto& z : spec.zeros()) d0 = std::max(d0, z.mult().degree());
  const int dmax = d0 + static_cast<int>(m);
  for (int d = d0; d <= dmax; ++d) {
    const auto monos = monomials_up_to(spec.vars(), d);
    const linalg::Matrix v = collocation_matrix(spec, monos);
    if (linalg::numerical_rank(v, 1e-10) < m) continue;
    const linalg::Matrix x = linalg::pseudo_inverse(v, 1e-10);
    const linalg::MonomialIndex index(monos);
    long col = 0;
    for (const auto& zero : spec.zeros()) {
      std::vector<Poly> fz;
      for (std::size_t k = 0; k < zero.ortho().elements.size(); ++k, ++col)
        fz.push_back(index.to_poly(x.col(col), spec.vars()));
      out.f.push_back(std::move(fz));
    }
    out.degree = d;
    out.duals = v * x;
    return out;
  }
  throw VerificationError("hermite_fundamentals: collocation rank not reached by degree " +
                          std::to_string(dmax));
}

std::vector<Impulse> ideal_complement_basis(const Spectrum& spec, int d) {
  const auto monos = monomials_up_to(spec.vars(), d);
  const linalg::Matrix null = linalg::nullspace(collocation_matrix(spec, monos), 1e-10);
  std::vector<Impulse> out;
  for (long c = 0; c < null.cols(); ++c) out.push_back(normalized_impulse(null.col(c), monos, spec.vars()));
  return out;
}

std::vector<Impulse> ideal_complement_filters(const Spectrum& spec, std::size_t n, int d) {
  if (monomials_up_to(spec.vars(), d).size() <= spec.total_multiplicity())
    throw std::invalid_argument("degree " + std::to_string(d) + " leaves no room for filters");
  auto all = ideal_complement_basis(spec, d);
  if (all.size() < n)
    throw std::invalid_argument("nullspace has dimension " + std::to_string(all.size()) + " < " +
                                std::to_string(n));
  all.resize(n);
  return all;
}

std::vector<KernelComponent> kernel_basis(std::span<const Impulse> h, const Spectrum& spec,
                                          const KernelOptions& opts) {
  require_distinct(spec);
  const ZeroDimReport dual = verify_zero_dim(h, spec, opts.tol);
  if (!dual.pass) {
    for (const auto& e : dual.entries)
      if (!e.pass)
        throw VerificationError("dual condition fails: filter " + std::to_string(e.filter) + ", zero " +
                                std::to_string(e.zero) + ", q " + std::to_string(e.q) +
                                ", |value| = " + std::to_string(std::abs(e.value)));
  }
  std::vector<KernelComponent> out;
  for (const auto& zero : spec.zeros()) {
    KernelComponent comp{zero.theta(), build_p_theta(zero.mult(), zero.theta(), opts.convention), {}};
    for (const auto& p : comp.basis.elements) {
      const auto rep = kernel_residual(h, ExpPolySeq::single(zero.theta(), p), opts.window_pad);
      const ThetaResidual& tr = rep.per_theta.front();
      if (!opts.tol.accepts(tr.residual, tr.scale))
        throw VerificationError("kernel certificate fails for " + p.str() + ": residual " +
                                std::to_string(tr.residual));
      comp.certificates.push_back(tr);
    }
    out.push_back(std::move(comp));
  }
  return out;
}

std::vector<ExpPolySeq> kernel_sequences(const std::vector<KernelComponent>& kernel) {
  std::vector<ExpPolySeq> out;
  for (const auto& comp : kernel)
    for (const auto& p : comp.basis.elements) out.push_back(ExpPolySeq::single(comp.theta, p));
  return out;
}

int quotient_dim_estimate(std::span<const Impulse> h, int d) {
  if (h.empty()) throw std::invalid_argument("quotient estimate needs at least one filter");
  const std::size_t s = h.front().dim();
  const auto monos = monomials_up_to(s, d);
  const linalg::MonomialIndex index(monos);
  std::vector<LaurentPoly> multiples;
  for (const auto& f : h) {
    if (f.dim() != s) throw DimensionMismatch("filters in different dimensions");
    if (f.is_zero()) continue;
    // only negative exponents are shifted away; zeros at the origin still count
    LaurentPoly sym = symbol(f);
    MultiIndex mu = sym.min_exponent();
    for (std::size_t j = 0; j < s; ++j) mu[j] = std::max(0, -mu[j]);
    sym = shift_exponents(sym, mu);
    const int dh = sym.degree();
    if (dh > d) continue;
    for (const auto& g : monomials_up_to(s, d - dh)) multiples.push_back(shift_exponents(sym, g));
  }
  const int rank =
      multiples.empty() ? 0 : linalg::numerical_rank(linalg::coefficient_matrix(multiples, index), 1e-10);
  return static_cast<int>(monos.size()) - rank;
}

PThetaConvention calibrate_convention() {
  const std::size_t s = 2;
  const Poly l = Poly::variable(s, 0) + Poly::variable(s, 1);
  DInvariantSpace q({Poly::constant(s, 1.0), l, l * l});
  Spectrum spec(s, {Zero({1.0, 2.0}, q)});
  const auto fund = hermite_fundamentals(spec);
  const auto filters = ideal_complement_basis(spec, fund.degree + 1);
  std::vector<PThetaConvention> passing;
  for (auto conv : {PThetaConvention::with_sigma_minus, PThetaConvention::without_sigma_minus}) {
    const auto p = build_p_theta(q, spec.zeros().front().theta(), conv);
    bool ok = true;
    for (const auto& e : p.elements) {
      const auto rep = kernel_residual(filters, ExpPolySeq::single(p.theta, e));
      ok = ok && rep.max_residual <= 1e-8;
    }
    if (ok) passing.push_back(conv);
  }
  if (passing.size() != 1)
    throw VerificationError("convention calibration is ambiguous: " + std::to_string(passing.size()) +
                            " conventions pass");
  return passing.front();
}

}  // namespace expkern
