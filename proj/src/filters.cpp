#include "expkern/filters.hpp"

#include <algorithm>
#include <cmath>

namespace expkern {

namespace {

using Tap = std::pair<MultiIndex, Complex>;

std::vector<Tap> tap_list(const Impulse& h) {
  return {h.taps().begin(), h.taps().end()};
}

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

// p at an integer point without building a complex evaluation vector
Complex poly_at(const Poly& p, const MultiIndex& alpha) {
  Complex s = 0.0;
  for (const auto& [g, c] : p.terms()) {
    double m = 1.0;
    for (std::size_t j = 0; j < g.dim(); ++j)
      for (int k = 0; k < g[j]; ++k) m *= alpha[j];
    s += c * m;
  }
  return s;
}

void require_dim(const Impulse& h, std::size_t dim) {
  if (h.dim() != dim) throw DimensionMismatch("impulse and sequence dimensions differ");
}

}  // namespace

Impulse Impulse::from_symbol(LaurentPoly symbol) {
  Impulse h;
  h.taps_ = std::move(symbol);
  return h;
}

Impulse Impulse::delta(const MultiIndex& at, Complex value) {
  Impulse h(at.dim());
  h.set(at, value);
  return h;
}

void Impulse::set(const MultiIndex& at, Complex value) {
  taps_.add_term(at, value - taps_.coeff(at));
}

LaurentPoly symbol(const Impulse& h) { return h.tap_poly(); }

ExpPolySeq::ExpPolySeq(std::size_t dim, std::vector<ExpPolyTerm> terms)
    : dim_(dim), terms_(std::move(terms)) {
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    const auto& t = terms_[i];
    if (t.theta.size() != dim_ || t.p.dim() != dim_)
      throw DimensionMismatch("exponential-polynomial term dimension");
    if (!t.p.is_polynomial()) throw std::invalid_argument("term factor must be a polynomial");
    for (const auto& z : t.theta)
      if (z == Complex(0.0)) throw std::domain_error("theta has a zero component");
    for (std::size_t k = 0; k < i; ++k)
      if (terms_[k].theta == t.theta) throw std::invalid_argument("repeated theta in sequence");
  }
}

ExpPolySeq ExpPolySeq::single(Point theta, Poly p) {
  const std::size_t dim = theta.size();
  return ExpPolySeq(dim, {ExpPolyTerm{std::move(theta), std::move(p)}});
}

int ExpPolySeq::degree() const {
  int d = 0;
  for (const auto& t : terms_) d = std::max(d, t.p.degree());
  return d;
}

Complex exp_term(std::span<const Complex> theta, const MultiIndex& alpha) {
  Complex r = 1.0;
  for (std::size_t j = 0; j < theta.size(); ++j) r *= ipow(theta[j], alpha[j]);
  return r;
}

Complex exp_poly_value(const ExpPolyTerm& t, const MultiIndex& alpha) {
  return poly_at(t.p, alpha) * exp_term(t.theta, alpha);
}

Complex ExpPolySeq::value(const MultiIndex& alpha) const {
  Complex s = 0.0;
  for (const auto& t : terms_) s += exp_poly_value(t, alpha);
  return s;
}

Window Window::box(std::size_t dim, int lo, int hi) {
  MultiIndex l(dim), u(dim);
  for (std::size_t j = 0; j < dim; ++j) {
    l[j] = lo;
    u[j] = hi;
  }
  return {l, u};
}

std::size_t Window::size() const {
  std::size_t n = 1;
  for (std::size_t j = 0; j < dim(); ++j) n *= static_cast<std::size_t>(upper[j] - lower[j] + 1);
  return n;
}

bool Window::contains(const MultiIndex& alpha) const {
  for (std::size_t j = 0; j < dim(); ++j)
    if (alpha[j] < lower[j] || alpha[j] > upper[j]) return false;
  return true;
}

std::size_t Window::offset(const MultiIndex& alpha) const {
  std::size_t off = 0;
  for (std::size_t j = 0; j < dim(); ++j)
    off = off * static_cast<std::size_t>(upper[j] - lower[j] + 1) +
          static_cast<std::size_t>(alpha[j] - lower[j]);
  return off;
}

MultiIndex Window::point(std::size_t offset) const {
  MultiIndex a(dim());
  for (std::size_t j = dim(); j-- > 0;) {
    const auto len = static_cast<std::size_t>(upper[j] - lower[j] + 1);
    a[j] = lower[j] + static_cast<int>(offset % len);
    offset /= len;
  }
  return a;
}

std::vector<MultiIndex> Window::points() const {
  std::vector<MultiIndex> out;
  out.reserve(size());
  for (std::size_t i = 0; i < size(); ++i) out.push_back(point(i));
  return out;
}

Window Window::padded(int pad) const {
  Window w = *this;
  for (std::size_t j = 0; j < dim(); ++j) w.upper[j] += pad;
  return w;
}

WindowedSeq sample(const ExpPolySeq& c, const Window& w) {
  WindowedSeq out{w, std::vector<Complex>(w.size())};
  const auto n = static_cast<long>(w.size());
#pragma omp parallel for schedule(static)
  for (long i = 0; i < n; ++i) out.values[i] = c.value(w.point(static_cast<std::size_t>(i)));
  return out;
}

WindowedSeq convolve(const Impulse& h, const ExpPolySeq& c, const Window& w) {
  require_dim(h, c.dim());
  const auto taps = tap_list(h);
  WindowedSeq out{w, std::vector<Complex>(w.size())};
  const auto n = static_cast<long>(w.size());
#pragma omp parallel for schedule(static)
  for (long i = 0; i < n; ++i) {
    const MultiIndex alpha = w.point(static_cast<std::size_t>(i));
    Complex s = 0.0;
    for (const auto& [beta, hb] : taps) s += hb * c.value(alpha - beta);
    out.values[i] = s;
  }
  return out;
}

WindowedSeq convolve(const Impulse& h, const WindowedSeq& c, const Window& w) {
  require_dim(h, c.window.dim());
  const auto taps = tap_list(h);
  for (const auto& [beta, hb] : taps) {
    MultiIndex lo = w.lower - beta;
    MultiIndex hi = w.upper - beta;
    if (!c.window.contains(lo) || !c.window.contains(hi))
      throw std::invalid_argument("samples do not cover the window shifted by tap " + beta.str());
  }
  WindowedSeq out{w, std::vector<Complex>(w.size())};
  const auto n = static_cast<long>(w.size());
#pragma omp parallel for schedule(static)
  for (long i = 0; i < n; ++i) {
    const MultiIndex alpha = w.point(static_cast<std::size_t>(i));
    Complex s = 0.0;
    for (const auto& [beta, hb] : taps) s += hb * c.at(alpha - beta);
    out.values[i] = s;
  }
  return out;
}

Window certified_window(const ExpPolySeq& seq) {
  if (seq.empty()) throw std::invalid_argument("certified window of an empty sequence");
  return Window::box(seq.dim(), 0, seq.degree());
}

ResidualReport kernel_residual(std::span<const Impulse> h, const ExpPolySeq& seq, int pad) {
  ResidualReport report;
  if (seq.empty()) return report;
  const Window w = certified_window(seq).padded(pad);
  const auto n = static_cast<long>(w.size());
  for (const auto& f : h) require_dim(f, seq.dim());
  for (const auto& term : seq.terms()) {
    ThetaResidual tr{term.theta, 0.0, 0.0};
    std::vector<double> res(static_cast<std::size_t>(n)), mag(static_cast<std::size_t>(n));
    for (const auto& f : h) {
      const auto taps = tap_list(f);
      const double n1 = f.norm1();
#pragma omp parallel for schedule(static)
      for (long i = 0; i < n; ++i) {
        const MultiIndex alpha = w.point(static_cast<std::size_t>(i));
        const double weight = 1.0 + std::abs(exp_term(term.theta, alpha));
        Complex s = 0.0;
        double m = 0.0;
        for (const auto& [beta, hb] : taps) {
          const Complex v = exp_poly_value(term, alpha - beta);
          s += hb * v;
          m = std::max(m, std::abs(v));
        }
        res[static_cast<std::size_t>(i)] = std::abs(s) / weight;
        mag[static_cast<std::size_t>(i)] = n1 * m / weight;
      }
      for (long i = 0; i < n; ++i) {
        tr.residual = std::max(tr.residual, res[static_cast<std::size_t>(i)]);
        tr.scale = std::max(tr.scale, mag[static_cast<std::size_t>(i)]);
      }
    }
    report.max_residual = std::max(report.max_residual, tr.residual);
    report.per_theta.push_back(std::move(tr));
  }
  return report;
}

EigenConditionReport eigen_conditions(const Impulse& h, const Point& theta,
                                      const DInvariantSpace& q, Complex lambda,
                                      const MultiIndex& alpha_h, Tolerance tol) {
  if (theta.size() != h.dim() || q.vars() != h.dim() || alpha_h.dim() != h.dim())
    throw DimensionMismatch("eigen_conditions: dimensions differ");
  Point inv(theta.size());
  for (std::size_t j = 0; j < theta.size(); ++j) {
    if (theta[j] == Complex(0.0)) throw std::domain_error("theta has a zero component");
    inv[j] = 1.0 / theta[j];
  }
  const LaurentPoly hs = symbol(h);
  // c(. + alpha_h) = delta_{-alpha_h} * c, whose symbol is z^{-alpha_h}
  const LaurentPoly shift = LaurentPoly::monomial(MultiIndex(h.dim()) - alpha_h);
  EigenConditionReport report;
  const auto basis = ortho_homog_basis(q);
  for (std::size_t k = 0; k < basis.elements.size(); ++k) {
    const Poly& e = basis.elements[k];
    const LaurentPoly dh = apply_poly_diff(e, hs);
    const LaurentPoly dm = apply_poly_diff(e, shift);
    const Complex defect = eval(dh, inv) - lambda * eval(dm, inv);
    const double scale = eval_scale(dh, inv) + std::abs(lambda) * eval_scale(dm, inv);
    EigenConditionEntry entry{k, defect, scale, tol.accepts(std::abs(defect), scale)};
    report.pass = report.pass && entry.pass;
    report.entries.push_back(entry);
  }
  return report;
}

double eigen_residual(const Impulse& h, Complex lambda, const MultiIndex& alpha_h,
                      const ExpPolySeq& seq, int pad) {
  if (seq.empty()) return 0.0;
  require_dim(h, seq.dim());
  const Window w = certified_window(seq).padded(pad);
  const auto taps = tap_list(h);
  const auto n = static_cast<long>(w.size());
  double worst = 0.0;
  for (const auto& term : seq.terms()) {
    std::vector<double> res(static_cast<std::size_t>(n));
#pragma omp parallel for schedule(static)
    for (long i = 0; i < n; ++i) {
      const MultiIndex alpha = w.point(static_cast<std::size_t>(i));
      Complex s = 0.0;
      for (const auto& [beta, hb] : taps) s += hb * exp_poly_value(term, alpha - beta);
      s -= lambda * exp_poly_value(term, alpha + alpha_h);
      res[static_cast<std::size_t>(i)] = std::abs(s) / (1.0 + std::abs(exp_term(term.theta, alpha)));
    }
    for (double r : res) worst = std::max(worst, r);
  }
  return worst;
}

}  // namespace expkern
