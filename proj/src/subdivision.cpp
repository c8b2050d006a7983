#include "expkern/subdivision.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numbers>

namespace expkern {

namespace {

long long det_of(const IntMatrix& m) {
  const std::size_t n = m.size();
  if (n == 1) return m[0][0];
  if (n == 2) return m[0][0] * m[1][1] - m[0][1] * m[1][0];
  long long d = 0;
  for (std::size_t c = 0; c < n; ++c) {
    IntMatrix minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<long long> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != c) row.push_back(m[r][k]);
      minor.push_back(std::move(row));
    }
    const long long term = m[0][c] * det_of(minor);
    d += (c % 2 == 0) ? term : -term;
  }
  return d;
}

IntMatrix adjugate_of(const IntMatrix& m) {
  const std::size_t n = m.size();
  IntMatrix adj(n, std::vector<long long>(n, 0));
  if (n == 1) {
    adj[0][0] = 1;
    return adj;
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      IntMatrix minor;
      for (std::size_t r = 0; r < n; ++r) {
        if (r == i) continue;
        std::vector<long long> row;
        for (std::size_t k = 0; k < n; ++k)
          if (k != j) row.push_back(m[r][k]);
        minor.push_back(std::move(row));
      }
      const long long cof = ((i + j) % 2 == 0 ? 1 : -1) * det_of(minor);
      adj[j][i] = cof;
    }
  return adj;
}

// floor-mod into [0, |den|)
long long pos_mod(long long a, long long den) {
  const long long m = den < 0 ? -den : den;
  long long r = a % m;
  return r < 0 ? r + m : r;
}

Complex unit_root(long long num, long long den) {
  // e^{-2 pi i num/den}, reduced so the angle is computed from a fraction in [0,1)
  const double frac = static_cast<double>(pos_mod(num, den)) / static_cast<double>(den < 0 ? -den : den);
  const double ang = -2.0 * std::numbers::pi * frac;
  return {std::cos(ang), std::sin(ang)};
}

Complex subdivide_at(const std::vector<std::pair<MultiIndex, Complex>>& taps, const Dilation& xi,
                     const ExpPolySeq& c, const MultiIndex& x) {
  Complex s = 0.0;
  MultiIndex alpha;
  for (const auto& [beta, ab] : taps)
    if (xi.solve_integer(x - beta, alpha)) s += ab * c.value(alpha);
  return s;
}

SymmetricZeroResult vanishing_check(const std::vector<LaurentPoly>& polys,
                                    const std::vector<Point>& points, int k, Tolerance tol) {
  SymmetricZeroResult r{true, 0.0};
  if (k < 0) return r;
  for (const auto& f : polys) {
    if (f.is_zero()) continue;
    for (const auto& beta : monomials_up_to(f.dim(), k)) {
      const LaurentPoly d = diff(f, beta);
      for (const auto& w : points) {
        const double v = std::abs(eval(d, w));
        r.max_violation = std::max(r.max_violation, v);
        if (!tol.accepts(v, eval_scale(d, w))) r.is_zero = false;
      }
    }
  }
  return r;
}

int max_order(const std::vector<LaurentPoly>& polys, const std::vector<Point>& points, int cap,
              Tolerance tol) {
  int best = -1;
  for (int k = 0; k <= cap; ++k) {
    if (!vanishing_check(polys, points, k, tol).is_zero) break;
    best = k;
  }
  return best;
}

std::vector<LaurentPoly> subsymbol_polys(const Impulse& a, const Dilation& xi) {
  std::vector<LaurentPoly> out;
  for (auto& s : subsymbols(a, xi)) out.push_back(std::move(s.symbol));
  return out;
}

}  // namespace

Dilation::Dilation(IntMatrix xi) : xi_(std::move(xi)) {
  const std::size_t n = xi_.size();
  if (n == 0) throw std::invalid_argument("empty dilation matrix");
  for (const auto& row : xi_)
    if (row.size() != n) throw std::invalid_argument("dilation matrix is not square");
  det_ = det_of(xi_);
  if (det_ == 0) throw std::invalid_argument("dilation matrix is singular");
  adj_ = adjugate_of(xi_);
}

Dilation Dilation::transpose() const {
  IntMatrix t(dim(), std::vector<long long>(dim()));
  for (std::size_t i = 0; i < dim(); ++i)
    for (std::size_t j = 0; j < dim(); ++j) t[i][j] = xi_[j][i];
  return Dilation(std::move(t));
}

MultiIndex Dilation::apply(const MultiIndex& v) const {
  if (v.dim() != dim()) throw DimensionMismatch("dilation applied to wrong dimension");
  MultiIndex r(dim());
  for (std::size_t i = 0; i < dim(); ++i) {
    long long s = 0;
    for (std::size_t j = 0; j < dim(); ++j) s += xi_[i][j] * v[j];
    r[i] = static_cast<int>(s);
  }
  return r;
}

std::vector<long long> Dilation::adj_apply(const MultiIndex& v) const {
  if (v.dim() != dim()) throw DimensionMismatch("adjugate applied to wrong dimension");
  std::vector<long long> r(dim(), 0);
  for (std::size_t i = 0; i < dim(); ++i)
    for (std::size_t j = 0; j < dim(); ++j) r[i] += adj_[i][j] * v[j];
  return r;
}

bool Dilation::solve_integer(const MultiIndex& v, MultiIndex& out) const {
  const auto t = adj_apply(v);
  out = MultiIndex(dim());
  for (std::size_t i = 0; i < dim(); ++i) {
    if (t[i] % det_ != 0) return false;
    out[i] = static_cast<int>(t[i] / det_);
  }
  return true;
}

bool is_expanding(const Dilation& xi) {
  const auto n = static_cast<long>(xi.dim());
  Eigen::MatrixXd m(n, n);
  for (long i = 0; i < n; ++i)
    for (long j = 0; j < n; ++j)
      m(i, j) = static_cast<double>(xi.matrix()[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
  Eigen::EigenSolver<Eigen::MatrixXd> es(m, false);
  for (long i = 0; i < n; ++i)
    if (std::abs(es.eigenvalues()(i)) <= 1.0 + 1e-9) return false;
  return true;
}

std::vector<MultiIndex> coset_reps(const Dilation& xi, bool transpose) {
  const Dilation m = transpose ? xi.transpose() : xi;
  const std::size_t s = m.dim();
  // bounding box of the image of the unit cube
  std::vector<long long> lo(s, 0), hi(s, 0);
  for (std::size_t i = 0; i < s; ++i)
    for (std::size_t j = 0; j < s; ++j) {
      const long long v = m.matrix()[i][j];
      (v < 0 ? lo[i] : hi[i]) += v;
    }
  const long long d = m.det();
  std::vector<MultiIndex> out;
  MultiIndex a(s);
  for (std::size_t i = 0; i < s; ++i) a[i] = static_cast<int>(lo[i]);
  while (true) {
    const auto t = m.adj_apply(a);
    bool inside = true;
    for (std::size_t i = 0; i < s && inside; ++i)
      inside = d > 0 ? (t[i] >= 0 && t[i] < d) : (t[i] <= 0 && t[i] > d);
    if (inside) out.push_back(a);
    std::size_t j = 0;
    for (; j < s; ++j) {
      if (a[j] < hi[j]) {
        ++a[j];
        break;
      }
      a[j] = static_cast<int>(lo[j]);
    }
    if (j == s) break;
  }
  std::sort(out.begin(), out.end(), GradedLex{});
  if (static_cast<long long>(out.size()) != m.cosets())
    throw std::logic_error("coset enumeration found " + std::to_string(out.size()) + " representatives, expected " +
                           std::to_string(m.cosets()));
  return out;
}

std::vector<Subsymbol> subsymbols(const Impulse& a, const Dilation& xi) {
  if (a.dim() != xi.dim()) throw DimensionMismatch("mask and dilation dimensions differ");
  std::vector<Subsymbol> out;
  for (const auto& r : coset_reps(xi)) out.push_back({r, LaurentPoly(a.dim())});
  MultiIndex alpha;
  for (const auto& [beta, c] : a.taps()) {
    bool placed = false;
    for (auto& sub : out) {
      if (xi.solve_integer(beta - sub.xi, alpha)) {
        sub.symbol.add_term(alpha, c);
        placed = true;
        break;
      }
    }
    if (!placed) throw std::logic_error("tap " + beta.str() + " outside every coset");
  }
  return out;
}

Point z_pow_xi(std::span<const Complex> z, const Dilation& xi) {
  if (z.size() != xi.dim()) throw DimensionMismatch("point and dilation dimensions differ");
  const std::size_t s = xi.dim();
  Point r(s, 1.0);
  for (std::size_t j = 0; j < s; ++j) {
    MultiIndex col(s);
    for (std::size_t i = 0; i < s; ++i) col[i] = static_cast<int>(xi.matrix()[i][j]);
    r[j] = exp_term(z, col);
  }
  return r;
}

std::vector<Point> modulation_vectors(const Dilation& xi) {
  const Dilation t = xi.transpose();
  std::vector<Point> out;
  for (const auto& dual : coset_reps(xi, true)) {
    // Xi^{-T} xi' = adj(Xi^T) xi' / det
    const auto num = t.adj_apply(dual);
    Point v(xi.dim());
    for (std::size_t j = 0; j < xi.dim(); ++j) v[j] = unit_root(num[j], t.det());
    out.push_back(std::move(v));
  }
  return out;
}

std::vector<Point> modulation_points(const Dilation& xi, std::span<const Complex> zeta) {
  if (zeta.size() != xi.dim()) throw DimensionMismatch("point and dilation dimensions differ");
  auto out = modulation_vectors(xi);
  for (auto& v : out)
    for (std::size_t j = 0; j < v.size(); ++j) v[j] *= zeta[j];
  return out;
}

Complex modulation_phase(const Dilation& xi, const MultiIndex& coset, const MultiIndex& dual_coset) {
  const Dilation t = xi.transpose();
  const auto num = t.adj_apply(dual_coset);
  long long s = 0;
  for (std::size_t j = 0; j < xi.dim(); ++j) s += static_cast<long long>(coset[j]) * num[j];
  return unit_root(s, t.det());
}

SymmetricZeroResult is_symmetric_zero(const Impulse& a, const Dilation& xi,
                                      std::span<const Complex> zeta, int k, Tolerance tol) {
  if (a.is_zero()) return {true, 0.0};
  const Poly sym = laurent_normalize(symbol(a)).poly;
  return vanishing_check({sym}, modulation_points(xi, zeta), k, tol);
}

SymmetricZeroResult is_common_subsymbol_zero(const Impulse& a, const Dilation& xi,
                                             std::span<const Complex> point, int k, Tolerance tol) {
  return vanishing_check(subsymbol_polys(a, xi), {Point(point.begin(), point.end())}, k, tol);
}

Point symmetric_root(std::span<const Complex> theta, const Dilation& xi) {
  if (theta.size() != xi.dim()) throw DimensionMismatch("theta and dilation dimensions differ");
  const Dilation t = xi.transpose();
  const std::size_t s = xi.dim();
  Point zeta(s);
  for (std::size_t i = 0; i < s; ++i) {
    Complex lg = 0.0;
    for (std::size_t j = 0; j < s; ++j) {
      if (theta[j] == Complex(0.0)) throw std::domain_error("theta has a zero component");
      lg += static_cast<double>(t.adjugate()[i][j]) * std::log(theta[j]);
    }
    zeta[i] = std::exp(-lg / static_cast<double>(t.det()));
  }
  return zeta;
}

WindowedSeq subdivide(const Impulse& a, const Dilation& xi, const ExpPolySeq& c, const Window& w) {
  if (a.dim() != xi.dim() || c.dim() != xi.dim()) throw DimensionMismatch("subdivide: dimensions differ");
  const std::vector<std::pair<MultiIndex, Complex>> taps(a.taps().begin(), a.taps().end());
  WindowedSeq out{w, std::vector<Complex>(w.size())};
  const auto n = static_cast<long>(w.size());
#pragma omp parallel for schedule(static)
  for (long i = 0; i < n; ++i)
    out.values[static_cast<std::size_t>(i)] = subdivide_at(taps, xi, c, w.point(static_cast<std::size_t>(i)));
  return out;
}

WindowedSeq subdivide(const Impulse& a, const Dilation& xi, const WindowedSeq& c, const Window& w) {
  if (a.dim() != xi.dim() || c.window.dim() != xi.dim())
    throw DimensionMismatch("subdivide: dimensions differ");
  WindowedSeq out{w, std::vector<Complex>(w.size())};
  MultiIndex alpha;
  for (std::size_t i = 0; i < w.size(); ++i) {
    const MultiIndex x = w.point(i);
    Complex s = 0.0;
    for (const auto& [beta, ab] : a.taps()) {
      if (!xi.solve_integer(x - beta, alpha)) continue;
      if (!c.window.contains(alpha)) throw std::invalid_argument("samples do not cover " + alpha.str());
      s += ab * c.at(alpha);
    }
    out.values[i] = s;
  }
  return out;
}

SubdivisionReport subdivision_kernel_check(const Impulse& a, const Dilation& xi,
                                           const std::vector<SubdivisionCandidate>& candidates,
                                           Tolerance tol, int window_pad) {
  if (a.dim() != xi.dim()) throw DimensionMismatch("mask and dilation dimensions differ");
  const std::size_t s = xi.dim();
  const std::vector<std::pair<MultiIndex, Complex>> taps(a.taps().begin(), a.taps().end());
  const auto reps = coset_reps(xi);
  const auto subs = subsymbol_polys(a, xi);
  const Poly sym = a.is_zero() ? Poly(s) : laurent_normalize(symbol(a)).poly;
  const double n1 = a.norm1();
  SubdivisionReport report;
  for (const auto& cand : candidates) {
    if (cand.theta.size() != s) throw DimensionMismatch("candidate theta dimension");
    if (cand.order < 0) throw std::invalid_argument("negative candidate order");
    CandidateReport cr;
    cr.theta = cand.theta;
    cr.order = cand.order;
    cr.zeta = symmetric_root(cand.theta, xi);
    Point inv(s);
    for (std::size_t j = 0; j < s; ++j) inv[j] = 1.0 / cand.theta[j];
    const auto mods = modulation_points(xi, cr.zeta);
    cr.symmetric = vanishing_check({sym}, mods, cand.order, tol);
    cr.common = vanishing_check(subs, {inv}, cand.order, tol);
    const int cap = cand.order + 2;
    cr.max_symmetric_order = max_order({sym}, mods, cap, tol);
    cr.max_common_order = max_order(subs, {inv}, cap, tol);

    // (iii): S_a(x^gamma theta^x) on xi + Xi alpha, alpha in the certified window
    const Window w = Window::box(s, 0, cand.order + window_pad);
    for (const auto& gamma : monomials_up_to(s, cand.order)) {
      const ExpPolySeq c = ExpPolySeq::single(cand.theta, Poly::monomial(gamma));
      for (const auto& rep : reps) {
        const auto n = static_cast<long>(w.size());
        std::vector<double> res(static_cast<std::size_t>(n)), mag(static_cast<std::size_t>(n));
#pragma omp parallel for schedule(static)
        for (long i = 0; i < n; ++i) {
          const MultiIndex alpha = w.point(static_cast<std::size_t>(i));
          const MultiIndex x = rep + xi.apply(alpha);
          const double weight = 1.0 + std::abs(exp_term(cand.theta, alpha));
          double m = 0.0;
          MultiIndex src;
          for (const auto& [beta, ab] : taps)
            if (xi.solve_integer(x - beta, src)) m = std::max(m, std::abs(c.value(src)));
          res[static_cast<std::size_t>(i)] = std::abs(subdivide_at(taps, xi, c, x)) / weight;
          mag[static_cast<std::size_t>(i)] = n1 * m / weight;
        }
        for (long i = 0; i < n; ++i) {
          cr.oracle_residual = std::max(cr.oracle_residual, res[static_cast<std::size_t>(i)]);
          cr.oracle_scale = std::max(cr.oracle_scale, mag[static_cast<std::size_t>(i)]);
        }
      }
    }
    cr.oracle = tol.accepts(cr.oracle_residual, cr.oracle_scale);
    cr.consistent = cr.symmetric.is_zero == cr.common.is_zero && cr.common.is_zero == cr.oracle;
    if (!cr.consistent)
      throw VerificationError("subdivision checks disagree for candidate of order " + std::to_string(cand.order) +
                              ": symmetric=" + std::to_string(cr.symmetric.is_zero) +
                              " common=" + std::to_string(cr.common.is_zero) +
                              " oracle=" + std::to_string(cr.oracle));
    report.pass = report.pass && cr.oracle;
    report.candidates.push_back(std::move(cr));
  }
  return report;
}

namespace serial {

WindowedSeq subdivide(const Impulse& a, const Dilation& xi, const ExpPolySeq& c, const Window& w) {
  WindowedSeq out{w, {}};
  MultiIndex alpha;
  for (const auto& x : w.points()) {
    Complex s = 0.0;
    for (const auto& [beta, ab] : a.taps())
      if (xi.solve_integer(x - beta, alpha)) s += ab * c.value(alpha);
    out.values.push_back(s);
  }
  return out;
}

}  // namespace serial

}  // namespace expkern
