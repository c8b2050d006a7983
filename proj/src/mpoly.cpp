#include "expkern/mpoly.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>

namespace expkern {

namespace {

void require_same_dim(const LaurentPoly& f, const LaurentPoly& g) {
  if (f.dim() != g.dim()) {
    throw DimensionMismatch("polynomials in " + std::to_string(f.dim()) + " and " +
                            std::to_string(g.dim()) + " variables");
  }
}

void require_finite(Complex c) {
  if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
    throw std::domain_error("non-finite coefficient");
  }
}

Complex ipow(Complex z, int n) {
  if (n == 0) return 1.0;
  if (n < 0) {
    if (z == Complex(0.0)) throw std::domain_error("negative power of zero coordinate");
    return ipow(1.0 / z, -n);
  }
  Complex r = 1.0;
  Complex b = z;
  while (n > 0) {
    if (n & 1) r *= b;
    b *= b;
    n >>= 1;
  }
  return r;
}

void enumerate(std::size_t dim, int degree, std::size_t j, MultiIndex& cur,
               std::vector<MultiIndex>& out) {
  if (j + 1 == dim) {
    cur[j] = degree;
    out.push_back(cur);
    return;
  }
  for (int k = degree; k >= 0; --k) {
    cur[j] = k;
    enumerate(dim, degree - k, j + 1, cur, out);
  }
}

}  // namespace

MultiIndex MultiIndex::unit(std::size_t dim, std::size_t j) {
  MultiIndex e(dim);
  e[j] = 1;
  return e;
}

int MultiIndex::total() const {
  int t = 0;
  for (int v : e_) t += v;
  return t;
}

bool MultiIndex::nonnegative() const {
  return std::all_of(e_.begin(), e_.end(), [](int v) { return v >= 0; });
}

bool MultiIndex::leq(const MultiIndex& other) const {
  if (dim() != other.dim()) throw DimensionMismatch("multi-index dimension");
  for (std::size_t j = 0; j < e_.size(); ++j)
    if (e_[j] > other.e_[j]) return false;
  return true;
}

MultiIndex operator+(const MultiIndex& a, const MultiIndex& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch("multi-index dimension");
  MultiIndex r = a;
  for (std::size_t j = 0; j < a.dim(); ++j) r[j] += b[j];
  return r;
}

MultiIndex operator-(const MultiIndex& a, const MultiIndex& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch("multi-index dimension");
  MultiIndex r = a;
  for (std::size_t j = 0; j < a.dim(); ++j) r[j] -= b[j];
  return r;
}

std::string MultiIndex::str() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t j = 0; j < e_.size(); ++j) os << (j ? "," : "") << e_[j];
  os << ')';
  return os.str();
}

bool GradedLex::operator()(const MultiIndex& a, const MultiIndex& b) const {
  const int ta = a.total();
  const int tb = b.total();
  if (ta != tb) return ta < tb;
  return a.entries() > b.entries();
}

std::vector<MultiIndex> monomials_of_degree(std::size_t dim, int degree) {
  std::vector<MultiIndex> out;
  if (degree < 0 || dim == 0) return out;
  MultiIndex cur(dim);
  enumerate(dim, degree, 0, cur, out);
  return out;
}

std::vector<MultiIndex> monomials_up_to(std::size_t dim, int degree) {
  std::vector<MultiIndex> out;
  for (int k = 0; k <= degree; ++k) {
    auto layer = monomials_of_degree(dim, k);
    out.insert(out.end(), layer.begin(), layer.end());
  }
  return out;
}

double factorial(int n) {
  static const auto table = [] {
    std::array<double, 21> t{};
    t[0] = 1.0;
    for (int k = 1; k <= 20; ++k) t[k] = t[k - 1] * k;
    return t;
  }();
  if (n < 0) throw std::domain_error("factorial of negative integer");
  if (n > 20) throw std::domain_error("factorial overflow guard: " + std::to_string(n) + "! > 20!");
  return table[n];
}

double factorial(const MultiIndex& gamma) {
  double r = 1.0;
  for (int v : gamma.entries()) r *= factorial(v);
  return r;
}

double falling(int n, int k) {
  double r = 1.0;
  for (int i = 0; i < k; ++i) r *= static_cast<double>(n - i);
  return r;
}

LaurentPoly::LaurentPoly(std::size_t dim,
                         std::initializer_list<std::pair<MultiIndex, Complex>> terms)
    : dim_(dim) {
  for (const auto& [g, c] : terms) add_term(g, c);
}

LaurentPoly LaurentPoly::constant(std::size_t dim, Complex c) {
  LaurentPoly f(dim);
  f.add_term(MultiIndex(dim), c);
  return f;
}

LaurentPoly LaurentPoly::monomial(const MultiIndex& gamma, Complex c) {
  LaurentPoly f(gamma.dim());
  f.add_term(gamma, c);
  return f;
}

LaurentPoly LaurentPoly::variable(std::size_t dim, std::size_t j) {
  return monomial(MultiIndex::unit(dim, j));
}

bool LaurentPoly::is_polynomial() const {
  return std::all_of(terms_.begin(), terms_.end(),
                     [](const auto& t) { return t.first.nonnegative(); });
}

Complex LaurentPoly::coeff(const MultiIndex& gamma) const {
  auto it = terms_.find(gamma);
  return it == terms_.end() ? Complex(0.0) : it->second;
}

void LaurentPoly::add_term(const MultiIndex& gamma, Complex c) {
  if (gamma.dim() != dim_) throw DimensionMismatch("term exponent " + gamma.str());
  require_finite(c);
  if (c == Complex(0.0)) return;
  auto [it, inserted] = terms_.try_emplace(gamma, c);
  if (!inserted) {
    it->second += c;
    if (it->second == Complex(0.0)) terms_.erase(it);
  }
}

int LaurentPoly::degree() const {
  if (terms_.empty()) return -1;
  return terms_.rbegin()->first.total();
}

MultiIndex LaurentPoly::min_exponent() const {
  if (terms_.empty()) throw std::invalid_argument("minimum exponent of zero polynomial");
  MultiIndex mu = terms_.begin()->first;
  for (const auto& [g, c] : terms_)
    for (std::size_t j = 0; j < dim_; ++j) mu[j] = std::min(mu[j], g[j]);
  return mu;
}

LaurentPoly LaurentPoly::homogeneous_part(int k) const {
  LaurentPoly r(dim_);
  for (const auto& [g, c] : terms_)
    if (g.total() == k) r.terms_.emplace(g, c);
  return r;
}

bool LaurentPoly::is_homogeneous() const {
  if (terms_.empty()) return true;
  return terms_.begin()->first.total() == terms_.rbegin()->first.total();
}

double LaurentPoly::norm1() const {
  double s = 0.0;
  for (const auto& [g, c] : terms_) s += std::abs(c);
  return s;
}

double LaurentPoly::norm2() const {
  double s = 0.0;
  for (const auto& [g, c] : terms_) s += std::norm(c);
  return std::sqrt(s);
}

double LaurentPoly::max_abs_coeff() const {
  double m = 0.0;
  for (const auto& [g, c] : terms_) m = std::max(m, std::abs(c));
  return m;
}

// An empty dimension-0 polynomial acts as an untyped zero so that
// default-constructed accumulators can absorb the first operand.
LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& g) {
  if (dim_ == 0 && terms_.empty()) dim_ = g.dim_;
  if (g.dim_ == 0 && g.terms_.empty()) return *this;
  require_same_dim(*this, g);
  for (const auto& [e, c] : g.terms_) add_term(e, c);
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& g) {
  if (dim_ == 0 && terms_.empty()) dim_ = g.dim_;
  if (g.dim_ == 0 && g.terms_.empty()) return *this;
  require_same_dim(*this, g);
  for (const auto& [e, c] : g.terms_) add_term(e, -c);
  return *this;
}

LaurentPoly& LaurentPoly::operator*=(Complex c) {
  require_finite(c);
  if (c == Complex(0.0)) {
    terms_.clear();
    return *this;
  }
  for (auto it = terms_.begin(); it != terms_.end();) {
    it->second *= c;
    if (it->second == Complex(0.0))
      it = terms_.erase(it);
    else
      ++it;
  }
  return *this;
}

LaurentPoly operator*(const LaurentPoly& f, const LaurentPoly& g) {
  require_same_dim(f, g);
  LaurentPoly r(f.dim());
  for (const auto& [a, ca] : f.terms())
    for (const auto& [b, cb] : g.terms()) r.add_term(a + b, ca * cb);
  return r;
}

bool operator==(const LaurentPoly& f, const LaurentPoly& g) {
  return f.dim_ == g.dim_ && f.terms_ == g.terms_;
}

LaurentPoly LaurentPoly::conj() const {
  LaurentPoly r(dim_);
  for (const auto& [g, c] : terms_) r.terms_.emplace(g, std::conj(c));
  return r;
}

std::string LaurentPoly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  os.precision(12);
  bool first = true;
  for (const auto& [g, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    if (c.imag() == 0.0)
      os << c.real();
    else
      os << '(' << c.real() << (c.imag() < 0 ? "-" : "+") << std::abs(c.imag()) << "i)";
    for (std::size_t j = 0; j < g.dim(); ++j) {
      if (g[j] == 0) continue;
      os << "*z" << j + 1;
      if (g[j] != 1) os << '^' << g[j];
    }
  }
  return os.str();
}

LaurentPoly poly_arith(const LaurentPoly& f, const LaurentPoly& g, ArithOp op, Complex c) {
  switch (op) {
    case ArithOp::add:
      require_same_dim(f, g);
      return f + g;
    case ArithOp::sub:
      require_same_dim(f, g);
      return f - g;
    case ArithOp::mul:
      return f * g;
    case ArithOp::scale:
      return f * c;
  }
  throw std::invalid_argument("unknown arithmetic op");
}

Complex eval(const LaurentPoly& f, std::span<const Complex> z) {
  if (z.size() != f.dim()) throw DimensionMismatch("evaluation point dimension");
  Complex s = 0.0;
  for (const auto& [g, c] : f.terms()) {
    Complex m = c;
    for (std::size_t j = 0; j < g.dim(); ++j) m *= ipow(z[j], g[j]);
    s += m;
  }
  return s;
}

double eval_scale(const LaurentPoly& f, std::span<const Complex> z) {
  if (z.size() != f.dim()) throw DimensionMismatch("evaluation point dimension");
  double s = 0.0;
  for (const auto& [g, c] : f.terms()) {
    double m = std::abs(c);
    for (std::size_t j = 0; j < g.dim(); ++j) m *= std::abs(ipow(z[j], g[j]));
    s += m;
  }
  return s;
}

LaurentPoly diff(const LaurentPoly& f, const MultiIndex& alpha) {
  if (alpha.dim() != f.dim()) throw DimensionMismatch("derivative order dimension");
  if (!alpha.nonnegative()) throw std::invalid_argument("negative derivative order " + alpha.str());
  LaurentPoly r(f.dim());
  for (const auto& [g, c] : f.terms()) {
    double k = 1.0;
    for (std::size_t j = 0; j < g.dim() && k != 0.0; ++j) k *= falling(g[j], alpha[j]);
    if (k != 0.0) r.add_term(g - alpha, c * k);
  }
  return r;
}

LaurentPoly apply_poly_diff(const Poly& q, const LaurentPoly& f) {
  require_same_dim(q, f);
  if (!q.is_polynomial()) throw std::invalid_argument("differential operator must be a polynomial");
  LaurentPoly r(f.dim());
  for (const auto& [a, c] : q.terms()) r += diff(f, a) * c;
  return r;
}

Poly leading_form(const Poly& f) {
  if (f.is_zero()) throw std::invalid_argument("leading form of the zero polynomial");
  if (!f.is_polynomial()) throw std::invalid_argument("leading form needs a polynomial");
  return f.homogeneous_part(f.degree());
}

LaurentPoly scale_vars(const LaurentPoly& f, std::span<const Complex> theta) {
  if (theta.size() != f.dim()) throw DimensionMismatch("scaling vector dimension");
  for (const auto& t : theta)
    if (t == Complex(0.0)) throw std::domain_error("scaling vector has a zero component");
  LaurentPoly r(f.dim());
  for (const auto& [g, c] : f.terms()) {
    Complex m = c;
    for (std::size_t j = 0; j < g.dim(); ++j) m *= ipow(theta[j], g[j]);
    r.add_term(g, m);
  }
  return r;
}

LaurentPoly sigma_minus(const LaurentPoly& f) {
  LaurentPoly r(f.dim());
  for (const auto& [g, c] : f.terms()) r.add_term(g, (g.total() % 2 == 0) ? c : -c);
  return r;
}

Poly translate(const Poly& f, std::span<const Complex> y) {
  if (y.size() != f.dim()) throw DimensionMismatch("translation dimension");
  if (!f.is_polynomial()) throw std::invalid_argument("translate needs a polynomial");
  const std::size_t s = f.dim();
  Poly r(s);
  for (const auto& [g, c] : f.terms()) {
    // prod_j (x_j + y_j)^{g_j}, expanded binomially coordinate by coordinate
    Poly term = Poly::constant(s, c);
    for (std::size_t j = 0; j < s; ++j) {
      if (g[j] == 0) continue;
      Poly factor(s);
      double binom = 1.0;
      for (int k = 0; k <= g[j]; ++k) {
        MultiIndex e(s);
        e[j] = k;
        factor.add_term(e, binom * ipow(y[j], g[j] - k));
        binom = binom * (g[j] - k) / (k + 1);
      }
      term = term * factor;
    }
    r += term;
  }
  return r;
}

Poly falling_factorial(const MultiIndex& gamma) {
  if (!gamma.nonnegative()) throw std::invalid_argument("negative falling factorial order");
  const std::size_t s = gamma.dim();
  Poly r = Poly::constant(s, 1.0);
  for (std::size_t j = 0; j < s; ++j) {
    for (int k = 0; k < gamma[j]; ++k) {
      Poly factor = Poly::variable(s, j);
      factor.add_term(MultiIndex(s), -static_cast<double>(k));
      r = r * factor;
    }
  }
  return r;
}

LaurentPoly shift_exponents(const LaurentPoly& f, const MultiIndex& mu) {
  if (mu.dim() != f.dim()) throw DimensionMismatch("exponent shift dimension");
  LaurentPoly r(f.dim());
  for (const auto& [g, c] : f.terms()) r.add_term(g + mu, c);
  return r;
}

LaurentNormal laurent_normalize(const LaurentPoly& f) {
  if (f.is_zero()) throw std::invalid_argument("cannot normalize the zero Laurent polynomial");
  MultiIndex mu = f.min_exponent();
  MultiIndex neg(f.dim());
  for (std::size_t j = 0; j < f.dim(); ++j) neg[j] = -mu[j];
  return {shift_exponents(f, neg), mu};
}

}  // namespace expkern
