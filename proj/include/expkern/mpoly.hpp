#pragma once

// Sparse multivariate (Laurent) polynomials over complex doubles.
//
// A single class covers both Laurent polynomials and ordinary polynomials;
// operations that only make sense for the latter (differentiation of the
// apolar theory, leading forms, Newton coefficients) check that every
// exponent is nonnegative and throw otherwise.

#include <complex>
#include <compare>
#include <cstddef>
#include <initializer_list>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace expkern {

using Complex = std::complex<double>;
using Point = std::vector<Complex>;

/// Thrown when operands live in different numbers of variables.
class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Thrown when a numerical certificate (dual condition, kernel residual,
/// rank requirement) fails. Distinct from malformed input.
class VerificationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Tolerance {
  double abs = 1e-9;
  double rel = 1e-9;

  /// err is acceptable against a quantity whose natural magnitude is scale.
  bool accepts(double err, double scale) const { return err <= abs + rel * scale; }
  double bound(double scale) const { return abs + rel * scale; }
};

class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(std::size_t dim) : e_(dim, 0) {}
  explicit MultiIndex(std::vector<int> entries) : e_(std::move(entries)) {}
  MultiIndex(std::initializer_list<int> entries) : e_(entries) {}

  static MultiIndex unit(std::size_t dim, std::size_t j);

  std::size_t dim() const { return e_.size(); }
  int operator[](std::size_t j) const { return e_[j]; }
  int& operator[](std::size_t j) { return e_[j]; }
  const std::vector<int>& entries() const { return e_; }

  /// |gamma|
  int total() const;
  bool nonnegative() const;
  /// Componentwise partial order.
  bool leq(const MultiIndex& other) const;

  friend MultiIndex operator+(const MultiIndex& a, const MultiIndex& b);
  friend MultiIndex operator-(const MultiIndex& a, const MultiIndex& b);
  friend bool operator==(const MultiIndex&, const MultiIndex&) = default;

  std::string str() const;

 private:
  std::vector<int> e_;
};

/// Graded-lexicographic order: total degree first, then lexicographic.
struct GradedLex {
  bool operator()(const MultiIndex& a, const MultiIndex& b) const;
};

/// All nonnegative multi-indices in s variables with |gamma| <= degree,
/// in graded-lex order.
std::vector<MultiIndex> monomials_up_to(std::size_t dim, int degree);
/// Same, restricted to |gamma| == degree.
std::vector<MultiIndex> monomials_of_degree(std::size_t dim, int degree);

/// n! as a double; throws std::domain_error for n > 20.
double factorial(int n);
/// gamma! = prod gamma_j!
double factorial(const MultiIndex& gamma);
/// (n)_k = n (n-1) ... (n-k+1), valid for negative n as well.
double falling(int n, int k);

class LaurentPoly {
 public:
  using TermMap = std::map<MultiIndex, Complex, GradedLex>;

  LaurentPoly() = default;
  explicit LaurentPoly(std::size_t dim) : dim_(dim) {}
  /// Terms with zero coefficient are dropped.
  LaurentPoly(std::size_t dim, std::initializer_list<std::pair<MultiIndex, Complex>> terms);

  static LaurentPoly constant(std::size_t dim, Complex c);
  static LaurentPoly monomial(const MultiIndex& gamma, Complex c = 1.0);
  /// The coordinate polynomial x_j.
  static LaurentPoly variable(std::size_t dim, std::size_t j);

  std::size_t dim() const { return dim_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  bool is_polynomial() const;

  Complex coeff(const MultiIndex& gamma) const;
  /// Adds c to the coefficient of gamma, pruning exact zeros.
  void add_term(const MultiIndex& gamma, Complex c);

  /// Total degree (max |gamma|); -1 for the zero polynomial.
  int degree() const;
  /// Componentwise minimum exponent; requires a nonzero polynomial.
  MultiIndex min_exponent() const;
  /// Homogeneous component of total degree k.
  LaurentPoly homogeneous_part(int k) const;
  bool is_homogeneous() const;

  /// Sum of |coefficients|.
  double norm1() const;
  /// Euclidean norm of the coefficient vector.
  double norm2() const;
  double max_abs_coeff() const;

  LaurentPoly& operator+=(const LaurentPoly& g);
  LaurentPoly& operator-=(const LaurentPoly& g);
  LaurentPoly& operator*=(Complex c);

  friend LaurentPoly operator+(LaurentPoly f, const LaurentPoly& g) { return f += g; }
  friend LaurentPoly operator-(LaurentPoly f, const LaurentPoly& g) { return f -= g; }
  friend LaurentPoly operator*(const LaurentPoly& f, const LaurentPoly& g);
  friend LaurentPoly operator*(LaurentPoly f, Complex c) { return f *= c; }
  friend LaurentPoly operator*(Complex c, LaurentPoly f) { return f *= c; }
  friend LaurentPoly operator-(const LaurentPoly& f) { return f * Complex(-1.0); }
  friend bool operator==(const LaurentPoly& f, const LaurentPoly& g);

  /// Coefficientwise complex conjugate.
  LaurentPoly conj() const;

  std::string str() const;

 private:
  std::size_t dim_ = 0;
  TermMap terms_;
};

using Poly = LaurentPoly;

enum class ArithOp { add, sub, mul, scale };

/// Ring operations with dimension checking; c is only used by scale.
LaurentPoly poly_arith(const LaurentPoly& f, const LaurentPoly& g, ArithOp op, Complex c = 1.0);

/// Direct power evaluation sum coeff * z^gamma.
Complex eval(const LaurentPoly& f, std::span<const Complex> z);
/// Sum |coeff| |z^gamma|, the magnitude against which eval rounding is judged.
double eval_scale(const LaurentPoly& f, std::span<const Complex> z);

/// D^alpha f. Negative exponents are differentiated formally, which is what
/// dual conditions at points of C_x^s need; alpha itself must be nonnegative.
LaurentPoly diff(const LaurentPoly& f, const MultiIndex& alpha);
/// q(D) f = sum_alpha q_alpha D^alpha f.
LaurentPoly apply_poly_diff(const Poly& q, const LaurentPoly& f);
/// Homogeneous leading term of a nonzero polynomial.
Poly leading_form(const Poly& f);
/// f(theta * z), theta with no zero entries.
LaurentPoly scale_vars(const LaurentPoly& f, std::span<const Complex> theta);
/// f(-z).
LaurentPoly sigma_minus(const LaurentPoly& f);
/// f(x + y) as a polynomial in x.
Poly translate(const Poly& f, std::span<const Complex> y);
/// prod_j prod_{k<gamma_j} (x_j - k).
Poly falling_factorial(const MultiIndex& gamma);
/// z^mu * f.
LaurentPoly shift_exponents(const LaurentPoly& f, const MultiIndex& mu);

struct LaurentNormal {
  Poly poly;
  MultiIndex shift;
};
/// Writes f = z^shift * poly with shift the componentwise minimum exponent.
LaurentNormal laurent_normalize(const LaurentPoly& f);

}  // namespace expkern
