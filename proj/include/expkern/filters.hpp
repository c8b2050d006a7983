#pragma once

// Finitely supported impulse responses, their symbols, discrete convolution
//
//   (h * c)(alpha) = sum_beta h(beta) c(alpha - beta)
//
// exponential-polynomial sequences sum_theta p_theta(alpha) theta^alpha, and
// the finite-window residual oracle that certifies kernel membership.
//
// Window kernels run under OpenMP; expkern::serial holds the single-threaded
// reference implementations they are tested and benchmarked against.

#include <vector>

#include "expkern/apolar.hpp"
#include "expkern/mpoly.hpp"

namespace expkern {

class Impulse {
 public:
  Impulse() = default;
  explicit Impulse(std::size_t dim) : taps_(dim) {}
  /// Taps are read off the coefficients of a Laurent polynomial.
  static Impulse from_symbol(LaurentPoly symbol);
  static Impulse delta(const MultiIndex& at, Complex value = 1.0);

  std::size_t dim() const { return taps_.dim(); }
  const LaurentPoly::TermMap& taps() const { return taps_.terms(); }
  const LaurentPoly& tap_poly() const { return taps_; }
  bool is_zero() const { return taps_.is_zero(); }
  void set(const MultiIndex& at, Complex value);
  Complex at(const MultiIndex& alpha) const { return taps_.coeff(alpha); }
  double norm1() const { return taps_.norm1(); }

  friend bool operator==(const Impulse&, const Impulse&) = default;

 private:
  LaurentPoly taps_;
};

/// h*(z) = sum_alpha h(alpha) z^alpha
LaurentPoly symbol(const Impulse& h);

struct ExpPolyTerm {
  Point theta;
  Poly p;
};

/// sum over terms of p(alpha) theta^alpha. Thetas are pairwise distinct and
/// have no zero components.
class ExpPolySeq {
 public:
  ExpPolySeq() = default;
  explicit ExpPolySeq(std::size_t dim) : dim_(dim) {}
  ExpPolySeq(std::size_t dim, std::vector<ExpPolyTerm> terms);

  static ExpPolySeq single(Point theta, Poly p);

  std::size_t dim() const { return dim_; }
  const std::vector<ExpPolyTerm>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  /// Max total degree of the polynomial factors.
  int degree() const;

  Complex value(const MultiIndex& alpha) const;

 private:
  std::size_t dim_ = 0;
  std::vector<ExpPolyTerm> terms_;
};

/// theta^alpha
Complex exp_term(std::span<const Complex> theta, const MultiIndex& alpha);
/// p(alpha) theta^alpha
Complex exp_poly_value(const ExpPolyTerm& t, const MultiIndex& alpha);

/// Integer box lower <= alpha <= upper.
struct Window {
  MultiIndex lower;
  MultiIndex upper;

  static Window box(std::size_t dim, int lo, int hi);

  std::size_t dim() const { return lower.dim(); }
  std::size_t size() const;
  bool contains(const MultiIndex& alpha) const;
  /// Row-major position, last coordinate fastest.
  std::size_t offset(const MultiIndex& alpha) const;
  MultiIndex point(std::size_t offset) const;
  std::vector<MultiIndex> points() const;
  Window padded(int pad) const;
};

struct WindowedSeq {
  Window window;
  std::vector<Complex> values;

  Complex at(const MultiIndex& alpha) const { return values[window.offset(alpha)]; }
};

WindowedSeq sample(const ExpPolySeq& c, const Window& w);

/// (h * c) on w from the closed form of c.
WindowedSeq convolve(const Impulse& h, const ExpPolySeq& c, const Window& w);
/// (h * c) on w from samples; c must cover w - supp(h), else
/// std::invalid_argument.
WindowedSeq convolve(const Impulse& h, const WindowedSeq& c, const Window& w);

/// {0, ..., D}^s with D the largest degree among the polynomial factors.
/// A residual that is a degree-D polynomial times an exponential vanishes
/// everywhere iff it vanishes on this grid.
Window certified_window(const ExpPolySeq& seq);

struct ThetaResidual {
  Point theta;
  /// max over window and filters of |h * (p e_theta)| / (1 + |theta^alpha|)
  double residual = 0.0;
  /// ||h||_1 * max |(p e_theta)(alpha - beta)| / (1 + |theta^alpha|), the
  /// magnitude the residual is computed from.
  double scale = 0.0;
};

struct ResidualReport {
  double max_residual = 0.0;
  std::vector<ThetaResidual> per_theta;
};

/// Per-theta residual oracle on the certified window (grown by pad).
ResidualReport kernel_residual(std::span<const Impulse> h, const ExpPolySeq& seq, int pad = 0);

struct EigenConditionEntry {
  std::size_t q_index = 0;
  /// q(D) h*(1/theta) - lambda (q(D) z^{-alpha_h})(1/theta)
  Complex defect;
  double scale = 0.0;
  bool pass = false;
};

struct EigenConditionReport {
  std::vector<EigenConditionEntry> entries;
  bool pass = true;
};

/// Checks q(D) h*(1/theta) = lambda (q(D) z^{-alpha_h})(1/theta) for every q of
/// the orthonormal homogeneous basis of Q. The sign on alpha_h matches
/// eigen_residual: h * c = lambda c(. + alpha_h).
EigenConditionReport eigen_conditions(const Impulse& h, const Point& theta,
                                      const DInvariantSpace& q, Complex lambda,
                                      const MultiIndex& alpha_h, Tolerance tol = {});

/// max over terms and the certified window of
/// |h * c - lambda c(. + alpha_h)| / (1 + |theta^alpha|).
double eigen_residual(const Impulse& h, Complex lambda, const MultiIndex& alpha_h,
                      const ExpPolySeq& seq, int pad = 0);

namespace serial {

WindowedSeq convolve(const Impulse& h, const ExpPolySeq& c, const Window& w);
WindowedSeq convolve(const Impulse& h, const WindowedSeq& c, const Window& w);
ResidualReport kernel_residual(std::span<const Impulse> h, const ExpPolySeq& seq, int pad = 0);

}  // namespace serial

}  // namespace expkern
