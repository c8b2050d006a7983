#pragma once

// Stationary subdivision with an expanding integer dilation Xi:
//
//   (S_a c)(x) = sum_alpha a(x - Xi alpha) c(alpha)
//
// Splitting x = xi + Xi alpha over coset representatives reduces S_a to the
// convolutions a_xi * c with the subsampled masks a_xi = a(xi + Xi .).
// All lattice arithmetic (coset membership, Xi^{-1}, Xi^{-T}) is exact via
// the adjugate and determinant.

#include <vector>

#include "expkern/filters.hpp"
#include "expkern/mpoly.hpp"

namespace expkern {

using IntMatrix = std::vector<std::vector<long long>>;

class Dilation {
 public:
  /// Square, nonsingular integer matrix; expansiveness is checked separately.
  explicit Dilation(IntMatrix xi);

  std::size_t dim() const { return xi_.size(); }
  const IntMatrix& matrix() const { return xi_; }
  long long det() const { return det_; }
  /// |det Xi|, the number of cosets.
  long long cosets() const { return det_ < 0 ? -det_ : det_; }
  const IntMatrix& adjugate() const { return adj_; }
  Dilation transpose() const;

  /// Xi v for an integer vector.
  MultiIndex apply(const MultiIndex& v) const;
  /// adj(Xi) v, i.e. det(Xi) * Xi^{-1} v.
  std::vector<long long> adj_apply(const MultiIndex& v) const;
  /// Xi^{-1} v if it is an integer vector.
  bool solve_integer(const MultiIndex& v, MultiIndex& out) const;

 private:
  IntMatrix xi_;
  IntMatrix adj_;
  long long det_ = 0;
};

/// All eigenvalues of modulus > 1 + 1e-9 (and det != 0).
bool is_expanding(const Dilation& xi);

/// E = M [0,1)^s cap Z^s for M = Xi (or Xi^T), sorted graded-lex.
std::vector<MultiIndex> coset_reps(const Dilation& xi, bool transpose = false);

struct Subsymbol {
  MultiIndex xi;
  LaurentPoly symbol;
};

/// a_xi*(z) = sum_alpha a(xi + Xi alpha) z^alpha, one per coset
/// representative in coset_reps order.
std::vector<Subsymbol> subsymbols(const Impulse& a, const Dilation& xi);

/// z^Xi = (z^{xi_1}, ..., z^{xi_s}) with xi_j the columns of Xi.
Point z_pow_xi(std::span<const Complex> z, const Dilation& xi);

/// e^{-2 pi i Xi^{-T} xi'}, one unit-modulus vector per xi' in E'.
std::vector<Point> modulation_vectors(const Dilation& xi);
/// e^{-2 pi i Xi^{-T} xi'} * zeta for xi' in E'; the first entry is zeta.
std::vector<Point> modulation_points(const Dilation& xi, std::span<const Complex> zeta);
/// e^{-2 pi i xi^T Xi^{-T} xi'} computed from the exact rational phase.
Complex modulation_phase(const Dilation& xi, const MultiIndex& coset, const MultiIndex& dual_coset);

struct SymmetricZeroResult {
  bool is_zero = false;
  /// max |D^beta a*(w)| over |beta| <= k and modulation points w
  double max_violation = 0.0;
};

/// Whether every derivative of order <= k of the Laurent-normalized symbol
/// vanishes at every modulation point of zeta.
SymmetricZeroResult is_symmetric_zero(const Impulse& a, const Dilation& xi,
                                      std::span<const Complex> zeta, int k, Tolerance tol = {});

/// Whether every subsymbol vanishes to order k at point.
SymmetricZeroResult is_common_subsymbol_zero(const Impulse& a, const Dilation& xi,
                                             std::span<const Complex> point, int k, Tolerance tol = {});

/// The principal-log zeta with zeta^Xi = 1/theta: zeta = exp(-Xi^{-T} log theta).
Point symmetric_root(std::span<const Complex> theta, const Dilation& xi);

/// S_a c on w from the closed form of c.
WindowedSeq subdivide(const Impulse& a, const Dilation& xi, const ExpPolySeq& c, const Window& w);
/// S_a c on w from samples; throws std::invalid_argument if c does not cover
/// every alpha with x - Xi alpha in supp a.
WindowedSeq subdivide(const Impulse& a, const Dilation& xi, const WindowedSeq& c, const Window& w);

struct SubdivisionCandidate {
  Point theta;
  int order = 0;
};

struct CandidateReport {
  Point theta;
  int order = 0;
  /// Representative zeta with zeta^Xi = 1/theta.
  Point zeta;
  SymmetricZeroResult symmetric;  // (i)
  SymmetricZeroResult common;     // (ii)
  bool oracle = false;            // (iii) Pi_k e_theta in ker S_a
  double oracle_residual = 0.0;
  double oracle_scale = 0.0;
  /// Largest order (capped) to which (i) and (ii) hold; -1 if not a zero.
  int max_symmetric_order = -1;
  int max_common_order = -1;
  bool consistent = false;
};

struct SubdivisionReport {
  std::vector<CandidateReport> candidates;
  bool pass = true;
};

/// Cross-checks symmetric zeros, common subsymbol zeros and the per-coset
/// residual oracle for each candidate. Throws VerificationError when the
/// three disagree.
SubdivisionReport subdivision_kernel_check(const Impulse& a, const Dilation& xi,
                                           const std::vector<SubdivisionCandidate>& candidates,
                                           Tolerance tol = {}, int window_pad = 0);

namespace serial {

WindowedSeq subdivide(const Impulse& a, const Dilation& xi, const ExpPolySeq& c, const Window& w);

}  // namespace serial

}  // namespace expkern
