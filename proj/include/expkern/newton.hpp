#pragma once

// Forward differences, Newton (falling-factorial) coefficients, the operator
//
//   L f(x) = sum_gamma Delta^gamma f(0) / gamma!  x^gamma
//
// and the shift-invariant spaces P_theta built from a multiplicity space.

#include <map>
#include <vector>

#include "expkern/apolar.hpp"
#include "expkern/linalg.hpp"
#include "expkern/mpoly.hpp"

namespace expkern {

/// Delta^gamma f, each Delta_j f = f(. + e_j) - f.
Poly forward_difference(const Poly& f, const MultiIndex& gamma);

/// gamma -> Delta^gamma f(0) / gamma!
using NewtonCoeffs = std::map<MultiIndex, Complex, GradedLex>;

/// Newton coefficients through Stirling numbers of the second kind,
/// x^n = sum_k S(n, k) (x)_k, applied per coordinate.
NewtonCoeffs newton_coeffs(const Poly& f);
/// sum_gamma c_gamma (x)_gamma
Poly from_newton(const NewtonCoeffs& c, std::size_t dim);

Poly L_op(const Poly& f);
/// Inverse of L by graded back-substitution: L is the identity on leading
/// forms, so the top homogeneous part of the remainder is peeled off until
/// nothing is left.
Poly L_inv(const Poly& f);

enum class PThetaConvention { with_sigma_minus, without_sigma_minus };

/// The convention under which h * (P_theta e_theta) = 0 matches the dual
/// conditions. Fixed by the calibration test in tests/test_spectrum.cpp.
inline constexpr PThetaConvention kDefaultConvention = PThetaConvention::with_sigma_minus;

const char* to_string(PThetaConvention c);

struct PThetaBasis {
  Point theta;
  std::vector<Poly> elements;
  PThetaConvention convention = kDefaultConvention;

  int degree() const;
};

/// Maps the orthonormal homogeneous basis of Q through sigma_theta, L^{-1}
/// and (per convention) sigma_-.
PThetaBasis build_p_theta(const DInvariantSpace& q, const Point& theta,
                          PThetaConvention convention = kDefaultConvention);

/// G(y) with p_i(x + y) = sum_j G(y)_{ij} p_j(x). Throws VerificationError
/// when the basis is numerically dependent.
linalg::Matrix shift_matrix(const PThetaBasis& p, const Point& y);

}  // namespace expkern
