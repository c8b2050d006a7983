#include <doctest.h>

#include "support.hpp"

using namespace testing;

namespace {

Poly x(std::size_t s, std::size_t j) { return Poly::variable(s, j); }

// value of f at an integer point by repeated multiplication
Complex naive_eval(const Poly& f, const Point& z) {
  Complex s = 0.0;
  for (const auto& [a, c] : f.terms()) {
    Complex m = c;
    for (std::size_t j = 0; j < z.size(); ++j) {
      const int e = a[j];
      for (int k = 0; k < std::abs(e); ++k) m = e > 0 ? m * z[j] : m / z[j];
    }
    s += m;
  }
  return s;
}

}  // namespace

TEST_CASE("graded-lex order on two variables") {
  const std::vector<MultiIndex> want{{0, 0}, {1, 0}, {0, 1}, {2, 0}, {1, 1}, {0, 2}};
  CHECK(monomials_up_to(2, 2) == want);
  CHECK(monomials_of_degree(3, 2).size() == 6);
  CHECK(monomials_up_to(3, 3).size() == 20);
  GradedLex lt;
  CHECK(lt(MultiIndex{0, 2}, MultiIndex{3, 0}));
  CHECK(lt(MultiIndex{2, 0}, MultiIndex{1, 1}));
  CHECK_FALSE(lt(MultiIndex{1, 1}, MultiIndex{1, 1}));
}

TEST_CASE("factorials and falling factorials") {
  CHECK(factorial(0) == 1.0);
  CHECK(factorial(5) == 120.0);
  CHECK(factorial(MultiIndex{2, 3}) == 12.0);
  CHECK_THROWS_AS(factorial(21), std::domain_error);
  CHECK(falling(5, 2) == 20.0);
  CHECK(falling(2, 3) == 0.0);
  CHECK(falling(-1, 2) == 2.0);
}

TEST_CASE("ring arithmetic") {
  const Poly one = Poly::constant(2, 1.0);
  const Poly a = one + x(2, 0);
  const Poly b = one - x(2, 0);
  CHECK(a * b == one - x(2, 0) * x(2, 0));
  CHECK((a - a).is_zero());
  CHECK(poly_arith(a, b, ArithOp::add) == Poly::constant(2, 2.0));
  CHECK(poly_arith(a, a, ArithOp::scale, 3.0) == a * Complex(3.0));
  CHECK_THROWS_AS(a + x(3, 0), DimensionMismatch);
  CHECK_THROWS_AS(a * x(1, 0), DimensionMismatch);
}

TEST_CASE("exact cancellation prunes terms") {
  Poly f(2);
  f.add_term({1, 1}, 2.0);
  f.add_term({1, 1}, -2.0);
  CHECK(f.is_zero());
  CHECK(f.degree() == -1);
  CHECK_THROWS(f.add_term({0, 0}, Complex(std::nan(""), 0.0)));
}

TEST_CASE("degree, homogeneous parts and leading form") {
  const Poly f = x(2, 0) * x(2, 1) * Complex(3.0) + x(2, 1) + Poly::constant(2, 5.0);
  CHECK(f.degree() == 2);
  CHECK(f.homogeneous_part(1) == x(2, 1));
  CHECK(leading_form(f) == x(2, 0) * x(2, 1) * Complex(3.0));
  CHECK_FALSE(f.is_homogeneous());
  CHECK(leading_form(f).is_homogeneous());
}

TEST_CASE("evaluation agrees with naive powers, Laurent terms included") {
  Rng rng(11);
  for (int t = 0; t < 50; ++t) {
    const std::size_t s = static_cast<std::size_t>(uniform_int(rng, 1, 3));
    const Poly f = random_laurent(rng, s, -3, 3, 6);
    const Point z = annulus_point(rng, s);
    CHECK(std::abs(eval(f, z) - naive_eval(f, z)) <= 1e-12 * (1.0 + eval_scale(f, z)));
  }
}

TEST_CASE("differentiation") {
  const Poly f = Poly::monomial({3, 2}, 2.0);
  CHECK(diff(f, {1, 0}) == Poly::monomial({2, 2}, 6.0));
  CHECK(diff(f, {4, 0}).is_zero());
  CHECK(diff(Poly::monomial({-1}), {1}) == Poly::monomial({-2}, -1.0));
  CHECK(diff(Poly::monomial({-1}), {2}) == Poly::monomial({-3}, 2.0));
  // q(D) with q = x + y^2
  const Poly q = x(2, 0) + x(2, 1) * x(2, 1);
  CHECK(apply_poly_diff(q, f) == Poly::monomial({2, 2}, 6.0) + Poly::monomial({3, 0}, 4.0));
}

TEST_CASE("derivative matches a central difference") {
  Rng rng(12);
  for (int t = 0; t < 20; ++t) {
    const Poly f = random_laurent(rng, 2, -2, 3, 5);
    const Point z = annulus_point(rng, 2, 0.8, 1.5);
    const double h = 1e-5;
    Point zp = z, zm = z;
    zp[0] += h;
    zm[0] -= h;
    const Complex fd = (eval(f, zp) - eval(f, zm)) / (2.0 * h);
    CHECK(std::abs(eval(diff(f, {1, 0}), z) - fd) <= 1e-5 * (1.0 + eval_scale(f, z)));
  }
}

TEST_CASE("translate is f(x + y)") {
  Rng rng(13);
  for (int t = 0; t < 30; ++t) {
    const std::size_t s = static_cast<std::size_t>(uniform_int(rng, 1, 3));
    const Poly f = random_poly(rng, s, 4, 6);
    const Point y = annulus_point(rng, s);
    const Point z = annulus_point(rng, s);
    Point zy(s);
    for (std::size_t j = 0; j < s; ++j) zy[j] = z[j] + y[j];
    CHECK(std::abs(eval(translate(f, y), z) - eval(f, zy)) <= 1e-11 * (1.0 + eval_scale(f, zy)));
  }
}

TEST_CASE("scale_vars and sigma_minus") {
  const Poly f = x(2, 0) * x(2, 1) + x(2, 1) * Complex(2.0);
  const Point theta{2.0, 3.0};
  CHECK(scale_vars(f, theta) == x(2, 0) * x(2, 1) * Complex(6.0) + x(2, 1) * Complex(6.0));
  CHECK(sigma_minus(f) == x(2, 0) * x(2, 1) - x(2, 1) * Complex(2.0));
  CHECK(sigma_minus(sigma_minus(f)) == f);
}

TEST_CASE("falling factorial basis polynomial") {
  const Poly p = falling_factorial({3});
  // x(x-1)(x-2) = x^3 - 3x^2 + 2x
  CHECK(p == univariate({0.0, 2.0, -3.0, 1.0}));
  for (int n = 0; n < 6; ++n) {
    const Point pt{static_cast<double>(n)};
    CHECK(std::abs(eval(p, pt) - falling(n, 3)) < 1e-12);
  }
}

TEST_CASE("Laurent normalization strips monomial factors") {
  // z1^-2 z2 (1 + z1) -> shift (-2, 1), poly 1 + z1
  const Poly f = Poly::monomial({-2, 1}) + Poly::monomial({-1, 1});
  const auto n = laurent_normalize(f);
  CHECK(n.shift == MultiIndex{-2, 1});
  CHECK(n.poly == Poly::constant(2, 1.0) + x(2, 0));
  CHECK(shift_exponents(n.poly, n.shift) == f);
  CHECK(f.min_exponent() == MultiIndex{-2, 1});
  CHECK_FALSE(f.is_polynomial());
  CHECK(n.poly.is_polynomial());
}

TEST_CASE("norms and conjugation") {
  const Poly f(1, {{{0}, Complex(3.0, 4.0)}, {{1}, Complex(0.0, -1.0)}});
  CHECK(f.norm1() == doctest::Approx(6.0));
  CHECK(f.norm2() == doctest::Approx(std::sqrt(26.0)));
  CHECK(f.max_abs_coeff() == doctest::Approx(5.0));
  CHECK(f.conj().coeff({0}) == Complex(3.0, -4.0));
}
