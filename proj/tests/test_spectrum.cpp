#include <doctest.h>

#include "support.hpp"

#include "expkern/spectrum.hpp"

using namespace testing;

namespace {

const Poly Z1 = Poly::variable(1, 0);
const Poly ONE1 = Poly::constant(1, 1.0);

Zero simple(Point theta) { return Zero(theta, DInvariantSpace({Poly::constant(theta.size(), 1.0)})); }

// (z - 2)^2 (z - 3)
Impulse cubic() {
  const Poly a = Z1 - Poly::constant(1, 2.0), b = Z1 - Poly::constant(1, 3.0);
  return Impulse::from_symbol(a * a * b);
}

Spectrum cubic_spectrum() {
  return Spectrum(1, {Zero({0.5}, DInvariantSpace({ONE1, Z1})), simple({1.0 / 3.0})});
}

}  // namespace

TEST_CASE("zeros carry the inverse point and an orthonormal basis") {
  const Zero z({2.0, Complex(0.0, 1.0)}, DInvariantSpace::fat_point(2, 1));
  CHECK(z.point()[0] == Complex(0.5));
  CHECK(std::abs(z.point()[1] - Complex(0.0, -1.0)) < 1e-15);
  CHECK(z.dim() == 3);
  CHECK(z.ortho().elements.size() == 3);
  CHECK_THROWS(Zero({0.0, 1.0}, DInvariantSpace::fat_point(2, 0)));
  CHECK_THROWS_AS(Zero({1.0}, DInvariantSpace::fat_point(2, 0)), DimensionMismatch);
}

TEST_CASE("spectrum bookkeeping") {
  const Spectrum spec(2, {Zero({1.0, 1.0}, DInvariantSpace::fat_point(2, 1)), simple({2.0, 1.0})});
  CHECK(spec.total_multiplicity() == 4);
  CHECK(spec.min_separation() == doctest::Approx(1.0));
  CHECK(spec.distinct());
  const Spectrum dup(1, {simple({1.0}), simple({1.0})});
  CHECK_FALSE(dup.distinct());
  CHECK_THROWS_AS(Spectrum(1, {simple({1.0, 2.0})}), DimensionMismatch);
}

TEST_CASE("collocation entries are derivatives of monomials at 1/theta") {
  const Spectrum spec(1, {Zero({0.5}, DInvariantSpace({ONE1, Z1}))});
  const auto monos = monomials_up_to(1, 3);
  const auto v = collocation_matrix(spec, monos);
  REQUIRE(v.rows() == 2);
  for (int b = 0; b <= 3; ++b) {
    CHECK(std::abs(v(0, b) - std::pow(2.0, b)) < 1e-12);
    const double d = b == 0 ? 0.0 : b * std::pow(2.0, b - 1);
    CHECK(std::abs(v(1, b) - d) < 1e-12);
  }
}

TEST_CASE("dual conditions") {
  const std::vector<Impulse> diff{Impulse::from_symbol(ONE1 - Z1)};
  CHECK(verify_zero_dim(diff, Spectrum(1, {simple({1.0})})).pass);

  const std::vector<Impulse> h{cubic()};
  const auto rep = verify_zero_dim(h, cubic_spectrum());
  CHECK(rep.pass);
  CHECK(rep.entries.size() == 3);
  CHECK(rep.max_abs < 1e-12);

  // mixed condition q = x fails for {1 - z1, 1 - z2} at (1, 1)
  const std::size_t s = 2;
  const Poly one = Poly::constant(s, 1.0);
  const std::vector<Impulse> two{Impulse::from_symbol(one - Poly::variable(s, 0)),
                                 Impulse::from_symbol(one - Poly::variable(s, 1))};
  const Spectrum fat(s, {Zero({1.0, 1.0}, DInvariantSpace::fat_point(s, 1))});
  const auto bad = verify_zero_dim(two, fat);
  CHECK_FALSE(bad.pass);
  CHECK(bad.max_abs == doctest::Approx(1.0));
  CHECK(verify_zero_dim(two, Spectrum(s, {Zero({1.0, 1.0}, DInvariantSpace::fat_point(s, 0))})).pass);
}

TEST_CASE("monomial factors in the symbol do not create zeros") {
  // z^-3 (1 - z) and z^2 (1 - z) behave like 1 - z
  for (int k : {-3, 2}) {
    const std::vector<Impulse> h{Impulse::from_symbol(shift_exponents(ONE1 - Z1, {k}))};
    CHECK(verify_zero_dim(h, Spectrum(1, {simple({1.0})})).pass);
    CHECK_FALSE(verify_zero_dim(h, Spectrum(1, {Zero({1.0}, DInvariantSpace({ONE1, Z1}))})).pass);
  }
  CHECK_THROWS_AS(verify_zero_dim(std::vector<Impulse>{Impulse(1)}, Spectrum(1, {simple({1.0})})),
                  std::invalid_argument);
}

TEST_CASE("Hermite fundamentals for two simple points are the Lagrange polynomials") {
  const Spectrum spec(1, {simple({1.0}), simple({0.5})});
  // points 1/theta are 1 and 2
  const auto fs = hermite_fundamentals(spec);
  REQUIRE(fs.f.size() == 2);
  CHECK(fs.degree == 1);
  CHECK(distance(fs.f[0][0], Poly::constant(1, 2.0) - Z1) < 1e-10);
  CHECK(distance(fs.f[1][0], Z1 - ONE1) < 1e-10);
  CHECK((fs.duals - linalg::Matrix::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("Hermite fundamentals at a fat point") {
  const std::size_t s = 2;
  const Spectrum spec(s, {Zero({1.0, 1.0}, DInvariantSpace::fat_point(s, 1))});
  const auto fs = hermite_fundamentals(spec);
  REQUIRE(fs.f.size() == 1);
  REQUIRE(fs.f[0].size() == 3);
  CHECK(fs.degree == 1);
  const Poly one = Poly::constant(s, 1.0), x = Poly::variable(s, 0), y = Poly::variable(s, 1);
  // the orthonormal basis is {1, x, y}: the dual of evaluation at (1,1) is 1
  CHECK(distance(fs.f[0][0], one) < 1e-10);
  CHECK(distance(fs.f[0][1], x - one) < 1e-10);
  CHECK(distance(fs.f[0][2], y - one) < 1e-10);
  CHECK((fs.duals - linalg::Matrix::Identity(3, 3)).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("Hermite fundamentals reject repeated points") {
  const Spectrum dup(1, {simple({2.0}), simple({2.0})});
  CHECK_THROWS_AS(hermite_fundamentals(dup), VerificationError);
  CHECK(hermite_fundamentals(Spectrum(1)).f.empty());
}

TEST_CASE("ideal complement filters satisfy every dual condition") {
  Rng rng(51);
  for (int t = 0; t < 10; ++t) {
    const std::size_t s = static_cast<std::size_t>(uniform_int(rng, 1, 2));
    std::vector<Zero> zeros{Zero(annulus_point(rng, s), power_space(random_linear(rng, s), 2)),
                            Zero(annulus_point(rng, s), DInvariantSpace::fat_point(s, 0))};
    const Spectrum spec(s, std::move(zeros));
    const auto fs = hermite_fundamentals(spec);
    const auto h = ideal_complement_filters(spec, 2, fs.degree + 2);
    CHECK(h.size() == 2);
    for (const auto& f : h) CHECK(f.tap_poly().max_abs_coeff() == 1.0);
    CHECK(verify_zero_dim(h, spec).pass);
  }
  const Spectrum three(1, {simple({1.0}), simple({2.0}), simple({3.0})});
  CHECK_THROWS_AS(ideal_complement_filters(three, 1, 2), std::invalid_argument);
  CHECK_THROWS_AS(ideal_complement_filters(three, 5, 3), std::invalid_argument);
}

TEST_CASE("one-dimensional kernel of (z - 2)^2 (z - 3)") {
  const std::vector<Impulse> h{cubic()};
  const auto kernel = kernel_basis(h, cubic_spectrum());
  const auto seqs = kernel_sequences(kernel);
  CHECK(seqs.size() == 3);
  for (const auto& c : seqs) CHECK(kernel_residual(h, c).max_residual <= 1e-8);
  const auto probe = kernel_residual(h, ExpPolySeq::single({0.5}, Z1 * Z1));
  CHECK(probe.max_residual >= 1e-3);
}

TEST_CASE("kernel assembly errors") {
  const std::vector<Impulse> h{cubic()};
  CHECK_THROWS_AS(kernel_basis(h, Spectrum(1, {simple({0.5}), simple({0.5})})), std::invalid_argument);
  CHECK_THROWS_AS(kernel_basis(h, Spectrum(1, {Zero({0.5}, DInvariantSpace::fat_point(1, 2))})),
                  VerificationError);
  CHECK(kernel_basis(h, Spectrum(1)).empty());
}

TEST_CASE("quotient dimension estimates") {
  const std::size_t s = 2;
  const Poly one = Poly::constant(s, 1.0), z1 = Poly::variable(s, 0), z2 = Poly::variable(s, 1);
  const std::vector<Impulse> diffs{Impulse::from_symbol(one - z1), Impulse::from_symbol(one - z2)};
  const std::vector<Impulse> origin{Impulse::from_symbol(z1), Impulse::from_symbol(z2)};
  const std::vector<Impulse> h{cubic()};
  for (int d = 1; d <= 5; ++d) {
    CHECK(quotient_dim_estimate(diffs, d) == 1);
    CHECK(quotient_dim_estimate(origin, d) == 1);
  }
  for (int d = 3; d <= 7; ++d) CHECK(quotient_dim_estimate(h, d) == 3);
  // a negative power is shifted away, a positive one is not
  const std::vector<Impulse> laurent{Impulse::from_symbol(shift_exponents(one - z1, {-2, 0})),
                                     Impulse::from_symbol(one - z2)};
  CHECK(quotient_dim_estimate(laurent, 4) == 1);
}

TEST_CASE("the default P_theta convention is the calibrated one") {
  CHECK(calibrate_convention() == kDefaultConvention);
}
