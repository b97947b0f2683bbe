#include <doctest.h>

#include <complex>

#include "netred/polyrat.hpp"
#include "netred/rng.hpp"

using namespace netred;
using cplx = std::complex<double>;

namespace {

RationalFunction integrator() { return RationalFunction::integrator(); }

RationalFunction make_rf(std::vector<double> num, std::vector<double> den) {
  return RationalFunction(Polynomial(std::move(num)), Polynomial(std::move(den)));
}

void check_coeffs(const Polynomial& p, const std::vector<double>& expected,
                  double tol = 1e-12) {
  REQUIRE(p.coeffs().size() == expected.size());
  for (std::size_t i = 0; i < expected.size(); ++i)
    CHECK(p.coeffs()[i] == doctest::Approx(expected[i]).epsilon(tol));
}

// Small random rational with well-separated real poles/zeros.
RationalFunction random_rf(Rng& rng) {
  const int num_deg = static_cast<int>(rng.uniform() * 3.0);
  const int den_deg = 1 + static_cast<int>(rng.uniform() * 3.0);
  std::vector<std::complex<double>> zeros, poles;
  for (int i = 0; i < num_deg; ++i) zeros.emplace_back(rng.uniform(-3.0, -0.3), 0.0);
  for (int i = 0; i < den_deg; ++i) poles.emplace_back(rng.uniform(-3.0, -0.3), 0.0);
  const double gain = rng.uniform(0.2, 2.0);
  return RationalFunction(Polynomial::from_roots(zeros, gain),
                          Polynomial::from_roots(poles, 1.0));
}

}  // namespace

TEST_CASE("polynomial basics") {
  const Polynomial zero;
  CHECK(zero.is_zero());
  CHECK(zero.degree() == 0);
  CHECK(Polynomial({1.0, 0.0, 0.0}).degree() == 0);  // trailing zeros trimmed
  CHECK(Polynomial({0.0, 0.0}).is_zero());

  const Polynomial p({1.0, 2.0, 3.0});  // 3s^2 + 2s + 1
  CHECK(p(2.0) == doctest::Approx(17.0));
  CHECK((Polynomial::variable() * Polynomial::variable())(cplx(0, 1)) ==
        cplx(-1.0, 0.0));
}

TEST_CASE("polynomial roots and reconstruction") {
  const Polynomial p = Polynomial::from_roots({{-1.0, 0.0}, {-2.0, 0.0}}, 2.0);
  check_coeffs(p, {4.0, 6.0, 2.0});  // 2(s+1)(s+2)
  const auto roots = Polynomial({2.0, 3.0, 1.0}).roots();  // (s+1)(s+2)
  REQUIRE(roots.size() == 2);
  CHECK(roots[0].real() == doctest::Approx(-2.0));
  CHECK(roots[1].real() == doctest::Approx(-1.0));

  // Complex pair survives a reconstruction round trip.
  const Polynomial q({5.0, 2.0, 1.0});  // roots -1 +- 2i
  const Polynomial back = Polynomial::from_roots(q.roots(), 1.0);
  check_coeffs(back, {5.0, 2.0, 1.0}, 1e-10);
}

TEST_CASE("rational evaluation") {
  CHECK(integrator().eval(2.0) == cplx(0.5, 0.0));
  CHECK(make_rf({1, 1}, {2, 1}).eval(0.0) == cplx(0.5, 0.0));

  // Generator-style dynamics, cross-checked against direct complex
  // arithmetic on 1/(0.1 s + 0.3 + (1/7)/(5 s + 1)).
  const RationalFunction gen = make_rf({1.0, 5.0}, {0.3 + 1.0 / 7.0, 1.6, 0.5});
  const cplx expected(3.098726114649682, -0.7356687898089174);
  CHECK(std::abs(gen.eval(cplx(0, 1)) - expected) < 1e-12);

  CHECK_THROWS_AS((void)integrator().eval(0.0), PoleAtPoint);
  CHECK_THROWS_AS((void)make_rf({1}, {1, -2, 1}).eval(1.0), PoleAtPoint);

  // eval_reciprocal flags zeros of the numerator instead.
  CHECK(integrator().eval_reciprocal(2.0) == cplx(2.0, 0.0));
  CHECK_THROWS_AS((void)make_rf({0, 1}, {1, 1}).eval_reciprocal(0.0), PoleAtPoint);
}

TEST_CASE("rational addition") {
  const RationalFunction two_over_s = integrator() + integrator();
  check_coeffs(two_over_s.num(), {2.0});
  check_coeffs(two_over_s.den(), {0.0, 1.0});

  const RationalFunction poly_sum =
      make_rf({1, 1}, {1}) + make_rf({2, 1}, {1});
  check_coeffs(poly_sum.num(), {3.0, 2.0});
  check_coeffs(poly_sum.den(), {1.0});

  const RationalFunction harmonic = make_rf({1}, {1, 1}) + make_rf({1}, {2, 1});
  check_coeffs(harmonic.num(), {3.0, 2.0});
  check_coeffs(harmonic.den(), {2.0, 3.0, 1.0});
}

TEST_CASE("rational multiplication") {
  const RationalFunction one = integrator() * make_rf({0, 1}, {1});
  check_coeffs(one.num(), {1.0});
  check_coeffs(one.den(), {1.0});

  const RationalFunction sq = make_rf({1}, {1, 1}) * make_rf({1}, {1, 1});
  check_coeffs(sq.den(), {1.0, 2.0, 1.0});

  const RationalFunction chained =
      make_rf({1, 1}, {2, 1}) * make_rf({2, 1}, {3, 1});
  check_coeffs(chained.num(), {1.0, 1.0});
  check_coeffs(chained.den(), {3.0, 1.0});
}

TEST_CASE("rational reciprocal") {
  check_coeffs(integrator().reciprocal().num(), {0.0, 1.0});

  const RationalFunction r = make_rf({3, 2}, {2, 3, 1}).reciprocal();
  check_coeffs(r.num(), {1.0, 1.5, 0.5});
  check_coeffs(r.den(), {1.5, 1.0});

  check_coeffs(RationalFunction::constant(4.0).reciprocal().num(), {0.25});
  CHECK_THROWS_AS((void)RationalFunction().reciprocal(), ZeroFunction);
}

TEST_CASE("simplify") {
  const RationalFunction exact = make_rf({-1, 0, 1}, {-1, 1}).simplified();
  check_coeffs(exact.num(), {1.0, 1.0}, 1e-9);
  check_coeffs(exact.den(), {1.0});

  const RationalFunction near =
      make_rf({-1.0, 1.0}, {-1.0 + 1e-12, 1.0}).simplified(1e-9);
  check_coeffs(near.num(), {1.0}, 1e-6);
  check_coeffs(near.den(), {1.0});

  const RationalFunction monic = make_rf({1, 1}, {4, 2}).simplified();
  check_coeffs(monic.num(), {0.5, 0.5});
  check_coeffs(monic.den(), {2.0, 1.0});

  // Distinct roots survive: no spurious cancellation.
  const RationalFunction distinct = make_rf({1, 1}, {2, 1}).simplified();
  CHECK(distinct.num().degree() == 1);
  CHECK(distinct.den().degree() == 1);
}

TEST_CASE("simplify is idempotent") {
  Rng rng(2024);
  for (int trial = 0; trial < 40; ++trial) {
    const RationalFunction a = random_rf(rng);
    const RationalFunction b = random_rf(rng);
    const RationalFunction once = (a * b).simplified();
    const RationalFunction twice = once.simplified();
    CHECK(once == twice);
  }
}

TEST_CASE("evaluation is a homomorphism") {
  Rng rng(77);
  for (int trial = 0; trial < 60; ++trial) {
    const RationalFunction a = random_rf(rng);
    const RationalFunction b = random_rf(rng);
    const cplx s0(rng.uniform(0.2, 2.0), rng.uniform(0.5, 2.5));
    const cplx sum = (a + b).eval(s0);
    const cplx direct = a.eval(s0) + b.eval(s0);
    CHECK(std::abs(sum - direct) <= 1e-9 * (1.0 + std::abs(direct)));

    if (!a.is_zero()) {
      const cplx prod = (a * a.reciprocal()).eval(s0);
      CHECK(std::abs(prod - cplx(1.0, 0.0)) <= 1e-9);
    }

    // Degree bookkeeping under addition: the degree of a rational function
    // (max of numerator and denominator degree) is subadditive.
    const auto deg = [](const RationalFunction& r) {
      return std::max(r.num().degree(), r.den().degree());
    };
    CHECK(deg(a + b) <= deg(a) + deg(b));
  }
}
