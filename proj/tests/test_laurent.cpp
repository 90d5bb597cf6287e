#include <random>

#include <catch2/catch_amalgamated.hpp>

#include "lucaslab/laurent.hpp"
#include "support/oracles.hpp"

using namespace lucaslab;

namespace {

LaurentPolynomial cosine_like() {  // x + 1/x
  return LaurentPolynomial::from_terms(1, {{{1}, Integer(1)},
                                           {{-1}, Integer(1)}});
}

LaurentPolynomial trinomial() {  // x + y + 1/(xy)
  return LaurentPolynomial::from_terms(2, {{{1, 0}, Integer(1)},
                                           {{0, 1}, Integer(1)},
                                           {{-1, -1}, Integer(1)}});
}

}  // namespace

TEST_CASE("constant terms of powers") {
  SequenceHandle cosine = constant_terms(cosine_like());
  std::vector<long> expected{1, 0, 2, 0, 6, 0, 20};
  for (std::size_t n = 0; n < expected.size(); ++n) {
    CHECK(cosine.at(static_cast<long>(n)) == expected[n]);
  }
  for (long n = 0; n <= 20; ++n) {
    Integer want = (n % 2 == 0) ? oracles::binomial(n, n / 2) : Integer(0);
    CHECK(cosine.at(n) == want);
  }

  SequenceHandle tri = constant_terms(trinomial());
  CHECK(tri.at(3) == 6);  // 3!/1!^3
  for (long n = 0; n <= 24; ++n) {
    Integer want = 0;
    if (n % 3 == 0) {
      Integer m_fact = oracles::factorial(n / 3);
      want = oracles::factorial(n) / (m_fact * m_fact * m_fact);
    }
    CHECK(tri.at(n) == want);
  }

  SequenceHandle one = constant_terms(
      LaurentPolynomial::from_terms(1, {{{0}, Integer(1)}}));
  for (long n = 0; n <= 10; ++n) CHECK(one.at(n) == 1);
}

TEST_CASE("constant terms are invariant under variable relabeling") {
  std::mt19937 rng(13131);
  std::uniform_int_distribution<long> exp_dist(-2, 2);
  std::uniform_int_distribution<long> coef_dist(-3, 3);
  for (int trial = 0; trial < 20; ++trial) {
    LaurentPolynomial lambda(2);
    for (int t = 0; t < 4; ++t) {
      lambda.add({exp_dist(rng), exp_dist(rng)}, Integer(coef_dist(rng)));
    }
    LaurentPolynomial swapped = lambda.permute_variables({1, 0});
    SequenceHandle a = constant_terms(lambda);
    SequenceHandle b = constant_terms(swapped);
    for (long n = 0; n <= 10; ++n) {
      CHECK(a.at(n) == b.at(n));
    }
  }
}

TEST_CASE("interior lattice points of Newton polytopes") {
  CHECK(interior_lattice_points(cosine_like()) ==
        std::vector<std::vector<long>>{{0}});
  CHECK(interior_lattice_points(trinomial()) ==
        std::vector<std::vector<long>>{{0, 0}});
  LaurentPolynomial wide = LaurentPolynomial::from_terms(
      1, {{{2}, Integer(1)}, {{-2}, Integer(1)}});
  CHECK(interior_lattice_points(wide) ==
        std::vector<std::vector<long>>{{-1}, {0}, {1}});

  // degenerate support: a segment in the plane does not span
  LaurentPolynomial flat = LaurentPolynomial::from_terms(
      2, {{{1, 0}, Integer(1)}, {{-1, 0}, Integer(1)}});
  CHECK_THROWS_AS(interior_lattice_points(flat), NotFullDimensionalError);
}

TEST_CASE("polytope structure for the trinomial") {
  Polytope polytope = newton_polytope(trinomial());
  CHECK(polytope.facets.size() == 3);
  CHECK(polytope.vertices ==
        std::vector<std::vector<long>>{{-1, -1}, {0, 1}, {1, 0}});
}

TEST_CASE("interior points match the monotone-chain oracle in 2d") {
  std::mt19937 rng(246810);
  std::uniform_int_distribution<long> exp_dist(-3, 3);
  int tested = 0;
  while (tested < 40) {
    std::vector<oracles::Point2> pts;
    LaurentPolynomial lambda(2);
    const int terms = 3 + static_cast<int>(rng() % 4);
    for (int t = 0; t < terms; ++t) {
      long a = exp_dist(rng), b = exp_dist(rng);
      lambda.add({a, b}, Integer(1));
      pts.push_back({a, b});
    }
    std::vector<std::vector<long>> expected = oracles::interior_points_2d(pts);
    try {
      CHECK(interior_lattice_points(lambda) == expected);
    } catch (const NotFullDimensionalError&) {
      // oracle finds no interior for a degenerate hull either
      CHECK(expected.empty());
    }
    ++tested;
  }
}

TEST_CASE("removing a vertex changes interior points consistently") {
  LaurentPolynomial big = LaurentPolynomial::from_terms(
      2, {{{1, 0}, Integer(1)}, {{0, 1}, Integer(1)},
          {{-1, -1}, Integer(1)}, {{2, 1}, Integer(1)}});
  LaurentPolynomial reduced = trinomial();  // the same support minus (2,1)
  CHECK(interior_lattice_points(big) ==
        oracles::interior_points_2d({{1, 0}, {0, 1}, {-1, -1}, {2, 1}}));
  CHECK(interior_lattice_points(reduced) ==
        oracles::interior_points_2d({{1, 0}, {0, 1}, {-1, -1}}));

  // a case where dropping a vertex really does grow the interior
  LaurentPolynomial scaled = LaurentPolynomial::from_terms(
      2, {{{2, 0}, Integer(1)}, {{0, 2}, Integer(1)}, {{-2, -2}, Integer(1)},
          {{0, -1}, Integer(1)}});
  LaurentPolynomial scaled_reduced = LaurentPolynomial::from_terms(
      2, {{{2, 0}, Integer(1)}, {{0, 2}, Integer(1)},
          {{-2, -2}, Integer(1)}});
  CHECK(interior_lattice_points(scaled) ==
        oracles::interior_points_2d({{2, 0}, {0, 2}, {-2, -2}, {0, -1}}));
  CHECK(interior_lattice_points(scaled_reduced) ==
        oracles::interior_points_2d({{2, 0}, {0, 2}, {-2, -2}}));
}

TEST_CASE("block-decomposition coefficients") {
  Prime p2(2);
  SequenceHandle cosine = constant_terms(cosine_like());
  MVCoefficients mv = mv_coefficients(cosine, p2, 4);
  CHECK(mv.at(0) == 1);
  CHECK(mv.at(1) == 0);
  CHECK(mv.at(2) == 2);
  CHECK(mv.at(3) == 0);
  // single-digit coefficients coincide with the sequence values
  for (long n = 1; n < 2; ++n) CHECK(mv.at(n) == cosine.at(n));

  SequenceHandle ones =
      SequenceHandle::from_generator([](long) { return Integer(1); }, "ones");
  MVCoefficients mv1 = mv_coefficients(ones, p2, 3);
  CHECK(mv1.at(1) == 1);
  CHECK(mv1.at(2) == 0);
  CHECK(mv1.at(3) == 0);
}

TEST_CASE("reconstruction identity over all splits") {
  for (unsigned long pv : {2ul, 3ul}) {
    Prime p(pv);
    for (const LaurentPolynomial& lambda : {cosine_like(), trinomial()}) {
      SequenceHandle seq = constant_terms(lambda);
      MVCoefficients mv = mv_coefficients(seq, p, 4);
      long upper = 1;
      for (int i = 0; i < 4; ++i) upper *= static_cast<long>(pv);
      for (long n = 1; n < upper; ++n) {
        DigitString d = digits(Integer(n), p);
        Integer rebuilt =
            detail::sum_over_splits(d.digits, pv, mv.c, 1);
        REQUIRE(rebuilt == seq.at(n));
      }
    }
  }
}

TEST_CASE("mv valuation bounds") {
  CHECK(check_mv_valuations(constant_terms(cosine_like()), Prime(2), 16)
            .passed());
  CHECK(check_mv_valuations(constant_terms(trinomial()), Prime(3), 81)
            .passed());
  // below p everything is single-digit: vacuous but green
  CHECK(check_mv_valuations(constant_terms(cosine_like()), Prime(7), 5)
            .passed());
}

TEST_CASE("constant-term sequences satisfy the p-Lucas congruence") {
  for (unsigned long pv : {2ul, 3ul, 5ul}) {
    for (const LaurentPolynomial& lambda : {cosine_like(), trinomial()}) {
      SequenceHandle seq = constant_terms(lambda);
      CHECK(check_plucas(seq, Prime(pv), 50).passed());
    }
  }
}

TEST_CASE("valuation bound for constant terms with a type II operator") {
  // theta - z^2 (4 theta + 4) annihilates the central binomial
  // constant-term sequence of x + 1/x
  DifferentialOperator op = DifferentialOperator::create(
      {IntPolynomial::from_longs({0, 1}), IntPolynomial(),
       IntPolynomial::from_longs({-4, -4})});
  Prime p2(2);
  CHECK(classify(op, p2).kind == Classification::Kind::TypeII);
  SequenceHandle seq = constant_terms(cosine_like());
  Report report = check_constant_term_bound(cosine_like(), seq, &op, p2, 64);
  CHECK(report.passed());

  // the Newton hypothesis fails for x^2 + 1/x^2
  LaurentPolynomial wide = LaurentPolynomial::from_terms(
      1, {{{2}, Integer(1)}, {{-2}, Integer(1)}});
  Report failed = check_constant_term_bound(wide, nullptr, p2, 8);
  CHECK(failed.outcome == Outcome::Error);
}
