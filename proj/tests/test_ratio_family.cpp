#include <random>
#include <set>

#include <catch2/catch_amalgamated.hpp>

#include "lucaslab/ratio_family.hpp"
#include "support/oracles.hpp"

using namespace lucaslab;

namespace {

RatioSpec apery3_spec() {
  return RatioSpec::create(2, {{2, 1}, {2, 1}},
                           {{1, 0}, {1, 0}, {1, 0}, {1, 0}, {0, 1}, {0, 1}});
}

std::vector<Rational> rat_point(std::initializer_list<Rational> xs) {
  return std::vector<Rational>(xs);
}

// Random spec generator shared with the acceptance suite's criterion 6.
RatioSpec random_small_spec(std::mt19937& rng) {
  std::uniform_int_distribution<int> dim_dist(1, 2);
  std::uniform_int_distribution<int> count_dist(1, 3);
  std::uniform_int_distribution<long> coord_dist(0, 3);
  while (true) {
    const int d = dim_dist(rng);
    auto draw_tuple = [&](int count) {
      std::vector<std::vector<long>> tuple;
      for (int i = 0; i < count; ++i) {
        std::vector<long> w(d);
        bool nonzero = false;
        for (long& c : w) {
          c = coord_dist(rng);
          nonzero = nonzero || c != 0;
        }
        if (!nonzero) w[rng() % d] = 1;
        tuple.push_back(std::move(w));
      }
      return tuple;
    };
    try {
      return RatioSpec::create(d, draw_tuple(count_dist(rng)),
                               draw_tuple(count_dist(rng)));
    } catch (const std::invalid_argument&) {
      continue;  // e and f collided; redraw
    }
  }
}

}  // namespace

TEST_CASE("ratio spec validation") {
  CHECK_THROWS_AS(RatioSpec::create(2, {{0, 0}}, {{1, 0}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(RatioSpec::create(2, {{1, 1}}, {{1, 1}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(RatioSpec::create(0, {}, {}), std::invalid_argument);
  CHECK_THROWS_AS(RatioSpec::create(1, {{-1}}, {}), std::invalid_argument);
  CHECK_NOTHROW(RatioSpec::create(2, {{2, 1}, {2, 1}}, {{1, 0}}));
}

TEST_CASE("q_value") {
  RatioSpec apery = apery3_spec();
  CHECK(q_value(apery, {2, 1}) == 900);
  // 900 = C(3,2)^2 C(5,2)^2
  Integer b = oracles::binomial(3, 2) * oracles::binomial(5, 2);
  CHECK(Rational(b * b) == q_value(apery, {2, 1}));
  CHECK(q_value(apery, {0, 0}) == 1);
  RatioSpec spec31 = RatioSpec::create(1, {{3}}, {{1}, {2}});
  CHECK(q_value(spec31, {2}) == Rational(oracles::binomial(6, 2)));
  CHECK(q_value(spec31, {2}) == 15);
  CHECK(q_value(apery, {2, 1}) == oracles::q_value_direct(apery, {2, 1}));
}

TEST_CASE("landau_delta") {
  RatioSpec apery = apery3_spec();
  CHECK(landau_delta(apery, rat_point({Rational(1, 2), Rational(1, 2)})) == 2);
  CHECK(landau_delta(apery, rat_point({Rational(0), Rational(0)})) == 0);
  RatioSpec spec31 = RatioSpec::create(1, {{3}}, {{1}, {2}});
  CHECK(landau_delta(spec31, rat_point({Rational(1, 2)})) == 0);
}

TEST_CASE("landau_delta is invariant under fractional parts when |e|=|f|") {
  RatioSpec apery = apery3_spec();
  std::mt19937 rng(424242);
  std::uniform_int_distribution<long> num(-50, 50);
  std::uniform_int_distribution<long> den(1, 12);
  for (int i = 0; i < 200; ++i) {
    std::vector<Rational> x, frac;
    for (int k = 0; k < 2; ++k) {
      Rational v(num(rng), den(rng));
      v.canonicalize();
      x.push_back(v);
      Rational f = v - Rational(detail::rational_floor(v));
      frac.push_back(f);
    }
    CHECK(landau_delta(apery, x) == landau_delta(apery, frac));
  }
}

TEST_CASE("membership in D") {
  RatioSpec apery = apery3_spec();
  CHECK_FALSE(in_D(apery, rat_point({Rational(1, 5), Rational(2, 5)})));
  CHECK(in_D(apery, rat_point({Rational(1, 2), Rational(0)})));
  CHECK_FALSE(in_D(apery, rat_point({Rational(0), Rational(0)})));
  CHECK_THROWS_AS(in_D(apery, rat_point({Rational(1), Rational(0)})),
                  std::invalid_argument);
}

TEST_CASE("r-admissibility") {
  RatioSpec apery = apery3_spec();
  Admissibility a = is_r_admissible(apery, 2);
  CHECK(a.admissible);
  CHECK(a.split == 2);

  RatioSpec ones = RatioSpec::create(2, {{1, 1}}, {{1, 0}});
  CHECK_FALSE(is_r_admissible(ones, 2).admissible);

  RatioSpec mixed = RatioSpec::create(2, {{1, 1}, {2, 0}, {0, 2}}, {{1, 0}});
  Admissibility m = is_r_admissible(mixed, 2);
  CHECK(m.admissible);
  CHECK(m.split == 1);
}

TEST_CASE("cell enumeration in one dimension") {
  RatioSpec spec = RatioSpec::create(1, {{2}}, {{1}, {1}});
  std::vector<Cell> cells = enumerate_cells(spec);
  REQUIRE(cells.size() == 2);
  CHECK(cells[0].signature.floors == std::vector<long>{0, 0, 0});
  CHECK(cells[1].signature.floors == std::vector<long>{1, 0, 0});
  CHECK(cells[0].witness[0] == Rational(1, 4));
  CHECK(cells[1].witness[0] == Rational(3, 4));

  RatioSpec spec31 = RatioSpec::create(1, {{3}}, {{1}, {2}});
  std::vector<Cell> cells31 = enumerate_cells(spec31);
  REQUIRE(cells31.size() == 4);  // cut points 1/3, 1/2, 2/3
}

TEST_CASE("1-d cells agree with the breakpoint oracle") {
  // Oracle: collect all rational breakpoints c/w in [0,1), sort them, and
  // read the joint floor signature at each interval midpoint.
  auto oracle_cells = [](const RatioSpec& spec) {
    std::set<Rational> cuts{Rational(0)};
    for (std::size_t i = 0; i < spec.vector_count(); ++i) {
      long w = spec.vector_at(i)[0];
      for (long c = 1; c < w; ++c) {
        Rational cut(c, w);
        cut.canonicalize();
        cuts.insert(cut);
      }
    }
    std::vector<Rational> sorted(cuts.begin(), cuts.end());
    sorted.push_back(Rational(1));
    std::set<std::vector<long>> signatures;
    for (std::size_t i = 0; i + 1 < sorted.size(); ++i) {
      Rational mid = (sorted[i] + sorted[i + 1]) / 2;
      std::vector<long> sig;
      for (std::size_t k = 0; k < spec.vector_count(); ++k) {
        sig.push_back(
            detail::rational_floor(Rational(spec.vector_at(k)[0]) * mid)
                .get_si());
      }
      signatures.insert(sig);
    }
    return signatures;
  };

  for (const RatioSpec& spec :
       {RatioSpec::create(1, {{3}}, {{1}, {2}}),
        RatioSpec::create(1, {{2}}, {{1}, {1}}),
        RatioSpec::create(1, {{5}, {2}}, {{3}, {4}}),
        RatioSpec::create(1, {{4}}, {{1}, {3}})}) {
    std::set<std::vector<long>> expected = oracle_cells(spec);
    std::vector<Cell> cells = enumerate_cells(spec);
    std::set<std::vector<long>> got;
    for (const Cell& cell : cells) got.insert(cell.signature.floors);
    CHECK(got == expected);
  }
}

TEST_CASE("cell witnesses realize the signature and its Landau value") {
  for (const RatioSpec& spec :
       {apery3_spec(), RatioSpec::create(1, {{3}}, {{1}, {2}}),
        RatioSpec::create(2, {{1, 1}, {2, 0}, {0, 2}},
                          {{1, 0}, {1, 0}, {1, 0}, {0, 1}, {0, 1}, {0, 1}})}) {
    for (const Cell& cell : enumerate_cells(spec)) {
      for (std::size_t i = 0; i < spec.vector_count(); ++i) {
        Rational dot = detail::dot(spec.vector_at(i), cell.witness);
        Integer floor = detail::rational_floor(dot);
        CHECK(floor == cell.signature.floors[i]);
      }
      CHECK(landau_delta(spec, cell.witness) == cell.delta);
      CHECK(in_D(spec, cell.witness) == cell.touches_domain);
    }
  }
}

TEST_CASE("feasible cells partition the box") {
  std::mt19937 rng(777);
  std::uniform_int_distribution<long> num(0, 11);
  for (const RatioSpec& spec :
       {apery3_spec(),
        RatioSpec::create(2, {{2, 1}, {1, 1}},
                          {{1, 0}, {1, 0}, {1, 0}, {0, 1}, {0, 1}})}) {
    std::vector<Cell> cells = enumerate_cells(spec);
    for (int trial = 0; trial < 250; ++trial) {
      std::vector<Rational> x;
      for (int k = 0; k < spec.dimension; ++k) {
        Rational v(num(rng), 12);
        v.canonicalize();
        x.push_back(v);
      }
      int matches = 0;
      for (const Cell& cell : cells) {
        bool inside = true;
        for (std::size_t i = 0; i < spec.vector_count() && inside; ++i) {
          Rational dot = detail::dot(spec.vector_at(i), x);
          inside = detail::rational_floor(dot) == cell.signature.floors[i];
        }
        matches += inside;
      }
      CHECK(matches == 1);
    }
  }
}

TEST_CASE("cell enumeration caps") {
  RatioSpec big = RatioSpec::create(
      2, {{2, 0}, {2, 0}, {0, 2}, {0, 2}},
      {{1, 0}, {1, 0}, {1, 0}, {1, 0}, {0, 1}, {0, 1}, {0, 1}, {0, 1}});
  CHECK_THROWS_AS(enumerate_cells(big), std::domain_error);
  CHECK_NOTHROW(enumerate_cells(big, CellEnumerationLimits{16, 4}));
}

TEST_CASE("lucas criterion verdicts") {
  CHECK(lucas_criterion(apery3_spec()).kind ==
        CriterionVerdict::Kind::AllPrimes);

  CriterionVerdict unequal =
      lucas_criterion(RatioSpec::create(1, {{2}}, {{1}}));
  CHECK(unequal.kind == CriterionVerdict::Kind::FinitelyMany);
  CHECK(unequal.reason == CriterionVerdict::Reason::UnequalWeights);
  CHECK(unequal.coordinate == 1);

  RatioSpec spec31 = RatioSpec::create(1, {{3}}, {{1}, {2}});
  CriterionVerdict zero = lucas_criterion(spec31);
  CHECK(zero.kind == CriterionVerdict::Kind::FinitelyMany);
  CHECK(zero.reason == CriterionVerdict::Reason::ZeroCell);
  REQUIRE(zero.cell.has_value());
  CHECK(zero.cell->witness[0] >= Rational(1, 2));
  CHECK(zero.cell->witness[0] < Rational(2, 3));
  CHECK(landau_delta(spec31, zero.cell->witness) == 0);
  CHECK(in_D(spec31, zero.cell->witness));

  // n!/(2n)! is a family of reciprocals: not integer-valued
  CriterionVerdict neg = lucas_criterion(RatioSpec::create(1, {{1}}, {{2}}));
  CHECK(neg.kind == CriterionVerdict::Kind::NotIntegerValued);
  REQUIRE(neg.cell.has_value());
  CHECK(neg.cell->delta < 0);
}

TEST_CASE("family valuation agrees with the direct valuation") {
  Prime p5(5), p2(2);
  RatioSpec apery = apery3_spec();
  CHECK(family_valuation(apery, {2, 1}, p5) == Valuation(2));
  CHECK(family_valuation(apery, {0, 0}, p5) == Valuation(0));

  // Both routes must agree; the Legendre-sum oracle is ground truth and
  // gives 0 here (C(12,4) = 495 is odd).
  RatioSpec spec31 = RatioSpec::create(1, {{3}}, {{1}, {2}});
  CHECK(q_value(spec31, {4}) == 495);
  CHECK(family_valuation(spec31, {4}, Prime(2)) == Valuation(0));
  CHECK(valuation(q_value(spec31, {4}), Prime(2)) == Valuation(0));

  std::mt19937 rng(90210);
  const unsigned long primes[] = {2, 3, 5, 7, 11};
  std::uniform_int_distribution<long> coord(0, 12);
  for (int trial = 0; trial < 200; ++trial) {
    RatioSpec spec = random_small_spec(rng);
    Prime p(primes[rng() % 5]);
    std::vector<long> n(spec.dimension);
    for (long& c : n) c = coord(rng);
    CHECK(family_valuation(spec, n, p) == valuation(q_value(spec, n), p));
  }
}

TEST_CASE("family Lucas congruence checks") {
  RatioSpec apery = apery3_spec();
  CHECK(check_lucas_family(apery, Prime(5), 2, 4).passed());

  // the zero-cell family fails for p = 7
  RatioSpec spec31 = RatioSpec::create(1, {{3}}, {{1}, {2}});
  Report bad = check_lucas_family(spec31, Prime(7), 2, 10);
  CHECK(bad.outcome == Outcome::Fail);

  // binomial coefficients satisfy the classical Lucas theorem
  RatioSpec binom = RatioSpec::create(2, {{1, 1}}, {{1, 0}, {0, 1}});
  CHECK(check_lucas_family(binom, Prime(3), 2, 10).passed());
}

TEST_CASE("family alpha bound") {
  Prime p2(2);
  RatioSpec apery = apery3_spec();
  CHECK(check_family_alpha_bound(apery, p2, 3).passed());

  RatioSpec central1d = RatioSpec::create(1, {{2}}, {{1}, {1}});
  CHECK(family_zero_set(central1d, p2) ==
        std::set<std::vector<long>>{{1}});
  CHECK(family_alpha(central1d, std::vector<long>{3}, p2) == 2);
  CHECK(family_valuation(central1d, {3}, p2) == Valuation(2));  // v_2(C(6,3))
  CHECK(q_value(central1d, {3}) == 20);
  CHECK(check_family_alpha_bound(central1d, p2, 5).passed());
}
