#include <catch2/catch_amalgamated.hpp>

#include "lucaslab/json_io.hpp"
#include "lucaslab/presets.hpp"

using namespace lucaslab;

TEST_CASE("ratio spec JSON round trip") {
  json j = json::parse(R"({"d":2,"e":[[2,1],[2,1]],"f":[[1,0],[0,1]]})");
  RatioSpec spec = ratio_spec_from_json(j);
  CHECK(spec.dimension == 2);
  CHECK(spec.e.size() == 2);
  CHECK(ratio_spec_from_json(to_json(spec)) == spec);
  CHECK_THROWS_AS(
      ratio_spec_from_json(json::parse(R"({"d":1,"e":[[0]],"f":[]})")),
      std::invalid_argument);
}

TEST_CASE("weight JSON round trip") {
  json j = json::parse(R"([{"exp":[1,0],"coef":1},{"exp":[0,2],"coef":-3}])");
  PolynomialWeight weight = weight_from_json(j);
  REQUIRE(weight.terms.size() == 2);
  CHECK(weight.terms[1].coefficient == -3);
  std::vector<long> n{2, 5};
  CHECK(weight.eval(n) == 2 - 3 * 25);
  PolynomialWeight again = weight_from_json(to_json(weight));
  CHECK(again.eval(n) == weight.eval(n));
}

TEST_CASE("operator JSON round trip") {
  const DifferentialOperator& op = *preset("apery3").op;
  DifferentialOperator again = operator_from_json(to_json(op));
  CHECK(again.order() == op.order());
  for (int k = 0; k <= op.order(); ++k) {
    CHECK(again.P[k] == op.P[k]);
  }
  // big coefficients travel as strings
  DifferentialOperator big = DifferentialOperator::create(
      {IntPolynomial({Integer("123456789012345678901234567890"), Integer(1)}),
       IntPolynomial::from_longs({1})});
  DifferentialOperator big2 = operator_from_json(to_json(big));
  CHECK(big2.P[0] == big.P[0]);
}

TEST_CASE("laurent JSON round trip") {
  json j = json::parse(
      R"({"d":2,"terms":[{"exp":[1,0],"coef":1},{"exp":[0,1],"coef":1},
          {"exp":[-1,-1],"coef":1}]})");
  LaurentPolynomial lambda = laurent_from_json(j);
  CHECK(lambda.dimension() == 2);
  CHECK(lambda.terms().size() == 3);
  LaurentPolynomial again = laurent_from_json(to_json(lambda));
  CHECK(again.terms() == lambda.terms());
}

TEST_CASE("report JSON round trip is stable") {
  Report report;
  report.command = "demo";
  report.param("p", "5");
  report.param("n_bound", "10");
  report.add("n=0", "v >= 0", "v = 1", true);
  report.add("n=1", "v >= 2", "v = 1", false);
  report.add("n=2", "v >= 0", "v = 0", true);
  report.seconds = 0.25;
  CHECK(report.outcome == Outcome::Fail);
  CHECK(report.checks_run == 3);
  CHECK(report.checks_failed == 1);
  REQUIRE(report.first_failure.has_value());
  CHECK(report.first_failure->input == "n=1");

  json j = to_json(report);
  Report parsed = report_from_json(j);
  CHECK(to_json(parsed) == j);
}

TEST_CASE("precondition failures mark reports as errors") {
  Report report;
  report.add("n=0", "v >= 0", "v = 0", true);
  report.precondition("f consists of unit vectors", false, "bad vector");
  CHECK(report.outcome == Outcome::Error);
  json j = to_json(report);
  CHECK(j.at("outcome") == "ERROR");
}

TEST_CASE("verdict and classification serialization") {
  CriterionVerdict verdict = lucas_criterion(preset("apery3").spec);
  CHECK(to_json(verdict).at("kind") == "AllPrimes");
  CriterionVerdict zero =
      lucas_criterion(RatioSpec::create(1, {{3}}, {{1}, {2}}));
  json jz = to_json(zero);
  CHECK(jz.at("kind") == "FinitelyMany");
  CHECK(jz.at("reason") == "ZeroCell");
  CHECK(jz.at("cell").contains("witness"));

  Classification cls = classify(*preset("franel4").op, Prime(7));
  CHECK(to_json(cls).at("kind") == "TypeII");
}

TEST_CASE("integers encode as numbers or strings by size") {
  CHECK(integer_to_json(Integer(42)) == json(42));
  Integer huge("9007199254740993123456789");
  json j = integer_to_json(huge);
  CHECK(j.is_string());
  CHECK(integer_from_json(j) == huge);
}
