#pragma once

/**
 * JSON schemas for the file formats and reports.
 *
 *   ratio spec  {"d": 2, "e": [[2,1],[2,1]], "f": [[1,0],...]}
 *   weight      [{"exp": [1,0], "coef": 1}, ...]
 *   operator    {"P": [[c0,c1,...], ...]}   (ascending k, ascending degree)
 *   laurent     {"d": 2, "terms": [{"exp": [1,0], "coef": 1}, ...]}
 *
 * Integers that do not fit a JSON number are emitted as decimal strings;
 * both forms are accepted on input.
 */

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "lucaslab/laurent.hpp"
#include "lucaslab/multisum.hpp"
#include "lucaslab/operators.hpp"
#include "lucaslab/ratio_family.hpp"
#include "lucaslab/report.hpp"

namespace lucaslab {

using nlohmann::json;

inline Integer integer_from_json(const json& j) {
  if (j.is_number_integer()) return Integer(j.get<long>());
  if (j.is_string()) return Integer(j.get<std::string>());
  throw std::invalid_argument("expected an integer or a decimal string");
}

inline json integer_to_json(const Integer& v) {
  if (v.fits_slong_p()) {
    long x = v.get_si();
    if (x > -(1L << 53) && x < (1L << 53)) return json(x);
  }
  return json(v.get_str());
}

inline json to_json(const RatioSpec& spec) {
  return json{{"d", spec.dimension}, {"e", spec.e}, {"f", spec.f}};
}

inline RatioSpec ratio_spec_from_json(const json& j) {
  return RatioSpec::create(j.at("d").get<int>(),
                           j.at("e").get<std::vector<std::vector<long>>>(),
                           j.at("f").get<std::vector<std::vector<long>>>());
}

inline json to_json(const PolynomialWeight& weight) {
  json terms = json::array();
  for (const auto& term : weight.terms) {
    terms.push_back(json{{"exp", term.exponents},
                         {"coef", integer_to_json(term.coefficient)}});
  }
  return terms;
}

inline PolynomialWeight weight_from_json(const json& j) {
  PolynomialWeight weight;
  for (const json& term : j) {
    weight.terms.push_back({term.at("exp").get<std::vector<unsigned>>(),
                            integer_from_json(term.at("coef"))});
  }
  return weight;
}

inline json to_json(const DifferentialOperator& op) {
  json coeffs = json::array();
  for (const IntPolynomial& poly : op.P) {
    json list = json::array();
    for (const Integer& c : poly.coefficients()) {
      list.push_back(integer_to_json(c));
    }
    coeffs.push_back(std::move(list));
  }
  return json{{"P", std::move(coeffs)}};
}

inline DifferentialOperator operator_from_json(const json& j) {
  std::vector<IntPolynomial> polys;
  for (const json& list : j.at("P")) {
    std::vector<Integer> coeffs;
    for (const json& c : list) coeffs.push_back(integer_from_json(c));
    polys.emplace_back(std::move(coeffs));
  }
  return DifferentialOperator::create(std::move(polys));
}

inline json to_json(const LaurentPolynomial& lambda) {
  json terms = json::array();
  for (const auto& [exps, coef] : lambda.terms()) {
    terms.push_back(json{{"exp", exps}, {"coef", integer_to_json(coef)}});
  }
  return json{{"d", lambda.dimension()}, {"terms", std::move(terms)}};
}

inline LaurentPolynomial laurent_from_json(const json& j) {
  LaurentPolynomial lambda(j.at("d").get<int>());
  for (const json& term : j.at("terms")) {
    lambda.add(term.at("exp").get<std::vector<long>>(),
               integer_from_json(term.at("coef")));
  }
  return lambda;
}

inline json to_json(const CheckRecord& record) {
  return json{{"input", record.input},
              {"expected", record.expected},
              {"observed", record.observed},
              {"ok", record.ok}};
}

inline CheckRecord check_record_from_json(const json& j) {
  return CheckRecord{j.at("input").get<std::string>(),
                     j.at("expected").get<std::string>(),
                     j.at("observed").get<std::string>(),
                     j.at("ok").get<bool>()};
}

inline json to_json(const Report& report) {
  json params = json::object();
  for (const auto& [key, value] : report.params) params[key] = value;
  json records = json::array();
  for (const CheckRecord& record : report.records) {
    records.push_back(to_json(record));
  }
  json out{{"command", report.command},
           {"params", std::move(params)},
           {"outcome", to_string(report.outcome)},
           {"checks_run", report.checks_run},
           {"checks_failed", report.checks_failed},
           {"records", std::move(records)},
           {"seconds", report.seconds}};
  out["first_failure"] =
      report.first_failure ? to_json(*report.first_failure) : json(nullptr);
  return out;
}

inline Report report_from_json(const json& j) {
  Report report;
  report.command = j.at("command").get<std::string>();
  for (const auto& [key, value] : j.at("params").items()) {
    report.params.emplace_back(key, value.get<std::string>());
  }
  const std::string outcome = j.at("outcome").get<std::string>();
  report.outcome = outcome == "PASS"   ? Outcome::Pass
                   : outcome == "FAIL" ? Outcome::Fail
                                       : Outcome::Error;
  for (const json& record : j.at("records")) {
    report.records.push_back(check_record_from_json(record));
  }
  report.checks_run = j.at("checks_run").get<std::size_t>();
  report.checks_failed = j.at("checks_failed").get<std::size_t>();
  if (!j.at("first_failure").is_null()) {
    report.first_failure = check_record_from_json(j.at("first_failure"));
  }
  report.seconds = j.at("seconds").get<double>();
  return report;
}

inline json to_json(const Cell& cell) {
  json witness = json::array();
  for (const Rational& x : cell.witness) witness.push_back(x.get_str());
  return json{{"signature", cell.signature.floors},
              {"witness", std::move(witness)},
              {"delta", integer_to_json(cell.delta)},
              {"touches_domain", cell.touches_domain}};
}

inline json to_json(const CriterionVerdict& verdict) {
  json out;
  switch (verdict.kind) {
    case CriterionVerdict::Kind::AllPrimes:
      out["kind"] = "AllPrimes";
      break;
    case CriterionVerdict::Kind::FinitelyMany:
      out["kind"] = "FinitelyMany";
      out["reason"] = verdict.reason == CriterionVerdict::Reason::UnequalWeights
                          ? "UnequalWeights"
                          : "ZeroCell";
      break;
    case CriterionVerdict::Kind::NotIntegerValued:
      out["kind"] = "NotIntegerValued";
      break;
  }
  if (verdict.coordinate) out["coordinate"] = *verdict.coordinate;
  if (verdict.cell) out["cell"] = to_json(*verdict.cell);
  return out;
}

inline json to_json(const Classification& cls) {
  json out;
  out["kind"] = cls.kind == Classification::Kind::TypeI    ? "TypeI"
                : cls.kind == Classification::Kind::TypeII ? "TypeII"
                                                           : "Neither";
  out["also_type_two"] = cls.also_type_two;
  out["failed_conditions"] = cls.failed_conditions;
  return out;
}

}  // namespace lucaslab
