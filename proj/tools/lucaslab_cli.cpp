// Command-line front end: preset registry access, batch verification
// commands, JSON report emission.
//
// Exit codes: 0 = all checks pass, 1 = mathematical counterexample found,
// 2 = malformed input or violated precondition.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lucaslab/gamma_psi.hpp"
#include "lucaslab/json_io.hpp"
#include "lucaslab/laurent.hpp"
#include "lucaslab/multisum.hpp"
#include "lucaslab/operators.hpp"
#include "lucaslab/padic.hpp"
#include "lucaslab/parallel.hpp"
#include "lucaslab/presets.hpp"
#include "lucaslab/ratio_family.hpp"
#include "lucaslab/report.hpp"

namespace {

using namespace lucaslab;

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open file: " + path);
  json j;
  in >> j;
  return j;
}

int exit_code(const Report& report) {
  switch (report.outcome) {
    case Outcome::Pass:
      return 0;
    case Outcome::Fail:
      return 1;
    case Outcome::Error:
      return 2;
  }
  return 2;
}

void print_report(const Report& report, bool json_mode) {
  if (json_mode) {
    std::cout << to_json(report).dump(2) << "\n";
    return;
  }
  std::cout << report.command << ": " << to_string(report.outcome) << " ("
            << report.checks_run << " checks, " << report.checks_failed
            << " failed, " << report.seconds << " s)\n";
  for (const auto& [key, value] : report.params) {
    std::cout << "  " << key << " = " << value << "\n";
  }
  if (report.first_failure) {
    std::cout << "  first failure: " << report.first_failure->input
              << " | expected " << report.first_failure->expected
              << " | observed " << report.first_failure->observed << "\n";
  }
}

struct SpecSource {
  std::string preset_name;
  std::string file;

  const Preset* resolve_preset() const {
    return preset_name.empty() ? nullptr : &preset(preset_name);
  }

  RatioSpec resolve_spec() const {
    if (!preset_name.empty()) return preset(preset_name).spec;
    if (!file.empty()) return ratio_spec_from_json(load_json(file));
    throw std::invalid_argument("supply --preset or --file");
  }

  void attach(CLI::App* cmd) {
    cmd->add_option("--preset", preset_name, "preset name (see `presets`)");
    cmd->add_option("--file", file, "ratio spec JSON file");
  }
};

int run_criterion(const SpecSource& source, std::size_t max_vectors,
                  int max_dim, bool json_mode) {
  RatioSpec spec = source.resolve_spec();
  CriterionVerdict verdict =
      lucas_criterion(spec, CellEnumerationLimits{max_vectors, max_dim});
  if (json_mode) {
    json out = to_json(verdict);
    out["spec"] = to_json(spec);
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << spec.str() << "\n" << verdict.str() << "\n";
  }
  return verdict.kind == CriterionVerdict::Kind::AllPrimes ? 0 : 1;
}

int run_lucas(const SpecSource& source, unsigned long p_value, long max_n,
              bool family, int digit_bound, int threads, bool json_mode) {
  Prime p(p_value);
  RatioSpec spec = source.resolve_spec();
  Report report = family
                      ? check_lucas_family(spec, p, digit_bound, max_n)
                      : check_plucas(multisum_sequence(spec), p, max_n,
                                     threads);
  print_report(report, json_mode);
  return exit_code(report);
}

int run_beukers(const SpecSource& source, const std::string& op_file,
                unsigned long p_value, long max_n, long cross_check,
                const std::string& weight_file, unsigned weight_power,
                int threads, bool json_mode) {
  Prime p(p_value);
  RatioSpec spec = source.resolve_spec();
  std::optional<DifferentialOperator> op;
  if (!op_file.empty()) {
    op = operator_from_json(load_json(op_file));
  } else if (const Preset* row = source.resolve_preset(); row && row->op) {
    op = row->op;
  }
  if (!op) {
    throw std::invalid_argument(
        "this spec ships without an operator; supply one with --operator");
  }

  Report report;
  ReportTimer timer(report);
  report.command = "beukers";
  report.param("spec", spec.str());
  report.param("p", std::to_string(p_value));
  report.param("max_n", std::to_string(max_n));
  report.param("operator", op->str());

  // Seeds from direct multisums, then recurrence extension.
  std::vector<Integer> seeds;
  for (int n = 0; n < std::max(1, op->order()); ++n) {
    seeds.push_back(multisum(spec, n));
  }
  SequenceHandle values = extend(*op, seeds, max_n);

  Classification cls = classify(*op, p);
  bool hypothesis = cls.kind == Classification::Kind::TypeI;
  std::string detail = cls.str();
  if (cls.kind == Classification::Kind::TypeII) {
    ZeroSet zero = zero_set(values, p);
    hypothesis = zero.contains(static_cast<long>(p_value) - 1);
    detail += hypothesis ? ", p-1 in Z_p" : ", p-1 not in Z_p";
  }
  report.precondition("operator of type I, or type II with p-1 in Z_p",
                      hypothesis, detail);
  if (report.outcome == Outcome::Error) {
    print_report(report, json_mode);
    return exit_code(report);
  }

  for (long n = 0; n <= std::min(cross_check, max_n); ++n) {
    Integer direct = multisum(spec, n);
    bool ok = direct == values.at(n);
    report.add("cross-check n=" + std::to_string(n),
               "recurrence matches direct multisum", ok ? "equal" : "differs",
               ok);
  }

  std::optional<PolynomialWeight> weight;
  if (!weight_file.empty()) {
    weight = weight_from_json(load_json(weight_file));
  } else if (weight_power > 0) {
    weight = PolynomialWeight::monomial(spec.dimension, 0, weight_power);
  }

  Report bound =
      check_valuation_bound(spec, values, p, max_n, weight, threads);
  for (const auto& [key, value] : bound.params) {
    if (key == "zero_set") report.param(key, value);
  }
  for (CheckRecord& record : bound.records) report.add(std::move(record));
  print_report(report, json_mode);
  return exit_code(report);
}

int run_operator_check(const SpecSource& source, const std::string& op_file,
                       long max_n, bool json_mode) {
  DifferentialOperator op = operator_from_json(load_json(op_file));
  SequenceHandle seq = multisum_sequence(source.resolve_spec());
  Report report = check_annihilation(op, seq, max_n);
  print_report(report, json_mode);
  return exit_code(report);
}

int run_operator_classify(const std::string& op_file, unsigned long p_value,
                          bool json_mode) {
  DifferentialOperator op = operator_from_json(load_json(op_file));
  Classification cls = classify(op, Prime(p_value));
  if (json_mode) {
    std::cout << to_json(cls).dump(2) << "\n";
  } else {
    std::cout << cls.str() << "\n";
  }
  return 0;
}

int run_operator_extend(const std::string& op_file,
                        const std::vector<std::string>& seed_strings,
                        long max_n, bool json_mode) {
  DifferentialOperator op = operator_from_json(load_json(op_file));
  std::vector<Integer> seeds;
  for (const std::string& s : seed_strings) seeds.emplace_back(s);
  SequenceHandle values = extend(op, seeds, max_n);
  if (json_mode) {
    json out = json::array();
    for (long n = 0; n <= max_n; ++n) {
      out.push_back(integer_to_json(values.at(n)));
    }
    std::cout << out.dump() << "\n";
  } else {
    for (long n = 0; n <= max_n; ++n) {
      std::cout << n << " " << values.at(n).get_str() << "\n";
    }
  }
  return 0;
}

int run_laurent_ct(const std::string& file, long max_n, bool json_mode) {
  LaurentPolynomial lambda = laurent_from_json(load_json(file));
  SequenceHandle seq = constant_terms(lambda);
  seq.ensure(max_n);
  if (json_mode) {
    json out = json::array();
    for (long n = 0; n <= max_n; ++n) out.push_back(integer_to_json(seq.at(n)));
    std::cout << out.dump() << "\n";
  } else {
    for (long n = 0; n <= max_n; ++n) {
      std::cout << n << " " << seq.at(n).get_str() << "\n";
    }
  }
  return 0;
}

int run_laurent_newton(const std::string& file, bool json_mode) {
  LaurentPolynomial lambda = laurent_from_json(load_json(file));
  std::vector<std::vector<long>> interior = interior_lattice_points(lambda);
  const bool origin_only =
      interior.size() == 1 &&
      interior[0] == std::vector<long>(lambda.dimension(), 0);
  if (json_mode) {
    std::cout << json{{"interior_points", interior},
                      {"origin_only", origin_only}}
                     .dump(2)
              << "\n";
  } else {
    std::cout << "interior lattice points (" << interior.size() << "):\n";
    for (const auto& v : interior) {
      std::cout << "  " << detail::join_vector(v) << "\n";
    }
    std::cout << (origin_only ? "origin is the unique interior point\n"
                              : "origin is NOT the unique interior point\n");
  }
  return origin_only ? 0 : 1;
}

int run_laurent_mv(const std::string& file, unsigned long p_value, long max_n,
                   bool json_mode) {
  LaurentPolynomial lambda = laurent_from_json(load_json(file));
  Report report =
      check_mv_valuations(constant_terms(lambda), Prime(p_value), max_n);
  print_report(report, json_mode);
  return exit_code(report);
}

int run_laurent_theorem2(const std::string& file, const std::string& op_file,
                         unsigned long p_value, long max_n, int threads,
                         bool json_mode) {
  LaurentPolynomial lambda = laurent_from_json(load_json(file));
  std::optional<DifferentialOperator> op;
  if (!op_file.empty()) op = operator_from_json(load_json(op_file));
  Report report = check_constant_term_bound(
      lambda, op ? &*op : nullptr, Prime(p_value), max_n, threads);
  print_report(report, json_mode);
  return exit_code(report);
}

int run_gamma(unsigned long p_value, long eval_n, unsigned long max_m,
              unsigned long max_n, bool identities, bool json_mode) {
  Prime p(p_value);
  if (eval_n >= 0) {
    Integer value = gamma_p(static_cast<unsigned long>(eval_n), p);
    if (json_mode) {
      std::cout << json{{"n", eval_n}, {"p", p_value},
                        {"gamma", integer_to_json(value)}}
                       .dump()
                << "\n";
    } else {
      std::cout << value.get_str() << "\n";
    }
    return 0;
  }
  Report report = check_gamma_ratio(p, max_m, max_n);
  if (identities) {
    for (unsigned long m = 0; m <= std::min<unsigned long>(max_m, 10); ++m) {
      for (unsigned long n = 0; n <= std::min<unsigned long>(max_n, 10);
           ++n) {
        Report ids = check_product_identities(p, n, m);
        for (CheckRecord& record : ids.records) {
          record.input += " (n=" + std::to_string(n) +
                          ", m=" + std::to_string(m) + ")";
          report.add(std::move(record));
        }
      }
    }
  }
  print_report(report, json_mode);
  return exit_code(report);
}

int run_psi(unsigned long p_value, unsigned long max_m, bool json_mode) {
  Prime p(p_value);
  Report report;
  ReportTimer timer(report);
  report.command = "psi_newton_girard";
  report.param("p", std::to_string(p_value));
  report.param("max_m", std::to_string(max_m));
  for (unsigned long k = 1; k < p_value; ++k) {
    for (unsigned long m = 1; m <= max_m; ++m) {
      for (unsigned long i = 1; i <= m; ++i) {
        Report one = check_newton_girard(p, k, i, m);
        for (CheckRecord& record : one.records) {
          record.input = "k=" + std::to_string(k) + " i=" + std::to_string(i) +
                         " m=" + std::to_string(m);
          report.add(std::move(record));
        }
      }
    }
  }
  print_report(report, json_mode);
  return exit_code(report);
}

int run_walk(int letters, bool check_type, unsigned long p_value, long verify,
             bool json_mode) {
  DifferentialOperator op = walk_recurrence(letters);
  if (check_type) {
    Classification cls = classify(op, Prime(p_value));
    if (json_mode) {
      json out = to_json(cls);
      out["operator"] = to_json(op);
      std::cout << out.dump(2) << "\n";
    } else {
      std::cout << cls.str() << "\n";
    }
    return 0;
  }
  if (verify >= 0) {
    SequenceHandle seq = multisum_sequence(abelian_squares(letters).spec);
    Report report = check_annihilation(op, seq, verify);
    print_report(report, json_mode);
    return exit_code(report);
  }
  if (json_mode) {
    std::cout << to_json(op).dump(2) << "\n";
  } else {
    std::cout << op.str() << "\n";
  }
  return 0;
}

int run_presets(bool json_mode) {
  if (json_mode) {
    json out = json::array();
    for (const Preset& row : presets()) {
      json entry{{"name", row.name},
                 {"oeis", row.oeis},
                 {"description", row.description},
                 {"spec", to_json(row.spec)}};
      entry["operator"] = row.op ? to_json(*row.op) : json(nullptr);
      out.push_back(std::move(entry));
    }
    std::cout << out.dump(2) << "\n";
  } else {
    for (const Preset& row : presets()) {
      std::cout << row.name << "  [" << row.oeis << "]  " << row.description
                << (row.op ? "  (operator bundled)" : "") << "\n"
                << "    " << row.spec.str() << "\n";
    }
    std::cout << "abelian_squares(j)  squared multinomials over j letters "
                 "(use --letters with `walk`)\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "lucaslab: exact verification of Lucas congruences and p-adic "
      "valuation bounds for factorial-ratio multisums"};
  app.require_subcommand(1);

  bool json_mode = false;
  int threads = default_thread_count();
  app.add_flag("--json", json_mode, "machine-readable JSON output");
  app.add_option("--threads", threads,
                 "worker threads for batch checks (default: LUCASLAB_THREADS "
                 "or 1)");

  // criterion
  auto* criterion = app.add_subcommand(
      "criterion", "decide the Lucas-property dichotomy for a ratio spec");
  SpecSource criterion_source;
  criterion_source.attach(criterion);
  std::size_t max_vectors = 10;
  int max_dim = 4;
  criterion->add_option("--max-vectors", max_vectors,
                        "cell enumeration cap on the number of vectors");
  criterion->add_option("--max-dim", max_dim, "cell enumeration cap on d");

  // lucas
  auto* lucas = app.add_subcommand(
      "lucas", "verify the p-Lucas congruence for a multisum (or, with "
               "--family, for the ratio family itself)");
  SpecSource lucas_source;
  lucas_source.attach(lucas);
  unsigned long lucas_p = 2;
  long lucas_max_n = 30;
  bool lucas_family = false;
  int lucas_digits = 2;
  lucas->add_option("-p,--prime", lucas_p, "prime modulus")->required();
  lucas->add_option("--max-n", lucas_max_n, "bound on n");
  lucas->add_flag("--family", lucas_family,
                  "check the d-dimensional family congruence instead");
  lucas->add_option("--digits", lucas_digits,
                    "joint digit length for the family digit-product check");

  // beukers
  auto* beukers = app.add_subcommand(
      "beukers", "verify v_p(S(n)) >= alpha_p(S,n) with recurrence-extended "
                 "values (the Apery-number divisibility conjectures)");
  SpecSource beukers_source;
  beukers_source.attach(beukers);
  std::string beukers_op;
  unsigned long beukers_p = 5;
  long beukers_max_n = 100;
  long beukers_cross = 50;
  std::string beukers_weight;
  unsigned beukers_weight_power = 0;
  beukers->add_option("-p,--prime", beukers_p, "prime modulus")->required();
  beukers->add_option("--max-n", beukers_max_n, "bound on n");
  beukers->add_option("--operator", beukers_op,
                      "operator JSON file (required for operator-less rows)");
  beukers->add_option("--cross-check", beukers_cross,
                      "cross-check extended values against direct multisums "
                      "up to this index");
  beukers->add_option("--weight", beukers_weight, "weight JSON file");
  beukers->add_option("--weight-power", beukers_weight_power,
                      "use the weight g(n) = n_1^a");

  // operator
  auto* op_cmd = app.add_subcommand("operator", "operator utilities");
  op_cmd->require_subcommand(1);
  auto* op_check = op_cmd->add_subcommand(
      "check", "verify that an operator annihilates a multisum sequence");
  SpecSource op_check_source;
  op_check_source.attach(op_check);
  std::string op_check_file;
  long op_check_max_n = 50;
  op_check->add_option("--op", op_check_file, "operator JSON file")
      ->required();
  op_check->add_option("--max-n", op_check_max_n, "bound on n");
  auto* op_classify =
      op_cmd->add_subcommand("classify", "type I / type II classification");
  std::string op_classify_file;
  unsigned long op_classify_p = 2;
  op_classify->add_option("--op,--file", op_classify_file,
                          "operator JSON file")->required();
  op_classify->add_option("-p,--prime", op_classify_p, "prime modulus")
      ->required();
  auto* op_extend = op_cmd->add_subcommand(
      "extend", "extend seed values through the recurrence");
  std::string op_extend_file;
  std::vector<std::string> op_extend_seeds;
  long op_extend_max_n = 20;
  op_extend->add_option("--op", op_extend_file, "operator JSON file")
      ->required();
  op_extend->add_option("--seeds", op_extend_seeds,
                        "seed values A(0), A(1), ...")->required();
  op_extend->add_option("--max-n", op_extend_max_n, "bound on n");

  // laurent
  auto* laurent = app.add_subcommand("laurent", "constant-term utilities");
  laurent->require_subcommand(1);
  auto* laurent_ct = laurent->add_subcommand(
      "ct", "constant terms of powers of a Laurent polynomial");
  std::string laurent_ct_file;
  long laurent_ct_max_n = 20;
  laurent_ct->add_option("--file", laurent_ct_file, "Laurent JSON file")
      ->required();
  laurent_ct->add_option("--max-n", laurent_ct_max_n, "bound on n");
  auto* laurent_newton = laurent->add_subcommand(
      "newton", "interior lattice points of the Newton polytope");
  std::string laurent_newton_file;
  laurent_newton->add_option("--file", laurent_newton_file,
                             "Laurent JSON file")->required();
  auto* laurent_mv = laurent->add_subcommand(
      "mv", "block-decomposition coefficients and their valuations");
  std::string laurent_mv_file;
  unsigned long laurent_mv_p = 2;
  long laurent_mv_max_n = 15;
  laurent_mv->add_option("--file", laurent_mv_file, "Laurent JSON file")
      ->required();
  laurent_mv->add_option("-p,--prime", laurent_mv_p, "prime modulus")
      ->required();
  laurent_mv->add_option("--max-n", laurent_mv_max_n, "bound on n");
  auto* laurent_t2 = laurent->add_subcommand(
      "theorem2", "valuation lower bound for constant-term sequences");
  std::string laurent_t2_file, laurent_t2_op;
  unsigned long laurent_t2_p = 2;
  long laurent_t2_max_n = 64;
  laurent_t2->add_option("--file", laurent_t2_file, "Laurent JSON file")
      ->required();
  laurent_t2->add_option("--op", laurent_t2_op,
                         "operator JSON file (optional; enables the "
                         "structural hypothesis checks)");
  laurent_t2->add_option("-p,--prime", laurent_t2_p, "prime modulus")
      ->required();
  laurent_t2->add_option("--max-n", laurent_t2_max_n, "bound on n");

  // gamma
  auto* gamma = app.add_subcommand(
      "gamma", "p-adic Gamma values and the ratio congruence");
  unsigned long gamma_p_value = 5;
  long gamma_eval = -1;
  unsigned long gamma_max_m = 10, gamma_max_n = 10;
  bool gamma_identities = false;
  gamma->add_option("-p,--prime", gamma_p_value, "prime modulus")->required();
  gamma->add_option("--eval", gamma_eval, "print Gamma_p(n) and exit");
  gamma->add_option("--max-m", gamma_max_m, "bound on m");
  gamma->add_option("--max-n", gamma_max_n, "bound on n");
  gamma->add_flag("--identities", gamma_identities,
                  "also verify the exact product identities");

  // psi
  auto* psi_cmd = app.add_subcommand(
      "psi", "Newton-Girard identities for the symmetric functions Psi");
  unsigned long psi_p = 3;
  unsigned long psi_max_m = 8;
  psi_cmd->add_option("-p,--prime", psi_p, "prime modulus")->required();
  psi_cmd->add_option("--max-m", psi_max_m, "bound on m");

  // walk
  auto* walk = app.add_subcommand(
      "walk", "recurrence operator for abelian-square counts");
  int walk_letters = 3;
  bool walk_check_type = false;
  unsigned long walk_p = 2;
  long walk_verify = -1;
  walk->add_option("--letters", walk_letters, "alphabet size (2..8)")
      ->required();
  walk->add_flag("--check-type", walk_check_type,
                 "classify the generated operator at -p");
  walk->add_option("-p,--prime", walk_p, "prime modulus for --check-type");
  walk->add_option("--verify", walk_verify,
                   "verify annihilation against direct multisums up to n");

  // presets
  auto* presets_cmd =
      app.add_subcommand("presets", "list the bundled sequence registry");

  CLI11_PARSE(app, argc, argv);

  try {
    if (criterion->parsed()) {
      return run_criterion(criterion_source, max_vectors, max_dim, json_mode);
    }
    if (lucas->parsed()) {
      return run_lucas(lucas_source, lucas_p, lucas_max_n, lucas_family,
                       lucas_digits, threads, json_mode);
    }
    if (beukers->parsed()) {
      return run_beukers(beukers_source, beukers_op, beukers_p, beukers_max_n,
                         beukers_cross, beukers_weight, beukers_weight_power,
                         threads, json_mode);
    }
    if (op_cmd->parsed()) {
      if (op_check->parsed()) {
        return run_operator_check(op_check_source, op_check_file,
                                  op_check_max_n, json_mode);
      }
      if (op_classify->parsed()) {
        return run_operator_classify(op_classify_file, op_classify_p,
                                     json_mode);
      }
      return run_operator_extend(op_extend_file, op_extend_seeds,
                                 op_extend_max_n, json_mode);
    }
    if (laurent->parsed()) {
      if (laurent_ct->parsed()) {
        return run_laurent_ct(laurent_ct_file, laurent_ct_max_n, json_mode);
      }
      if (laurent_newton->parsed()) {
        return run_laurent_newton(laurent_newton_file, json_mode);
      }
      if (laurent_mv->parsed()) {
        return run_laurent_mv(laurent_mv_file, laurent_mv_p, laurent_mv_max_n,
                              json_mode);
      }
      return run_laurent_theorem2(laurent_t2_file, laurent_t2_op,
                                  laurent_t2_p, laurent_t2_max_n, threads,
                                  json_mode);
    }
    if (gamma->parsed()) {
      return run_gamma(gamma_p_value, gamma_eval, gamma_max_m, gamma_max_n,
                       gamma_identities, json_mode);
    }
    if (psi_cmd->parsed()) {
      return run_psi(psi_p, psi_max_m, json_mode);
    }
    if (walk->parsed()) {
      return run_walk(walk_letters, walk_check_type, walk_p, walk_verify,
                      json_mode);
    }
    if (presets_cmd->parsed()) {
      return run_presets(json_mode);
    }
  } catch (const std::exception& error) {
    std::cerr << "error: " << error.what() << "\n";
    return 2;
  }
  return 2;
}
