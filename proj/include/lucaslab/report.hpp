#pragma once

/**
 * Structured outcome of a batch verification: one record per check, the
 * first counterexample if any, and a PASS / FAIL / ERROR outcome. ERROR is
 * reserved for violated preconditions and malformed inputs; FAIL means a
 * mathematical counterexample was found.
 *
 * Records are kept in the (deterministic) order the checks were issued;
 * batch drivers sort by index before inserting.
 */

#include <chrono>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace lucaslab {

enum class Outcome { Pass, Fail, Error };

inline const char* to_string(Outcome o) {
  switch (o) {
    case Outcome::Pass:
      return "PASS";
    case Outcome::Fail:
      return "FAIL";
    case Outcome::Error:
      return "ERROR";
  }
  return "ERROR";
}

struct CheckRecord {
  std::string input;
  std::string expected;
  std::string observed;
  bool ok = false;
};

struct Report {
  std::string command;
  std::vector<std::pair<std::string, std::string>> params;
  Outcome outcome = Outcome::Pass;
  std::vector<CheckRecord> records;
  std::optional<CheckRecord> first_failure;
  std::size_t checks_run = 0;
  std::size_t checks_failed = 0;
  double seconds = 0.0;

  void param(std::string key, std::string value) {
    params.emplace_back(std::move(key), std::move(value));
  }

  void add(CheckRecord record) {
    ++checks_run;
    if (!record.ok) {
      ++checks_failed;
      if (!first_failure) first_failure = record;
      if (outcome == Outcome::Pass) outcome = Outcome::Fail;
    }
    records.push_back(std::move(record));
  }

  void add(std::string input, std::string expected, std::string observed,
           bool ok) {
    add(CheckRecord{std::move(input), std::move(expected), std::move(observed),
                    ok});
  }

  /// Records a precondition check; a violated precondition makes the whole
  /// report an ERROR regardless of the remaining records.
  void precondition(std::string name, bool ok, std::string detail) {
    CheckRecord record{"precondition: " + std::move(name),
                       "holds", std::move(detail), ok};
    ++checks_run;
    if (!ok) {
      ++checks_failed;
      if (!first_failure) first_failure = record;
      outcome = Outcome::Error;
    }
    records.push_back(std::move(record));
  }

  bool passed() const { return outcome == Outcome::Pass; }
};

/// Wall-clock helper so every check function can stamp Report::seconds.
class ReportTimer {
 public:
  explicit ReportTimer(Report& report)
      : report_(report), start_(std::chrono::steady_clock::now()) {}
  ~ReportTimer() {
    report_.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                      start_)
            .count();
  }

 private:
  Report& report_;
  std::chrono::steady_clock::time_point start_;
};

}  // namespace lucaslab
