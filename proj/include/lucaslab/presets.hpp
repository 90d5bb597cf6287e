#pragma once

/**
 * Registry of classical two-variable factorial-ratio families (Apery,
 * central binomial, Franel, Domb, ...) together with the differential
 * operators that annihilate their multisum generating functions, where a
 * standard one is available. Rows without a bundled operator accept a
 * user-supplied operator file on the command line.
 */

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "lucaslab/operators.hpp"
#include "lucaslab/ratio_family.hpp"

namespace lucaslab {

struct Preset {
  std::string name;
  std::string oeis;
  std::string description;
  RatioSpec spec;
  std::optional<DifferentialOperator> op;
};

namespace detail {

inline DifferentialOperator apery3_operator() {
  // theta^3 - z(34 theta^3 + 51 theta^2 + 27 theta + 5) + z^2 (theta+1)^3
  return DifferentialOperator::create({
      IntPolynomial::from_longs({0, 0, 0, 1}),
      IntPolynomial::from_longs({-5, -27, -51, -34}),
      IntPolynomial::from_longs({1, 3, 3, 1}),
  });
}

inline DifferentialOperator apery2_operator() {
  // theta^2 - z(11 theta^2 + 11 theta + 3) - z^2 (theta+1)^2
  return DifferentialOperator::create({
      IntPolynomial::from_longs({0, 0, 1}),
      IntPolynomial::from_longs({-3, -11, -11}),
      IntPolynomial::from_longs({-1, -2, -1}),
  });
}

inline DifferentialOperator central_binomial_operator() {
  // theta - z(4 theta + 2)
  return DifferentialOperator::create({
      IntPolynomial::from_longs({0, 1}),
      IntPolynomial::from_longs({-2, -4}),
  });
}

inline DifferentialOperator quartic_sum_operator() {
  // theta^3 - 2z(2 theta + 1)(3 theta^2 + 3 theta + 1)
  //         - 4z^2 (theta + 1)(4 theta + 5)(4 theta + 3)
  return DifferentialOperator::create({
      IntPolynomial::from_longs({0, 0, 0, 1}),
      IntPolynomial::from_longs({-2, -10, -18, -12}),
      IntPolynomial::from_longs({-60, -188, -192, -64}),
  });
}

}  // namespace detail

/// Abelian-square counts over `letters` letters as a multisum family in
/// dimension `letters`: Q(n) is the squared multinomial coefficient.
inline Preset abelian_squares(int letters) {
  if (letters < 2) {
    throw std::invalid_argument("abelian_squares: need at least 2 letters");
  }
  std::vector<std::vector<long>> e(2, std::vector<long>(letters, 1));
  std::vector<std::vector<long>> f;
  for (int k = 0; k < letters; ++k) {
    std::vector<long> unit(letters, 0);
    unit[k] = 1;
    f.push_back(unit);
    f.push_back(unit);
  }
  std::string oeis = letters == 2   ? "A000984"
                     : letters == 3 ? "A002893"
                     : letters == 4 ? "A002895"
                                    : "";
  return Preset{
      "abelian_squares(" + std::to_string(letters) + ")", oeis,
      "abelian squares of length 2n over " + std::to_string(letters) +
          " letters",
      RatioSpec::create(letters, std::move(e), std::move(f)), std::nullopt};
}

inline const std::vector<Preset>& presets() {
  static const std::vector<Preset> table = {
      {"apery3", "A005259", "Apery numbers for zeta(3)",
       RatioSpec::create(
           2, {{2, 1}, {2, 1}},
           {{1, 0}, {1, 0}, {1, 0}, {1, 0}, {0, 1}, {0, 1}}),
       detail::apery3_operator()},
      {"apery2", "A005258", "Apery numbers for zeta(2)",
       RatioSpec::create(2, {{2, 1}, {1, 1}},
                         {{1, 0}, {1, 0}, {1, 0}, {0, 1}, {0, 1}}),
       detail::apery2_operator()},
      {"central_binomial", "A000984", "central binomial coefficients",
       RatioSpec::create(2, {{1, 1}, {1, 1}},
                         {{1, 0}, {1, 0}, {0, 1}, {0, 1}}),
       detail::central_binomial_operator()},
      {"franel", "A000172", "Franel numbers (sums of cubes of binomials)",
       RatioSpec::create(2, {{1, 1}, {1, 1}, {1, 1}},
                         {{1, 0}, {1, 0}, {1, 0}, {0, 1}, {0, 1}, {0, 1}}),
       std::nullopt},
      {"franel4", "A005260", "sums of fourth powers of binomials",
       RatioSpec::create(
           2, {{1, 1}, {1, 1}, {1, 1}, {1, 1}},
           {{1, 0}, {1, 0}, {1, 0}, {1, 0}, {0, 1}, {0, 1}, {0, 1}, {0, 1}}),
       detail::quartic_sum_operator()},
      {"a081085", "A081085", "binomial convolution of central binomials",
       RatioSpec::create(2, {{1, 1}, {2, 0}, {0, 2}},
                         {{1, 0}, {1, 0}, {1, 0}, {0, 1}, {0, 1}, {0, 1}}),
       std::nullopt},
      {"abelian3", "A002893", "abelian squares over 3 letters",
       RatioSpec::create(2, {{1, 1}, {1, 1}, {2, 0}},
                         {{1, 0}, {1, 0}, {1, 0}, {1, 0}, {0, 1}, {0, 1}}),
       std::nullopt},
      {"domb", "A002895", "Domb numbers (abelian squares over 4 letters)",
       RatioSpec::create(
           2, {{1, 1}, {1, 1}, {2, 0}, {0, 2}},
           {{1, 0}, {1, 0}, {1, 0}, {1, 0}, {0, 1}, {0, 1}, {0, 1}, {0, 1}}),
       std::nullopt},
      {"a036917", "A036917", "products of squared central binomials",
       RatioSpec::create(
           2, {{2, 0}, {2, 0}, {0, 2}, {0, 2}},
           {{1, 0}, {1, 0}, {1, 0}, {1, 0}, {0, 1}, {0, 1}, {0, 1}, {0, 1}}),
       std::nullopt},
  };
  return table;
}

inline const Preset& preset(const std::string& name) {
  for (const Preset& row : presets()) {
    if (row.name == name) return row;
  }
  throw std::invalid_argument("preset: unknown name '" + name +
                              "' (see `presets` for the registry)");
}

}  // namespace lucaslab
