#pragma once

/**
 * Exact feasibility of systems of rational linear inequalities that mix weak
 * (a.x <= b) and strict (a.x < b) constraints, by Fourier-Motzkin
 * elimination. Combining a weak with a strict bound yields a strict bound,
 * which is what makes half-open cells decidable without floating point.
 *
 * When the system is feasible a rational witness is produced by midpoint
 * back-substitution through the elimination tower.
 */

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "lucaslab/padic.hpp"

namespace lucaslab {

/// One inequality a.x <= b (weak) or a.x < b (strict).
struct LinearConstraint {
  std::vector<Rational> coeffs;
  Rational bound;
  bool strict = false;

  bool satisfied_by(std::span<const Rational> x) const {
    Rational lhs = 0;
    for (std::size_t i = 0; i < coeffs.size(); ++i) lhs += coeffs[i] * x[i];
    return strict ? lhs < bound : lhs <= bound;
  }
};

struct FeasibilityResult {
  bool feasible = false;
  std::vector<Rational> witness;  // a point in the relative interior
};

namespace detail {

// Checks a constraint whose variable coefficients are all zero.
inline bool constant_constraint_holds(const LinearConstraint& c) {
  return c.strict ? (c.bound > 0) : (c.bound >= 0);
}

inline bool has_variable(const LinearConstraint& c, std::size_t var) {
  return var < c.coeffs.size() && c.coeffs[var] != 0;
}

// Eliminates variable `var`; returns std::nullopt if a constant
// contradiction is detected on the way.
inline std::optional<std::vector<LinearConstraint>> eliminate_variable(
    const std::vector<LinearConstraint>& system, std::size_t var) {
  std::vector<const LinearConstraint*> lowers, uppers;
  std::vector<LinearConstraint> out;
  for (const LinearConstraint& c : system) {
    if (!has_variable(c, var)) {
      bool constant = true;
      for (const Rational& a : c.coeffs) {
        if (a != 0) {
          constant = false;
          break;
        }
      }
      if (constant) {
        if (!constant_constraint_holds(c)) return std::nullopt;
      } else {
        out.push_back(c);
      }
      continue;
    }
    (c.coeffs[var] > 0 ? uppers : lowers).push_back(&c);
  }
  for (const LinearConstraint* lo : lowers) {
    for (const LinearConstraint* up : uppers) {
      const Rational& a = lo->coeffs[var];  // a < 0
      const Rational& c = up->coeffs[var];  // c > 0
      LinearConstraint combined;
      combined.coeffs.assign(lo->coeffs.size(), Rational(0));
      for (std::size_t i = 0; i < combined.coeffs.size(); ++i) {
        if (i == var) continue;
        combined.coeffs[i] = c * lo->coeffs[i] - a * up->coeffs[i];
      }
      combined.bound = c * lo->bound - a * up->bound;
      combined.strict = lo->strict || up->strict;
      bool constant = true;
      for (const Rational& x : combined.coeffs) {
        if (x != 0) {
          constant = false;
          break;
        }
      }
      if (constant) {
        if (!constant_constraint_holds(combined)) return std::nullopt;
      } else {
        out.push_back(std::move(combined));
      }
    }
  }
  return out;
}

}  // namespace detail

/// Decides feasibility of the given system over `dim` variables. Every
/// variable must be bounded on both sides somewhere in the system (true for
/// the half-open cells this library builds, which always carry box
/// constraints); otherwise the midpoint step refuses with an exception.
inline FeasibilityResult solve_strict_system(
    std::vector<LinearConstraint> system, std::size_t dim) {
  std::vector<std::vector<LinearConstraint>> tower;
  tower.reserve(dim);
  tower.push_back(std::move(system));
  for (std::size_t var = dim; var-- > 1;) {
    auto next = detail::eliminate_variable(tower.back(), var);
    if (!next) return {};
    tower.push_back(std::move(*next));
  }
  // Bottom of the tower constrains x_0 alone.
  FeasibilityResult result;
  result.witness.assign(dim, Rational(0));
  for (std::size_t var = 0; var < dim; ++var) {
    const auto& stage = tower[dim - 1 - var];
    std::optional<Rational> lo, hi;
    bool lo_strict = false, hi_strict = false;
    for (const LinearConstraint& c : stage) {
      if (!detail::has_variable(c, var)) {
        // Constraints on earlier variables hold by construction; constants
        // were already validated during elimination.
        continue;
      }
      Rational rest = c.bound;
      for (std::size_t i = 0; i < var; ++i) {
        if (i < c.coeffs.size()) rest -= c.coeffs[i] * result.witness[i];
      }
      Rational ratio = rest / c.coeffs[var];
      if (c.coeffs[var] > 0) {
        if (!hi || ratio < *hi) {
          hi = ratio;
          hi_strict = c.strict;
        } else if (ratio == *hi) {
          hi_strict = hi_strict || c.strict;
        }
      } else {
        if (!lo || ratio > *lo) {
          lo = ratio;
          lo_strict = c.strict;
        } else if (ratio == *lo) {
          lo_strict = lo_strict || c.strict;
        }
      }
    }
    if (!lo || !hi) {
      throw std::logic_error(
          "solve_strict_system: variable unbounded; add box constraints");
    }
    if (*lo > *hi || (*lo == *hi && (lo_strict || hi_strict))) return {};
    result.witness[var] = (*lo == *hi) ? *lo : Rational((*lo + *hi) / 2);
  }
  result.feasible = true;
  return result;
}

}  // namespace lucaslab
