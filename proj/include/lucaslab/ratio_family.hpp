#pragma once

/**
 * Families of factorial ratios Q_{e,f}(n) = prod (e_i.n)! / prod (f_i.n)!,
 * Landau's floor-sum function, and the effective dichotomy deciding for
 * which primes the family satisfies the Lucas congruence
 * Q(v + n p) = Q(v) Q(n) (mod p).
 *
 * The decision procedure enumerates the finitely many cells of [0,1)^d on
 * which every floor(w.x) is constant, using exact Fourier-Motzkin
 * feasibility, and inspects the constant value of Landau's function on each
 * feasible cell. Verdicts carry checkable certificates (a coordinate with
 * unequal weights, or a feasible cell with an explicit rational witness).
 */

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "lucaslab/padic.hpp"
#include "lucaslab/rational_linear.hpp"
#include "lucaslab/report.hpp"

namespace lucaslab {

namespace detail {

/// Factorials memoized per thread; indices stay at desk scale.
inline const Integer& cached_factorial(unsigned long n) {
  thread_local std::vector<Integer> cache{Integer(1)};
  while (cache.size() <= n) {
    cache.push_back(cache.back() * static_cast<unsigned long>(cache.size()));
  }
  return cache[n];
}

inline long dot(std::span<const long> w, std::span<const long> x) {
  long acc = 0;
  for (std::size_t i = 0; i < w.size(); ++i) acc += w[i] * x[i];
  return acc;
}

inline Rational dot(std::span<const long> w, std::span<const Rational> x) {
  Rational acc = 0;
  for (std::size_t i = 0; i < w.size(); ++i) acc += Rational(w[i]) * x[i];
  return acc;
}

inline Integer rational_floor(const Rational& x) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return q;
}

inline std::string join_vector(std::span<const long> v) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) os << ",";
    os << v[i];
  }
  os << ")";
  return os.str();
}

inline bool is_p_integral(const Rational& x, Prime p) {
  return valuation(x, p) >= Valuation(0);
}

/// Congruence modulo p for p-integral rationals: v_p(a - b) >= 1.
inline bool congruent_mod_p(const Rational& a, const Rational& b, Prime p) {
  return valuation(Rational(a - b), p) >= Valuation(1);
}

}  // namespace detail

/// The pair of tuples (e, f) defining a factorial-ratio family over N^d.
/// Vectors are nonnegative, nonzero, and e, f are disjoint as multisets.
struct RatioSpec {
  int dimension = 1;
  std::vector<std::vector<long>> e;
  std::vector<std::vector<long>> f;

  static RatioSpec create(int dimension, std::vector<std::vector<long>> e,
                          std::vector<std::vector<long>> f) {
    if (dimension < 1) {
      throw std::invalid_argument("RatioSpec: dimension must be >= 1");
    }
    auto validate = [&](const std::vector<std::vector<long>>& tuple,
                        const char* which) {
      for (const auto& w : tuple) {
        if (static_cast<int>(w.size()) != dimension) {
          throw std::invalid_argument(std::string("RatioSpec: ") + which +
                                      " vector of wrong dimension");
        }
        bool nonzero = false;
        for (long c : w) {
          if (c < 0) {
            throw std::invalid_argument(std::string("RatioSpec: ") + which +
                                        " vector with negative coordinate");
          }
          nonzero = nonzero || c != 0;
        }
        if (!nonzero) {
          throw std::invalid_argument(std::string("RatioSpec: ") + which +
                                      " contains the zero vector");
        }
      }
    };
    validate(e, "e");
    validate(f, "f");
    std::multiset<std::vector<long>> fs(f.begin(), f.end());
    for (const auto& w : e) {
      if (fs.count(w)) {
        throw std::invalid_argument(
            "RatioSpec: e and f must be disjoint as multisets (shared " +
            detail::join_vector(w) + ")");
      }
    }
    return RatioSpec{dimension, std::move(e), std::move(f)};
  }

  std::size_t vector_count() const { return e.size() + f.size(); }

  /// Combined view: e first, then f.
  const std::vector<long>& vector_at(std::size_t i) const {
    return i < e.size() ? e[i] : f[i - e.size()];
  }

  /// Componentwise weight sum |e| - |f|.
  std::vector<long> weight_difference() const {
    std::vector<long> diff(dimension, 0);
    for (const auto& w : e) {
      for (int k = 0; k < dimension; ++k) diff[k] += w[k];
    }
    for (const auto& w : f) {
      for (int k = 0; k < dimension; ++k) diff[k] -= w[k];
    }
    return diff;
  }

  std::string str() const {
    std::ostringstream os;
    os << "d=" << dimension << " e=[";
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (i) os << ",";
      os << detail::join_vector(e[i]);
    }
    os << "] f=[";
    for (std::size_t i = 0; i < f.size(); ++i) {
      if (i) os << ",";
      os << detail::join_vector(f[i]);
    }
    os << "]";
    return os.str();
  }

  friend bool operator==(const RatioSpec& a, const RatioSpec& b) {
    return a.dimension == b.dimension && a.e == b.e && a.f == b.f;
  }
};

/// Q_{e,f}(n), exact. Integral for every n precisely when Landau's
/// criterion holds; returned as a rational so arbitrary specs are usable.
inline Rational q_value(const RatioSpec& spec, std::span<const long> n) {
  Integer num = 1, den = 1;
  for (const auto& w : spec.e) {
    num *= detail::cached_factorial(
        static_cast<unsigned long>(detail::dot(w, n)));
  }
  for (const auto& w : spec.f) {
    den *= detail::cached_factorial(
        static_cast<unsigned long>(detail::dot(w, n)));
  }
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline Rational q_value(const RatioSpec& spec, const std::vector<long>& n) {
  return q_value(spec, std::span<const long>(n));
}

/// Landau's function: sum of floor(e_i.x) minus sum of floor(f_i.x).
inline Integer landau_delta(const RatioSpec& spec,
                            std::span<const Rational> x) {
  Integer acc = 0;
  for (const auto& w : spec.e) acc += detail::rational_floor(detail::dot(w, x));
  for (const auto& w : spec.f) acc -= detail::rational_floor(detail::dot(w, x));
  return acc;
}

inline Integer landau_delta(const RatioSpec& spec,
                            const std::vector<Rational>& x) {
  return landau_delta(spec, std::span<const Rational>(x));
}

/// Membership in D_{e,f}: some defining vector w has w.x >= 1.
/// Requires 0 <= x_i < 1.
inline bool in_D(const RatioSpec& spec, std::span<const Rational> x) {
  for (const Rational& xi : x) {
    if (xi < 0 || xi >= 1) {
      throw std::invalid_argument("in_D: point outside [0,1)^d");
    }
  }
  for (std::size_t i = 0; i < spec.vector_count(); ++i) {
    if (detail::dot(spec.vector_at(i), x) >= 1) return true;
  }
  return false;
}

inline bool in_D(const RatioSpec& spec, const std::vector<Rational>& x) {
  return in_D(spec, std::span<const Rational>(x));
}

struct Admissibility {
  bool admissible = false;
  std::optional<int> split;  // the witnessing s when admissible
};

/// r-admissibility of the tuple e: some s in {0..r} such that e contains s
/// vectors that are componentwise >= 1, and for every coordinate k it
/// contains r-s vectors with k-th entry >= d.
inline Admissibility is_r_admissible(const RatioSpec& spec, int r) {
  if (r < 1) throw std::invalid_argument("is_r_admissible: r must be >= 1");
  const int d = spec.dimension;
  int all_positive = 0;
  std::vector<int> large_per_coordinate(d, 0);
  for (const auto& w : spec.e) {
    bool positive = true;
    for (long c : w) positive = positive && c >= 1;
    if (positive) ++all_positive;
    for (int k = 0; k < d; ++k) {
      if (w[k] >= d) ++large_per_coordinate[k];
    }
  }
  for (int s = 0; s <= r; ++s) {
    if (s > 0 && all_positive < s) continue;
    bool second = true;
    if (s < r) {
      for (int k = 0; k < d && second; ++k) {
        second = large_per_coordinate[k] >= r - s;
      }
    }
    if (second) return {true, s};
  }
  return {false, std::nullopt};
}

/// One floor value per defining vector (e first, then f); identifies the
/// region {x in [0,1)^d : c_w <= w.x < c_w + 1 for all w}.
struct CellSignature {
  std::vector<long> floors;

  friend bool operator==(const CellSignature& a, const CellSignature& b) {
    return a.floors == b.floors;
  }
  friend bool operator<(const CellSignature& a, const CellSignature& b) {
    return a.floors < b.floors;
  }

  std::string str() const { return detail::join_vector(floors); }
};

struct Cell {
  CellSignature signature;
  std::vector<Rational> witness;  // exact rational interior point
  Integer delta;                  // constant value of Landau's function
  bool touches_domain = false;    // some floor >= 1, i.e. cell subset of D

  std::string str() const {
    std::ostringstream os;
    os << "cell " << signature.str() << " delta=" << delta << " witness=(";
    for (std::size_t i = 0; i < witness.size(); ++i) {
      if (i) os << ",";
      os << witness[i];
    }
    os << ")";
    return os.str();
  }
};

/// Enumeration is exponential in the number of defining vectors, so it is
/// gated by an explicit, overridable cap and refuses loudly beyond it.
struct CellEnumerationLimits {
  std::size_t max_vectors = 10;
  int max_dimension = 4;
};

/// All feasible cells, in lexicographic signature order, each with an exact
/// rational witness found by midpoint back-substitution.
inline std::vector<Cell> enumerate_cells(const RatioSpec& spec,
                                         CellEnumerationLimits limits = {}) {
  if (spec.vector_count() > limits.max_vectors ||
      spec.dimension > limits.max_dimension) {
    std::ostringstream os;
    os << "enumerate_cells: spec with " << spec.vector_count()
       << " vectors in dimension " << spec.dimension
       << " exceeds the enumeration cap (max_vectors=" << limits.max_vectors
       << ", max_dimension=" << limits.max_dimension
       << "); raise CellEnumerationLimits explicitly to proceed";
    throw std::domain_error(os.str());
  }
  const std::size_t count = spec.vector_count();
  const std::size_t d = static_cast<std::size_t>(spec.dimension);
  std::vector<long> radix(count);
  for (std::size_t i = 0; i < count; ++i) {
    long weight = 0;
    for (long c : spec.vector_at(i)) weight += c;
    radix[i] = weight;  // c_w ranges over 0 .. |w|_1 - 1
  }

  std::vector<Cell> cells;
  std::vector<long> c(count, 0);
  while (true) {
    std::vector<LinearConstraint> system;
    system.reserve(2 * d + 2 * count);
    for (std::size_t i = 0; i < d; ++i) {
      LinearConstraint lower;  // -x_i <= 0
      lower.coeffs.assign(d, Rational(0));
      lower.coeffs[i] = -1;
      lower.bound = 0;
      system.push_back(std::move(lower));
      LinearConstraint upper;  // x_i < 1
      upper.coeffs.assign(d, Rational(0));
      upper.coeffs[i] = 1;
      upper.bound = 1;
      upper.strict = true;
      system.push_back(std::move(upper));
    }
    for (std::size_t i = 0; i < count; ++i) {
      const auto& w = spec.vector_at(i);
      LinearConstraint lower;  // -w.x <= -c_w
      lower.coeffs.assign(d, Rational(0));
      for (std::size_t k = 0; k < d; ++k) lower.coeffs[k] = -w[k];
      lower.bound = -c[i];
      system.push_back(std::move(lower));
      LinearConstraint upper;  // w.x < c_w + 1
      upper.coeffs.assign(d, Rational(0));
      for (std::size_t k = 0; k < d; ++k) upper.coeffs[k] = w[k];
      upper.bound = c[i] + 1;
      upper.strict = true;
      system.push_back(std::move(upper));
    }
    FeasibilityResult feasibility = solve_strict_system(std::move(system), d);
    if (feasibility.feasible) {
      Cell cell;
      cell.signature.floors = c;
      cell.witness = std::move(feasibility.witness);
      Integer delta = 0;
      for (std::size_t i = 0; i < spec.e.size(); ++i) delta += c[i];
      for (std::size_t i = spec.e.size(); i < count; ++i) delta -= c[i];
      cell.delta = delta;
      for (long ci : c) cell.touches_domain = cell.touches_domain || ci >= 1;
      cells.push_back(std::move(cell));
    }
    // next signature, lexicographically
    std::size_t pos = count;
    while (pos > 0) {
      --pos;
      if (++c[pos] < radix[pos]) break;
      c[pos] = 0;
      if (pos == 0) return cells;
    }
    if (count == 0) return cells;  // single empty signature handled once
  }
}

/// Verdict of the Lucas-property dichotomy, with a checkable certificate.
struct CriterionVerdict {
  enum class Kind { AllPrimes, FinitelyMany, NotIntegerValued };
  enum class Reason { UnequalWeights, ZeroCell };

  Kind kind = Kind::AllPrimes;
  std::optional<Reason> reason;   // set for FinitelyMany
  std::optional<int> coordinate;  // 1-based, for UnequalWeights
  std::optional<Cell> cell;       // for ZeroCell / NotIntegerValued

  std::string str() const {
    switch (kind) {
      case Kind::AllPrimes:
        return "AllPrimes";
      case Kind::NotIntegerValued:
        return "NotIntegerValued(" + cell->str() + ")";
      case Kind::FinitelyMany:
        if (reason == Reason::UnequalWeights) {
          return "FinitelyMany(UnequalWeights(coordinate " +
                 std::to_string(*coordinate) + "))";
        }
        return "FinitelyMany(ZeroCell(" + cell->str() + "))";
    }
    return "";
  }
};

/// The effective dichotomy: AllPrimes when |e| = |f| and Landau's function
/// is >= 1 on every feasible cell inside D; otherwise FinitelyMany with a
/// certificate. Families that are not even integer-valued (some cell with
/// negative Landau value) get their own verdict since arbitrary user input
/// must be handled.
inline CriterionVerdict lucas_criterion(const RatioSpec& spec,
                                        CellEnumerationLimits limits = {}) {
  std::vector<Cell> cells = enumerate_cells(spec, limits);
  for (const Cell& cell : cells) {
    if (cell.delta < 0) {
      CriterionVerdict verdict;
      verdict.kind = CriterionVerdict::Kind::NotIntegerValued;
      verdict.cell = cell;
      return verdict;
    }
  }
  std::vector<long> diff = spec.weight_difference();
  for (int k = 0; k < spec.dimension; ++k) {
    if (diff[k] != 0) {
      CriterionVerdict verdict;
      verdict.kind = CriterionVerdict::Kind::FinitelyMany;
      verdict.reason = CriterionVerdict::Reason::UnequalWeights;
      verdict.coordinate = k + 1;
      return verdict;
    }
  }
  for (const Cell& cell : cells) {
    if (cell.touches_domain && cell.delta == 0) {
      CriterionVerdict verdict;
      verdict.kind = CriterionVerdict::Kind::FinitelyMany;
      verdict.reason = CriterionVerdict::Reason::ZeroCell;
      verdict.cell = cell;
      return verdict;
    }
  }
  return CriterionVerdict{};
}

/// v_p(Q_{e,f}(n)) as the finite Legendre-type sum of Landau values at
/// n / p^l. Exact for arbitrary specs since it computes the valuation of
/// the rational value.
inline Valuation family_valuation(const RatioSpec& spec,
                                  std::span<const long> n, Prime p) {
  std::vector<long> dots(spec.vector_count());
  long largest = 0;
  for (std::size_t i = 0; i < dots.size(); ++i) {
    dots[i] = detail::dot(spec.vector_at(i), n);
    largest = std::max(largest, dots[i]);
  }
  long total = 0;
  long power = static_cast<long>(p.value());
  while (power <= largest) {
    long delta = 0;
    for (std::size_t i = 0; i < spec.e.size(); ++i) delta += dots[i] / power;
    for (std::size_t i = spec.e.size(); i < dots.size(); ++i) {
      delta -= dots[i] / power;
    }
    total += delta;
    if (power > largest / static_cast<long>(p.value())) break;
    power *= static_cast<long>(p.value());
  }
  return Valuation(total);
}

inline Valuation family_valuation(const RatioSpec& spec,
                                  const std::vector<long>& n, Prime p) {
  return family_valuation(spec, std::span<const long>(n), p);
}

namespace detail {

/// Enumerates all n in N^d with n_1 + ... + n_d = m, lexicographically.
template <typename Fn>
void for_each_vector_of_sum(int d, long m, Fn&& fn) {
  std::vector<long> n(d, 0);
  auto rec = [&](auto&& self, int index, long remaining) -> void {
    if (index == d - 1) {
      n[index] = remaining;
      fn(std::as_const(n));
      return;
    }
    for (long t = 0; t <= remaining; ++t) {
      n[index] = t;
      self(self, index + 1, remaining - t);
    }
  };
  rec(rec, 0, m);
}

}  // namespace detail

/// Digit-vector zero set of the family: Z_p(Q) = {v : v/p in D_{e,f}},
/// valid whenever the criterion verdict is AllPrimes.
inline std::set<std::vector<long>> family_zero_set(const RatioSpec& spec,
                                                   Prime p) {
  std::set<std::vector<long>> zero;
  const long pv = static_cast<long>(p.value());
  std::vector<long> v(spec.dimension, 0);
  while (true) {
    for (std::size_t i = 0; i < spec.vector_count(); ++i) {
      if (detail::dot(spec.vector_at(i), v) >= pv) {
        zero.insert(v);
        break;
      }
    }
    int pos = spec.dimension;
    while (pos > 0) {
      --pos;
      if (++v[pos] < pv) break;
      v[pos] = 0;
      if (pos == 0) return zero;
    }
  }
}

/// Number of base-p digit vectors of n lying in Z_p(Q).
inline unsigned long family_alpha(const RatioSpec& spec,
                                  std::span<const long> n, Prime p) {
  const std::set<std::vector<long>> zero = family_zero_set(spec, p);
  const long pv = static_cast<long>(p.value());
  std::vector<long> rest(n.begin(), n.end());
  unsigned long count = 0;
  while (true) {
    std::vector<long> digit(rest.size());
    bool more = false;
    for (std::size_t i = 0; i < rest.size(); ++i) {
      digit[i] = rest[i] % pv;
      rest[i] /= pv;
      more = more || rest[i] > 0;
    }
    if (zero.count(digit)) ++count;
    if (!more) return count;
  }
}

/// Verifies the defining Lucas congruence Q(v + n p) = Q(v) Q(n) (mod p)
/// for all digit vectors v and all n with |n| <= n_bound, plus the iterated
/// digit-product congruence for all n with joint expansions of length up to
/// digit_bound.
inline Report check_lucas_family(const RatioSpec& spec, Prime p,
                                 int digit_bound, long n_bound) {
  Report report;
  ReportTimer timer(report);
  report.command = "check_lucas_family";
  report.param("spec", spec.str());
  report.param("p", std::to_string(p.value()));
  report.param("digit_bound", std::to_string(digit_bound));
  report.param("n_bound", std::to_string(n_bound));

  const long pv = static_cast<long>(p.value());
  const int d = spec.dimension;

  auto record_congruence = [&](const std::vector<long>& big,
                               const Rational& lhs, const Rational& rhs,
                               const std::string& label) {
    bool integral = detail::is_p_integral(lhs, p) &&
                    detail::is_p_integral(rhs, p);
    bool ok = integral && detail::congruent_mod_p(lhs, rhs, p);
    std::string observed =
        !integral ? "not p-integral"
                  : (ok ? "congruent" : "lhs-rhs has valuation 0");
    report.add(label + " at n=" + detail::join_vector(big),
               "Q(v+np) = Q(v)Q(n) mod " + std::to_string(pv), observed, ok);
  };

  // Single-step congruence over all digit vectors v and all |n| <= n_bound.
  std::vector<long> v(d, 0);
  while (true) {
    Rational qv = q_value(spec, v);
    for (long m = 0; m <= n_bound; ++m) {
      detail::for_each_vector_of_sum(d, m, [&](const std::vector<long>& n) {
        std::vector<long> big(d);
        for (int i = 0; i < d; ++i) big[i] = v[i] + n[i] * pv;
        record_congruence(big, q_value(spec, big),
                          Rational(qv * q_value(spec, n)), "one-step");
      });
    }
    int pos = d;
    bool done = false;
    while (pos > 0) {
      --pos;
      if (++v[pos] < pv) break;
      v[pos] = 0;
      if (pos == 0) done = true;
    }
    if (done) break;
  }

  // Iterated digit factorization Q(n) = prod Q(n_k) mod p for joint
  // expansions up to digit_bound digits.
  if (digit_bound >= 2) {
    long bound = 1;
    for (int i = 0; i < digit_bound; ++i) bound *= pv;
    std::vector<long> n(d, 0);
    while (true) {
      Rational product = 1;
      std::vector<long> rest = n;
      bool more = true;
      while (more) {
        std::vector<long> digit(d);
        more = false;
        for (int i = 0; i < d; ++i) {
          digit[i] = rest[i] % pv;
          rest[i] /= pv;
          more = more || rest[i] > 0;
        }
        product *= q_value(spec, digit);
      }
      Rational direct = q_value(spec, n);
      bool integral = detail::is_p_integral(direct, p) &&
                      detail::is_p_integral(product, p);
      bool ok = integral && detail::congruent_mod_p(direct, product, p);
      report.add("digit-product at n=" + detail::join_vector(n),
                 "Q(n) = prod Q(n_k) mod " + std::to_string(pv),
                 ok ? "congruent" : "violated", ok);
      int pos = d;
      bool done = false;
      while (pos > 0) {
        --pos;
        if (++n[pos] < bound) break;
        n[pos] = 0;
        if (pos == 0) done = true;
      }
      if (done) break;
    }
  }
  return report;
}

/// Verifies v_p(Q(n)) >= alpha_p(Q, n) for every n whose componentwise
/// expansions have joint length at most digit_len_bound. Meaningful when
/// the criterion verdict is AllPrimes, which the caller should establish.
inline Report check_family_alpha_bound(const RatioSpec& spec, Prime p,
                                       int digit_len_bound) {
  Report report;
  ReportTimer timer(report);
  report.command = "check_family_alpha_bound";
  report.param("spec", spec.str());
  report.param("p", std::to_string(p.value()));
  report.param("digit_len_bound", std::to_string(digit_len_bound));

  long bound = 1;
  for (int i = 0; i < digit_len_bound; ++i) {
    bound *= static_cast<long>(p.value());
    if (bound > 100000) {
      throw std::domain_error(
          "check_family_alpha_bound: digit range too large for desk scale");
    }
  }
  double total_points = 1;
  for (int i = 0; i < spec.dimension; ++i) total_points *= double(bound);
  if (total_points > 2e6) {
    throw std::domain_error(
        "check_family_alpha_bound: point count too large for desk scale");
  }

  std::vector<long> n(spec.dimension, 0);
  while (true) {
    unsigned long alpha = family_alpha(spec, n, p);
    Valuation v = family_valuation(spec, n, p);
    bool ok = v >= Valuation(static_cast<long>(alpha));
    report.add("n=" + detail::join_vector(n),
               "v_p >= " + std::to_string(alpha), "v_p = " + v.str(), ok);
    int pos = spec.dimension;
    bool done = false;
    while (pos > 0) {
      --pos;
      if (++n[pos] < bound) break;
      n[pos] = 0;
      if (pos == 0) done = true;
    }
    if (done) break;
  }
  return report;
}

}  // namespace lucaslab
