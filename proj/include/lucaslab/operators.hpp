#pragma once

/**
 * Differential operators L = sum of z^k P_k(theta) with integer polynomial
 * coefficients, acting on generating functions through the induced
 * recurrence sum_k P_k(n-k) A(n-k) = 0 (A vanishes at negative indices).
 *
 * Provides exact annihilation checking, forward extension of a sequence
 * from seed values, the structural type I / type II classification at a
 * prime, and the recurrence generator for moment sequences of planar
 * random walks (equivalently, abelian-square counts), built by exact
 * rational interpolation.
 */

#include <cstddef>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "lucaslab/padic.hpp"
#include "lucaslab/report.hpp"
#include "lucaslab/sequence.hpp"

namespace lucaslab {

/// Dense integer polynomial, coefficients in ascending degree. The zero
/// polynomial has an empty coefficient list and degree() == -1 (the
/// "minus infinity" sentinel).
class IntPolynomial {
 public:
  IntPolynomial() = default;

  explicit IntPolynomial(std::vector<Integer> coeffs)
      : coeffs_(std::move(coeffs)) {
    normalize();
  }

  static IntPolynomial from_longs(std::initializer_list<long> coeffs) {
    std::vector<Integer> c;
    for (long x : coeffs) c.emplace_back(x);
    return IntPolynomial(std::move(c));
  }

  static IntPolynomial constant(Integer c) {
    return IntPolynomial(std::vector<Integer>{std::move(c)});
  }

  /// X + shift
  static IntPolynomial linear(Integer shift) {
    return IntPolynomial(std::vector<Integer>{std::move(shift), Integer(1)});
  }

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }

  const Integer& coeff(std::size_t i) const {
    static const Integer zero(0);
    return i < coeffs_.size() ? coeffs_[i] : zero;
  }

  const std::vector<Integer>& coefficients() const { return coeffs_; }

  Integer eval(const Integer& x) const {
    Integer acc = 0;
    for (std::size_t i = coeffs_.size(); i-- > 0;) {
      acc = acc * x + coeffs_[i];
    }
    return acc;
  }

  IntPolynomial operator+(const IntPolynomial& other) const {
    std::vector<Integer> c(std::max(coeffs_.size(), other.coeffs_.size()),
                           Integer(0));
    for (std::size_t i = 0; i < coeffs_.size(); ++i) c[i] += coeffs_[i];
    for (std::size_t i = 0; i < other.coeffs_.size(); ++i) {
      c[i] += other.coeffs_[i];
    }
    return IntPolynomial(std::move(c));
  }

  IntPolynomial operator-() const {
    std::vector<Integer> c = coeffs_;
    for (Integer& x : c) x = -x;
    return IntPolynomial(std::move(c));
  }

  IntPolynomial operator-(const IntPolynomial& other) const {
    return *this + (-other);
  }

  IntPolynomial operator*(const IntPolynomial& other) const {
    if (is_zero() || other.is_zero()) return IntPolynomial();
    std::vector<Integer> c(coeffs_.size() + other.coeffs_.size() - 1,
                           Integer(0));
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
      for (std::size_t j = 0; j < other.coeffs_.size(); ++j) {
        c[i + j] += coeffs_[i] * other.coeffs_[j];
      }
    }
    return IntPolynomial(std::move(c));
  }

  IntPolynomial operator*(const Integer& s) const {
    if (s == 0) return IntPolynomial();
    std::vector<Integer> c = coeffs_;
    for (Integer& x : c) x *= s;
    return IntPolynomial(std::move(c));
  }

  /// Quotient and remainder by a monic divisor; both stay integral.
  std::pair<IntPolynomial, IntPolynomial> divide_by_monic(
      const IntPolynomial& divisor) const {
    if (divisor.is_zero() || divisor.coeffs_.back() != 1) {
      throw std::invalid_argument("divide_by_monic: divisor must be monic");
    }
    std::vector<Integer> rem = coeffs_;
    const int dd = divisor.degree();
    std::vector<Integer> quot;
    if (degree() >= dd) quot.assign(degree() - dd + 1, Integer(0));
    for (int i = degree(); i >= dd; --i) {
      Integer factor = rem[i];
      if (factor == 0) continue;
      quot[i - dd] = factor;
      for (int j = 0; j <= dd; ++j) {
        rem[i - dd + j] -= factor * divisor.coeffs_[j];
      }
    }
    if (dd >= 0 && static_cast<int>(rem.size()) > dd) {
      rem.resize(dd > 0 ? dd : 0);
    }
    return {IntPolynomial(std::move(quot)), IntPolynomial(std::move(rem))};
  }

  bool divisible_by_monic(const IntPolynomial& divisor) const {
    return divide_by_monic(divisor).second.is_zero();
  }

  /// P(X + shift)
  IntPolynomial shift_argument(const Integer& shift) const {
    IntPolynomial result;
    IntPolynomial x_plus = linear(shift);
    for (std::size_t i = coeffs_.size(); i-- > 0;) {
      result = result * x_plus + constant(coeffs_[i]);
    }
    return result;
  }

  friend bool operator==(const IntPolynomial& a, const IntPolynomial& b) {
    return a.coeffs_ == b.coeffs_;
  }

  std::string str() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = coeffs_.size(); i-- > 0;) {
      if (coeffs_[i] == 0) continue;
      if (!first) os << " + ";
      os << coeffs_[i];
      if (i >= 1) os << "*X";
      if (i >= 2) os << "^" << i;
      first = false;
    }
    return os.str();
  }

 private:
  void normalize() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
  }

  std::vector<Integer> coeffs_;
};

/// L = sum_{k=0}^{q} z^k P_k(theta); the top coefficient is nonzero.
struct DifferentialOperator {
  std::vector<IntPolynomial> P;

  static DifferentialOperator create(std::vector<IntPolynomial> coeffs) {
    while (!coeffs.empty() && coeffs.back().is_zero()) coeffs.pop_back();
    if (coeffs.empty()) {
      throw std::invalid_argument("DifferentialOperator: zero operator");
    }
    return DifferentialOperator{std::move(coeffs)};
  }

  int order() const { return static_cast<int>(P.size()) - 1; }

  const IntPolynomial& coefficient(int k) const {
    static const IntPolynomial zero;
    return (k >= 0 && k < static_cast<int>(P.size())) ? P[k] : zero;
  }

  std::string str() const {
    std::ostringstream os;
    for (std::size_t k = 0; k < P.size(); ++k) {
      if (k) os << " + z^" << k << "*";
      os << "[" << P[k].str() << "]";
    }
    return os.str();
  }
};

/// Value of sum_k P_k(n-k) A(n-k); zero for all n iff L annihilates f_A.
inline Integer recurrence_residual(const DifferentialOperator& op,
                                   const SequenceHandle& seq, long n) {
  Integer acc = 0;
  for (int k = 0; k <= op.order(); ++k) {
    if (n - k < 0) continue;
    if (op.P[k].is_zero()) continue;
    acc += op.P[k].eval(Integer(n - k)) * seq.at(n - k);
  }
  return acc;
}

inline Report check_annihilation(const DifferentialOperator& op,
                                 const SequenceHandle& seq, long n_bound) {
  Report report;
  ReportTimer timer(report);
  report.command = "check_annihilation";
  report.param("operator", op.str());
  report.param("sequence", seq.provenance());
  report.param("n_bound", std::to_string(n_bound));
  seq.ensure(n_bound);
  for (long n = 0; n <= n_bound; ++n) {
    Integer residual = recurrence_residual(op, seq, n);
    report.add("n=" + std::to_string(n), "residual = 0",
               residual == 0 ? "0" : residual.get_str(), residual == 0);
  }
  return report;
}

/// Raised when the recurrence cannot be solved forward over the integers.
class ExtendError : public std::runtime_error {
 public:
  enum class Kind { ZeroLeadingValue, NonIntegralStep };

  ExtendError(Kind kind, long index)
      : std::runtime_error(
            std::string(kind == Kind::ZeroLeadingValue
                            ? "extend: P_0(n) = 0 at n = "
                            : "extend: non-integral step at n = ") +
            std::to_string(index)),
        kind(kind),
        index(index) {}

  Kind kind;
  long index;
};

/// The unique integer sequence extending `seeds` under the recurrence of
/// `op`, eagerly filled to n_bound and lazily extendable beyond.
inline SequenceHandle extend(const DifferentialOperator& op,
                             std::vector<Integer> seeds, long n_bound) {
  SequenceHandle handle = SequenceHandle::from_stepper(
      [op, seeds](long n, const std::vector<Integer>& prefix) -> Integer {
        if (n < static_cast<long>(seeds.size())) {
          return seeds[static_cast<std::size_t>(n)];
        }
        Integer lead = op.P[0].eval(Integer(n));
        if (lead == 0) {
          throw ExtendError(ExtendError::Kind::ZeroLeadingValue, n);
        }
        Integer rhs = 0;
        for (int k = 1; k <= op.order(); ++k) {
          if (n - k < 0 || op.P[k].is_zero()) continue;
          rhs -= op.P[k].eval(Integer(n - k)) *
                 prefix[static_cast<std::size_t>(n - k)];
        }
        if (!mpz_divisible_p(rhs.get_mpz_t(), lead.get_mpz_t())) {
          throw ExtendError(ExtendError::Kind::NonIntegralStep, n);
        }
        Integer out;
        mpz_divexact(out.get_mpz_t(), rhs.get_mpz_t(), lead.get_mpz_t());
        return out;
      },
      "recurrence(" + op.str() + ")");
  handle.ensure(n_bound);
  return handle;
}

/// Structural classification at a prime. When both shapes hold the verdict
/// is TypeI with also_type_two set.
struct Classification {
  enum class Kind { TypeI, TypeII, Neither };

  Kind kind = Kind::Neither;
  bool also_type_two = false;
  std::vector<std::string> failed_conditions;

  std::string str() const {
    switch (kind) {
      case Kind::TypeI:
        return also_type_two ? "TypeI (type II also holds)" : "TypeI";
      case Kind::TypeII:
        return "TypeII";
      case Kind::Neither: {
        std::string out = "Neither(";
        for (std::size_t i = 0; i < failed_conditions.size(); ++i) {
          if (i) out += "; ";
          out += failed_conditions[i];
        }
        return out + ")";
      }
    }
    return "";
  }
};

inline Classification classify(const DifferentialOperator& op, Prime p) {
  Classification result;

  // P_0 maps units to units iff P_0(v) is nonzero mod p for v = 1..p-1
  // (polynomial values mod p depend only on the argument mod p).
  bool p0_ok = true;
  std::string p0_failure;
  for (unsigned long v = 1; v < p.value(); ++v) {
    Integer value = op.P[0].eval(Integer(v));
    if (mpz_fdiv_ui(value.get_mpz_t(), p.value()) == 0) {
      p0_ok = false;
      p0_failure = "P_0(" + std::to_string(v) + ") = 0 mod " +
                   std::to_string(p.value());
      break;
    }
  }

  bool divisibility_ok = true;
  std::string divisibility_failure;
  IntPolynomial divisor = IntPolynomial::constant(Integer(1));
  for (int k = 2; k <= op.order(); ++k) {
    IntPolynomial square =
        IntPolynomial::linear(Integer(k - 1)) *
        IntPolynomial::linear(Integer(k - 1));
    divisor = divisor * square;  // prod_{i=1}^{k-1} (X+i)^2
    if (!op.coefficient(k).is_zero() &&
        !op.coefficient(k).divisible_by_monic(divisor)) {
      divisibility_ok = false;
      divisibility_failure =
          "P_" + std::to_string(k) + " not divisible by prod (X+i)^2";
      break;
    }
  }

  bool order_ok = op.order() <= 2;
  bool p2_root = op.coefficient(2).eval(Integer(-1)) == 0;

  const bool type_one = p0_ok && divisibility_ok;
  const bool type_two = p0_ok && order_ok && p2_root;
  if (type_one) {
    result.kind = Classification::Kind::TypeI;
    result.also_type_two = type_two;
  } else if (type_two) {
    result.kind = Classification::Kind::TypeII;
  } else {
    result.kind = Classification::Kind::Neither;
    if (!p0_ok) result.failed_conditions.push_back(p0_failure);
    if (!divisibility_ok) {
      result.failed_conditions.push_back(divisibility_failure +
                                         " (type I)");
    }
    if (!order_ok) {
      result.failed_conditions.push_back(
          "order " + std::to_string(op.order()) + " exceeds 2 (type II)");
    }
    if (order_ok && !p2_root) {
      result.failed_conditions.push_back("P_2(-1) != 0 (type II)");
    }
  }
  return result;
}

namespace detail {

/// Newton-form interpolation through (points[i], values[i]); returns the
/// monomial coefficients. Exact over the rationals.
inline std::vector<Rational> interpolate(const std::vector<long>& points,
                                         const std::vector<Rational>& values) {
  const std::size_t m = points.size();
  std::vector<Rational> dd = values;  // divided differences, in place
  for (std::size_t level = 1; level < m; ++level) {
    for (std::size_t i = m - 1; i >= level; --i) {
      dd[i] = (dd[i] - dd[i - 1]) /
              Rational(points[i] - points[i - level]);
    }
  }
  std::vector<Rational> coeffs(m, Rational(0));
  std::vector<Rational> basis(m, Rational(0));  // prod (X - points[t])
  basis[0] = 1;
  std::size_t basis_len = 1;
  for (std::size_t t = 0; t < m; ++t) {
    for (std::size_t i = 0; i < basis_len; ++i) coeffs[i] += dd[t] * basis[i];
    if (t + 1 < m) {
      // basis *= (X - points[t])
      for (std::size_t i = basis_len; i-- > 0;) {
        basis[i + 1] += basis[i];
        basis[i] *= Rational(-points[t]);
      }
      ++basis_len;
    }
  }
  return coeffs;
}

/// Enumerates the admissible exponent tuples (alpha_1..alpha_i) with
/// 1 <= alpha_k <= letters and alpha_{k+1} <= alpha_k - 2.
template <typename Fn>
void for_each_admissible_tuple(int letters, int length, Fn&& fn) {
  std::vector<int> alpha(length);
  auto rec = [&](auto&& self, int k, int limit) -> void {
    if (k == length) {
      fn(std::as_const(alpha));
      return;
    }
    for (int a = 1; a <= limit; ++a) {
      alpha[k] = a;
      self(self, k + 1, a - 2);
    }
  };
  rec(rec, 0, letters);
}

}  // namespace detail

/// Recurrence operator for the number of abelian squares of length 2n over
/// an alphabet with `letters` letters (equivalently, the even moments of a
/// planar random walk with `letters` unit steps). The order is
/// ceil(letters/2), the leading coefficient is X^(letters-1), and the
/// remaining coefficients are recovered by exact rational interpolation of
/// the defining sum, then verified to close at integer coefficients of
/// degree <= letters-1.
inline DifferentialOperator walk_recurrence(int letters) {
  if (letters < 2 || letters > 8) {
    throw std::invalid_argument(
        "walk_recurrence: letters must lie in 2..8 (cost cap)");
  }
  const int j = letters;
  const int order = (j + 1) / 2;
  const int degree_bound = j - 1;

  std::vector<IntPolynomial> P(order + 1);
  {
    std::vector<Integer> lead(static_cast<std::size_t>(j), Integer(0));
    lead.back() = 1;
    P[0] = IntPolynomial(std::move(lead));  // X^(j-1)
  }

  for (int i = 1; i <= order; ++i) {
    // Sample the coefficient of C_j(n-i) at integer points n > i where the
    // defining rational expression has no poles.
    const int samples = j + 3;
    std::vector<long> points;
    std::vector<Rational> values;
    for (int s = 0; s < samples; ++s) {
      const long n = i + 1 + s;
      Rational total = 0;
      detail::for_each_admissible_tuple(
          j, i, [&](const std::vector<int>& alpha) {
            Rational term = 1;
            for (int k = 1; k <= i; ++k) {
              const int a = alpha[static_cast<std::size_t>(k - 1)];
              term *= Rational(-a) * Rational(j + 1 - a);
              Rational base(n - k, n - k + 1);
              for (int t = 1; t < a; ++t) term *= base;
            }
            total += term;
          });
      Integer n_power = 1;
      for (int t = 0; t < j - 1; ++t) n_power *= n;
      points.push_back(n);
      values.push_back(Rational(n_power) * total);
    }
    std::vector<Rational> coeffs = detail::interpolate(points, values);
    std::vector<Integer> integral(static_cast<std::size_t>(degree_bound) + 1,
                                  Integer(0));
    for (std::size_t t = 0; t < coeffs.size(); ++t) {
      if (t <= static_cast<std::size_t>(degree_bound)) {
        if (coeffs[t].get_den() != 1) {
          throw std::logic_error(
              "walk_recurrence: non-integer interpolated coefficient");
        }
        integral[t] = coeffs[t].get_num();
      } else if (coeffs[t] != 0) {
        throw std::logic_error(
            "walk_recurrence: interpolation exceeds degree bound");
      }
    }
    // The sampled polynomial is the coefficient of C_j(n-i) as a function
    // of n; rewrite it in X = n - i to match the operator convention.
    P[i] = IntPolynomial(std::move(integral)).shift_argument(Integer(i));
  }
  return DifferentialOperator::create(std::move(P));
}

}  // namespace lucaslab
