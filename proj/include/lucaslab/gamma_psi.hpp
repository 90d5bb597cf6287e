#pragma once

/**
 * The p-adic Gamma function on natural arguments, the ratio
 * Gamma_p((m+n)p) / (Gamma_p(mp) Gamma_p(np)) together with its
 * normalized deviation g = (ratio - 1)/p, and the signed elementary
 * symmetric functions Psi_{p,k,i}(m) of the reciprocals 1/(k + jp),
 * with the exact identities tying them together (Newton-Girard, and the
 * two product identities behind the Gamma ratio).
 */

#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "lucaslab/padic.hpp"
#include "lucaslab/report.hpp"

namespace lucaslab {

/// Gamma_p(n) = (-1)^n prod of lambda < n coprime to p, exactly.
inline Integer gamma_p(unsigned long n, Prime p) {
  Integer product = 1;
  for (unsigned long lambda = 1; lambda < n; ++lambda) {
    if (lambda % p.value() != 0) product *= lambda;
  }
  return (n % 2 == 0) ? product : Integer(-product);
}

struct GammaRatio {
  Rational ratio;  // Gamma_p((m+n)p) / (Gamma_p(mp) Gamma_p(np))
  Rational g;      // (ratio - 1) / p
};

inline GammaRatio gamma_ratio(unsigned long m, unsigned long n, Prime p) {
  Rational ratio(gamma_p((m + n) * p.value(), p),
                 gamma_p(m * p.value(), p) * gamma_p(n * p.value(), p));
  ratio.canonicalize();
  Rational g = (ratio - 1) / Rational(p.value());
  g.canonicalize();
  return {ratio, g};
}

namespace detail {

/// Coefficients of prod_{j=0}^{m-1} (1 - X/(k+jp)) up to degree i_max;
/// coefficient i is Psi_{p,k,i}(m).
inline std::vector<Rational> psi_coefficients(Prime p, unsigned long k,
                                              unsigned long i_max,
                                              unsigned long m) {
  if (k < 1 || k > p.value() - 1) {
    throw std::invalid_argument("psi: k must lie in 1..p-1");
  }
  std::vector<Rational> coeffs{Rational(1)};
  for (unsigned long j = 0; j < m; ++j) {
    Rational root_inverse(-1, static_cast<long>(k + j * p.value()));
    root_inverse.canonicalize();
    std::size_t new_size =
        std::min<std::size_t>(coeffs.size() + 1, i_max + 1);
    std::vector<Rational> next(new_size, Rational(0));
    for (std::size_t t = 0; t < coeffs.size(); ++t) {
      if (t < new_size) next[t] += coeffs[t];
      if (t + 1 < new_size) next[t + 1] += coeffs[t] * root_inverse;
    }
    coeffs = std::move(next);
  }
  coeffs.resize(i_max + 1, Rational(0));
  return coeffs;
}

}  // namespace detail

/// Psi_{p,k,i}(m) = (-1)^i sigma_{m,i}(1/k, 1/(k+p), ..., 1/(k+(m-1)p)).
/// Zero for i > m; Psi_0 = 1.
inline Rational psi(Prime p, unsigned long k, unsigned long i,
                    unsigned long m) {
  return detail::psi_coefficients(p, k, i, m)[i];
}

/// Newton-Girard: i Psi_i(m) = - sum_{t=1}^{i} Psi_{i-t}(m) L_t, where L_t
/// is the t-th power sum of the same reciprocals. Exact, for m >= i >= 1.
inline Report check_newton_girard(Prime p, unsigned long k, unsigned long i,
                                  unsigned long m) {
  if (i < 1 || m < i) {
    throw std::invalid_argument("check_newton_girard: need m >= i >= 1");
  }
  Report report;
  ReportTimer timer(report);
  report.command = "check_newton_girard";
  report.param("p", std::to_string(p.value()));
  report.param("k", std::to_string(k));
  report.param("i", std::to_string(i));
  report.param("m", std::to_string(m));

  std::vector<Rational> psis = detail::psi_coefficients(p, k, i, m);
  std::vector<Rational> power_sums(i + 1, Rational(0));
  for (unsigned long t = 1; t <= i; ++t) {
    Rational sum = 0;
    for (unsigned long j = 0; j < m; ++j) {
      Rational term(1, static_cast<long>(k + j * p.value()));
      term.canonicalize();
      Rational power = 1;
      for (unsigned long s = 0; s < t; ++s) power *= term;
      sum += power;
    }
    power_sums[t] = sum;
  }
  Rational lhs = Rational(static_cast<long>(i)) * psis[i];
  Rational rhs = 0;
  for (unsigned long t = 1; t <= i; ++t) {
    rhs -= psis[i - t] * power_sums[t];
  }
  report.add("i*Psi_i(m) vs -sum Psi_{i-t} L_t",
             "exact rational equality",
             lhs == rhs ? "equal (" + lhs.get_str() + ")"
                        : lhs.get_str() + " != " + rhs.get_str(),
             lhs == rhs);
  return report;
}

/// The two product identities behind the Gamma ratio, as exact rational
/// equalities:
///   Gamma_p((m+n)p) / (Gamma_p(mp) Gamma_p(np))
///     = prod over lambda <= mp coprime to p of (1 + np/lambda)
///     = prod_{k=1}^{p-1} (1 + sum_{i>=1} (-1)^i n^i p^i Psi_{p,k,i}(m)).
inline Report check_product_identities(Prime p, unsigned long n,
                                       unsigned long m) {
  Report report;
  ReportTimer timer(report);
  report.command = "check_product_identities";
  report.param("p", std::to_string(p.value()));
  report.param("n", std::to_string(n));
  report.param("m", std::to_string(m));

  GammaRatio ratio = gamma_ratio(m, n, p);

  Rational lambda_product = 1;
  for (unsigned long lambda = 1; lambda <= m * p.value(); ++lambda) {
    if (lambda % p.value() == 0) continue;
    Rational factor(static_cast<long>(lambda + n * p.value()),
                    static_cast<long>(lambda));
    factor.canonicalize();
    lambda_product *= factor;
  }

  Rational psi_product = 1;
  for (unsigned long k = 1; k < p.value(); ++k) {
    std::vector<Rational> psis = detail::psi_coefficients(p, k, m, m);
    Rational factor = 1;
    Rational np_power = 1;
    for (unsigned long i = 1; i <= m; ++i) {
      np_power *= Rational(-static_cast<long>(n * p.value()));
      factor += np_power * psis[i];
    }
    psi_product *= factor;
  }

  report.add("Gamma ratio vs product over lambda", "exact equality",
             ratio.ratio == lambda_product
                 ? "equal (" + ratio.ratio.get_str() + ")"
                 : ratio.ratio.get_str() + " != " + lambda_product.get_str(),
             ratio.ratio == lambda_product);
  report.add("product over lambda vs Psi product", "exact equality",
             lambda_product == psi_product
                 ? "equal (" + lambda_product.get_str() + ")"
                 : lambda_product.get_str() + " != " + psi_product.get_str(),
             lambda_product == psi_product);
  return report;
}

/// Gamma-ratio congruence and p-integrality of the deviation g, the finite
/// testable core of the ratio identity.
inline Report check_gamma_ratio(Prime p, unsigned long max_m,
                                unsigned long max_n) {
  Report report;
  ReportTimer timer(report);
  report.command = "check_gamma_ratio";
  report.param("p", std::to_string(p.value()));
  report.param("max_m", std::to_string(max_m));
  report.param("max_n", std::to_string(max_n));
  for (unsigned long m = 0; m <= max_m; ++m) {
    for (unsigned long n = 0; n <= max_n; ++n) {
      GammaRatio r = gamma_ratio(m, n, p);
      bool congruent = valuation(Rational(r.ratio - 1), p) >= Valuation(1);
      bool integral = valuation(r.g, p) >= Valuation(0);
      std::ostringstream input;
      input << "m=" << m << " n=" << n;
      report.add(input.str(), "ratio = 1 mod p and g p-integral",
                 congruent && integral
                     ? "ok"
                     : "ratio=" + r.ratio.get_str() + " g=" + r.g.get_str(),
                 congruent && integral);
    }
  }
  return report;
}

}  // namespace lucaslab
