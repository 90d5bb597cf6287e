#pragma once

// Independent oracles for the test suites. These deliberately avoid the
// library code paths they are used to check: factorials by direct product,
// binomials through GMP's own routine, hulls by monotone chain, and the
// abelian-square counts through an exponential-generating-series
// convolution.

#include <algorithm>
#include <array>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "lucaslab/padic.hpp"
#include "lucaslab/ratio_family.hpp"

namespace oracles {

using lucaslab::Integer;
using lucaslab::Prime;
using lucaslab::RatioSpec;
using lucaslab::Rational;

inline Integer factorial(unsigned long n) {
  Integer out = 1;
  for (unsigned long i = 2; i <= n; ++i) out *= i;
  return out;
}

inline long valuation_by_division(Integer x, unsigned long p) {
  if (x == 0) throw std::invalid_argument("oracle valuation of 0");
  long v = 0;
  x = abs(x);
  while (mpz_divisible_ui_p(x.get_mpz_t(), p)) {
    mpz_divexact_ui(x.get_mpz_t(), x.get_mpz_t(), p);
    ++v;
  }
  return v;
}

inline Integer binomial(unsigned long n, unsigned long k) {
  Integer out;
  mpz_bin_uiui(out.get_mpz_t(), n, k);
  return out;
}

inline Rational q_value_direct(const RatioSpec& spec,
                               const std::vector<long>& n) {
  Integer num = 1, den = 1;
  for (const auto& w : spec.e) {
    long dot = 0;
    for (std::size_t i = 0; i < w.size(); ++i) dot += w[i] * n[i];
    num *= factorial(static_cast<unsigned long>(dot));
  }
  for (const auto& w : spec.f) {
    long dot = 0;
    for (std::size_t i = 0; i < w.size(); ++i) dot += w[i] * n[i];
    den *= factorial(static_cast<unsigned long>(dot));
  }
  Rational q(num, den);
  q.canonicalize();
  return q;
}

// Closed binomial forms for the preset rows, summed directly.
inline Integer closed_form(const std::string& name, unsigned long m) {
  Integer total = 0;
  for (unsigned long k = 0; k <= m; ++k) {
    Integer term;
    if (name == "apery3") {
      term = binomial(m, k) * binomial(m + k, k);
      term *= term;
    } else if (name == "apery2") {
      term = binomial(m, k) * binomial(m, k) * binomial(m + k, k);
    } else if (name == "central_binomial") {
      term = binomial(m, k) * binomial(m, k);
    } else if (name == "franel") {
      term = binomial(m, k) * binomial(m, k) * binomial(m, k);
    } else if (name == "franel4") {
      term = binomial(m, k) * binomial(m, k);
      term *= term;
    } else if (name == "a081085") {
      term = binomial(m, k) * binomial(2 * k, k) *
             binomial(2 * (m - k), m - k);
    } else if (name == "abelian3") {
      term = binomial(m, k) * binomial(m, k) * binomial(2 * k, k);
    } else if (name == "domb") {
      term = binomial(m, k) * binomial(m, k) * binomial(2 * k, k) *
             binomial(2 * (m - k), m - k);
    } else if (name == "a036917") {
      term = binomial(2 * k, k) * binomial(2 * (m - k), m - k);
      term *= term;
    } else {
      throw std::invalid_argument("closed_form: unknown preset " + name);
    }
    total += term;
  }
  return total;
}

/// Abelian-square counts over `letters` letters for n = 0..n_max, via the
/// series identity C_j(n) = n!^2 [x^n] (sum_k x^k / k!^2)^j.
inline std::vector<Integer> abelian_square_counts(int letters, long n_max) {
  std::vector<Rational> base(n_max + 1);
  for (long k = 0; k <= n_max; ++k) {
    Rational term(Integer(1), factorial(k) * factorial(k));
    term.canonicalize();
    base[k] = term;
  }
  std::vector<Rational> power = base;
  for (int rep = 2; rep <= letters; ++rep) {
    std::vector<Rational> next(n_max + 1, Rational(0));
    for (long a = 0; a <= n_max; ++a) {
      if (power[a] == 0) continue;
      for (long b = 0; a + b <= n_max; ++b) {
        next[a + b] += power[a] * base[b];
      }
    }
    power = std::move(next);
  }
  std::vector<Integer> counts(n_max + 1);
  for (long n = 0; n <= n_max; ++n) {
    Rational value = power[n] * Rational(factorial(n) * factorial(n));
    value.canonicalize();
    if (value.get_den() != 1) {
      throw std::logic_error("abelian_square_counts: non-integer value");
    }
    counts[n] = value.get_num();
  }
  return counts;
}

// --- 2-d convex hull oracle (monotone chain + strict containment) ---

using Point2 = std::array<long, 2>;

inline long cross(const Point2& o, const Point2& a, const Point2& b) {
  return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

inline std::vector<Point2> hull_monotone_chain(std::vector<Point2> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  const std::size_t n = pts.size();
  if (n < 3) return pts;
  std::vector<Point2> hull(2 * n);
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  for (std::size_t i = n - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);  // counterclockwise, no repeated first point
  return hull;
}

/// Lattice points strictly inside the hull of `pts`, sorted; empty when the
/// hull is degenerate.
inline std::vector<std::vector<long>> interior_points_2d(
    const std::vector<Point2>& pts) {
  std::vector<Point2> hull = hull_monotone_chain(pts);
  std::vector<std::vector<long>> interior;
  if (hull.size() < 3) return interior;
  long lox = pts[0][0], hix = pts[0][0], loy = pts[0][1], hiy = pts[0][1];
  for (const Point2& p : pts) {
    lox = std::min(lox, p[0]);
    hix = std::max(hix, p[0]);
    loy = std::min(loy, p[1]);
    hiy = std::max(hiy, p[1]);
  }
  for (long x = lox; x <= hix; ++x) {
    for (long y = loy; y <= hiy; ++y) {
      bool inside = true;
      for (std::size_t i = 0; i < hull.size() && inside; ++i) {
        const Point2& a = hull[i];
        const Point2& b = hull[(i + 1) % hull.size()];
        inside = cross(a, b, Point2{x, y}) > 0;
      }
      if (inside) interior.push_back({x, y});
    }
  }
  std::sort(interior.begin(), interior.end());
  return interior;
}

}  // namespace oracles
