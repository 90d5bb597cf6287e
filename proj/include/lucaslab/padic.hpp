#pragma once

/**
 * Exact p-adic building blocks: valuations, Legendre's factorial valuation,
 * base-p digit strings and their concatenation, and digit sums.
 *
 * All arithmetic is exact (GMP integers/rationals). Valuations carry a
 * distinguished infinity so that v_p(0) is representable and compares
 * greater than every finite value.
 */

#include <gmpxx.h>

#include <compare>
#include <cstddef>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace lucaslab {

using Integer = mpz_class;
using Rational = mpq_class;

/// A validated prime modulus. Construction checks primality once so the
/// hot paths never re-test it.
class Prime {
 public:
  explicit Prime(unsigned long value) : value_(value) {
    mpz_class z(value);
    if (value < 2 || mpz_probab_prime_p(z.get_mpz_t(), 30) == 0) {
      throw std::invalid_argument("Prime: " + std::to_string(value) +
                                  " is not prime");
    }
  }

  unsigned long value() const noexcept { return value_; }

  friend bool operator==(Prime a, Prime b) noexcept {
    return a.value_ == b.value_;
  }

 private:
  unsigned long value_;
};

/// A p-adic valuation: either a finite integer or infinity (the valuation
/// of 0). Infinity compares greater than every finite value and absorbs
/// under addition.
class Valuation {
 public:
  Valuation(long v) : finite_(true), v_(v) {}  // NOLINT: implicit by design

  static Valuation infinity() {
    Valuation v(0);
    v.finite_ = false;
    return v;
  }

  bool is_finite() const noexcept { return finite_; }

  long value() const {
    if (!finite_) throw std::domain_error("Valuation: infinite");
    return v_;
  }

  friend bool operator==(const Valuation& a, const Valuation& b) noexcept {
    if (a.finite_ != b.finite_) return false;
    return !a.finite_ || a.v_ == b.v_;
  }

  friend std::strong_ordering operator<=>(const Valuation& a,
                                          const Valuation& b) noexcept {
    if (!a.finite_ && !b.finite_) return std::strong_ordering::equal;
    if (!a.finite_) return std::strong_ordering::greater;
    if (!b.finite_) return std::strong_ordering::less;
    return a.v_ <=> b.v_;
  }

  Valuation operator+(const Valuation& other) const noexcept {
    if (!finite_ || !other.finite_) return infinity();
    return Valuation(v_ + other.v_);
  }

  std::string str() const {
    return finite_ ? std::to_string(v_) : std::string("inf");
  }

  friend std::ostream& operator<<(std::ostream& os, const Valuation& v) {
    return os << v.str();
  }

 private:
  bool finite_;
  long v_;
};

/// Little-endian base-p expansion. Canonical form: the top digit is nonzero
/// unless the value is 0, which is represented by the single digit [0]
/// (so the length of 0 is 1).
struct DigitString {
  unsigned long base = 2;
  std::vector<unsigned long> digits;

  std::size_t length() const noexcept { return digits.size(); }

  Integer value() const {
    Integer acc = 0;
    for (std::size_t i = digits.size(); i-- > 0;) {
      acc = acc * static_cast<long>(base) + static_cast<long>(digits[i]);
    }
    return acc;
  }
};

inline Valuation valuation(const Integer& x, Prime p) {
  if (x == 0) return Valuation::infinity();
  Integer n = abs(x);
  long v = 0;
  Integer q, r;
  while (true) {
    mpz_tdiv_qr_ui(q.get_mpz_t(), r.get_mpz_t(), n.get_mpz_t(), p.value());
    if (r != 0) break;
    n = q;
    ++v;
  }
  return Valuation(v);
}

inline Valuation valuation(const Rational& x, Prime p) {
  if (x == 0) return Valuation::infinity();
  Valuation num = valuation(Integer(x.get_num()), p);
  Valuation den = valuation(Integer(x.get_den()), p);
  return Valuation(num.value() - den.value());
}

/// Legendre's formula: v_p(n!) = sum over l >= 1 of floor(n / p^l).
inline unsigned long factorial_valuation(unsigned long n, Prime p) {
  unsigned long total = 0;
  while (n > 0) {
    n /= p.value();
    total += n;
  }
  return total;
}

inline DigitString digits(const Integer& n, Prime p) {
  if (n < 0) throw std::invalid_argument("digits: negative argument");
  DigitString d;
  d.base = p.value();
  if (n == 0) {
    d.digits = {0};
    return d;
  }
  Integer rest = n;
  while (rest > 0) {
    d.digits.push_back(mpz_tdiv_q_ui(rest.get_mpz_t(), rest.get_mpz_t(),
                                     p.value()));
  }
  return d;
}

/// Length of the base-p expansion, with the convention that 0 has length 1.
/// (mpz_sizeinbase may overestimate by one for bases that are not powers of
/// two, so count exact divisions instead.)
inline unsigned long digit_length(const Integer& n, Prime p) {
  if (n == 0) return 1;
  Integer rest = n;
  unsigned long length = 0;
  while (rest > 0) {
    mpz_tdiv_q_ui(rest.get_mpz_t(), rest.get_mpz_t(), p.value());
    ++length;
  }
  return length;
}

/// Digit-string concatenation: the first element is the least significant
/// block, so concat({a, b}) = a + b * p^len(a).
inline Integer concat(const std::vector<Integer>& parts, Prime p) {
  if (parts.empty()) throw std::invalid_argument("concat: empty part list");
  Integer acc = 0;
  Integer scale = 1;
  for (const Integer& part : parts) {
    if (part < 0) throw std::invalid_argument("concat: negative part");
    acc += part * scale;
    Integer block = 1;
    mpz_ui_pow_ui(block.get_mpz_t(), p.value(), digit_length(part, p));
    scale *= block;
  }
  return acc;
}

inline unsigned long digit_sum(const Integer& n, Prime p) {
  DigitString d = digits(n, p);
  unsigned long s = 0;
  for (unsigned long digit : d.digits) s += digit;
  return s;
}

}  // namespace lucaslab
