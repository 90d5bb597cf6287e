#pragma once

/**
 * Multisums S_{e,f}(m) = sum over |n| = m of Q_{e,f}(n), their polynomially
 * weighted variants, digit zero sets Z_p, the digit statistic alpha_p, and
 * the batch checks for the Lucas congruence and the valuation lower bound
 * v_p(S(n)) >= alpha_p(S, n) (weighted: >= alpha_p(S, n) - 1).
 *
 * Summation walks the compositions of m while updating Q_{e,f} by exact
 * rational ratios, so no large factorials are rebuilt per term.
 */

#include <cstddef>
#include <optional>
#include <set>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "lucaslab/padic.hpp"
#include "lucaslab/parallel.hpp"
#include "lucaslab/ratio_family.hpp"
#include "lucaslab/report.hpp"
#include "lucaslab/sequence.hpp"

namespace lucaslab {

/// Integer-coefficient polynomial weight g(n) = sum of c * n^beta. Such
/// weights are admissible for the weighted valuation bounds at every prime.
struct PolynomialWeight {
  struct Term {
    std::vector<unsigned> exponents;
    Integer coefficient;
  };
  std::vector<Term> terms;

  static PolynomialWeight constant(int dimension, Integer c) {
    PolynomialWeight g;
    g.terms.push_back({std::vector<unsigned>(dimension, 0), std::move(c)});
    return g;
  }

  static PolynomialWeight monomial(int dimension, int coordinate,
                                   unsigned power, Integer c = Integer(1)) {
    PolynomialWeight g;
    std::vector<unsigned> exps(dimension, 0);
    exps.at(coordinate) = power;
    g.terms.push_back({std::move(exps), std::move(c)});
    return g;
  }

  Integer eval(std::span<const long> n) const {
    Integer total = 0;
    for (const Term& term : terms) {
      if (term.exponents.size() != n.size()) {
        throw std::invalid_argument("PolynomialWeight: dimension mismatch");
      }
      Integer monomial = term.coefficient;
      for (std::size_t i = 0; i < n.size(); ++i) {
        for (unsigned k = 0; k < term.exponents[i]; ++k) monomial *= n[i];
      }
      total += monomial;
    }
    return total;
  }

  std::string str() const {
    if (terms.empty()) return "0";
    std::ostringstream os;
    for (std::size_t t = 0; t < terms.size(); ++t) {
      if (t) os << " + ";
      os << terms[t].coefficient;
      for (std::size_t i = 0; i < terms[t].exponents.size(); ++i) {
        if (terms[t].exponents[i]) {
          os << "*n" << (i + 1) << "^" << terms[t].exponents[i];
        }
      }
    }
    return os.str();
  }
};

namespace detail {

/// Walks all compositions of m into d parts in lexicographic order,
/// maintaining Q_{e,f}(n) exactly. Each step moves one unit between the
/// slack coordinate (the last) and an earlier one, multiplying Q by the
/// corresponding small rising-factorial ratio.
template <typename Fn>
void for_each_composition_value(const RatioSpec& spec, long m, Fn&& fn) {
  const int d = spec.dimension;
  std::vector<long> n(d, 0);
  n[d - 1] = m;
  std::vector<long> dots(spec.vector_count());
  for (std::size_t i = 0; i < dots.size(); ++i) {
    dots[i] = dot(spec.vector_at(i), n);
  }
  Rational value = q_value(spec, n);

  // Moves one unit from coordinate `from` to coordinate `to`.
  auto transfer = [&](int to, int from) {
    Integer numerator = 1, denominator = 1;
    for (std::size_t i = 0; i < dots.size(); ++i) {
      const auto& w = spec.vector_at(i);
      const long delta = w[to] - w[from];
      const long before = dots[i];
      Integer factor = 1;
      if (delta > 0) {
        for (long t = before + 1; t <= before + delta; ++t) factor *= t;
      } else if (delta < 0) {
        for (long t = before + delta + 1; t <= before; ++t) factor *= t;
      }
      if (delta != 0) {
        const bool growing = delta > 0;
        const bool in_e = i < spec.e.size();
        ((growing == in_e) ? numerator : denominator) *= factor;
      }
      dots[i] = before + delta;
    }
    ++n[to];
    --n[from];
    Rational ratio(numerator, denominator);
    ratio.canonicalize();
    value *= ratio;
  };

  auto rec = [&](auto&& self, int level) -> void {
    if (level == d - 1) {
      fn(std::as_const(n), std::as_const(value));
      return;
    }
    self(self, level + 1);
    const long available = n[d - 1];
    for (long step = 0; step < available; ++step) {
      transfer(level, d - 1);
      self(self, level + 1);
    }
    while (n[level] > 0) transfer(d - 1, level);
  };
  rec(rec, 0);
}

}  // namespace detail

/// S_{e,f}(m), exact. Requires the family to be integer-valued.
inline Integer multisum(const RatioSpec& spec, long m) {
  Rational total = 0;
  detail::for_each_composition_value(
      spec, m,
      [&](const std::vector<long>&, const Rational& q) { total += q; });
  if (total.get_den() != 1) {
    throw std::domain_error(
        "multisum: family is not integer-valued (sum " +
        total.get_str() + " at m=" + std::to_string(m) + ")");
  }
  return Integer(total.get_num());
}

/// Weighted multisum: sum of Q_{e,f}(n) g(n) over |n| = m.
inline Integer weighted_multisum(const RatioSpec& spec,
                                 const PolynomialWeight& weight, long m) {
  Rational total = 0;
  detail::for_each_composition_value(
      spec, m, [&](const std::vector<long>& n, const Rational& q) {
        total += q * Rational(weight.eval(n));
      });
  if (total.get_den() != 1) {
    throw std::domain_error("weighted_multisum: family not integer-valued");
  }
  return Integer(total.get_num());
}

/// Memoized handle over the (weighted) multisum values.
inline SequenceHandle multisum_sequence(
    const RatioSpec& spec,
    std::optional<PolynomialWeight> weight = std::nullopt) {
  std::string provenance =
      weight ? "multisum(" + spec.str() + ", g=" + weight->str() + ")"
             : "multisum(" + spec.str() + ")";
  if (weight) {
    return SequenceHandle::from_generator(
        [spec, g = *weight](long m) { return weighted_multisum(spec, g, m); },
        std::move(provenance));
  }
  return SequenceHandle::from_generator(
      [spec](long m) { return multisum(spec, m); }, std::move(provenance));
}

/// Z_p(A): the base-p digits v with A(v) = 0 (mod p).
struct ZeroSet {
  unsigned long prime = 2;
  std::set<long> residues;

  bool contains(long v) const { return residues.count(v) > 0; }

  std::string str() const {
    std::ostringstream os;
    os << "{";
    bool first = true;
    for (long v : residues) {
      if (!first) os << ",";
      os << v;
      first = false;
    }
    os << "}";
    return os.str();
  }
};

inline ZeroSet zero_set(const SequenceHandle& seq, Prime p) {
  ZeroSet z;
  z.prime = p.value();
  for (long v = 0; v < static_cast<long>(p.value()); ++v) {
    if (mpz_fdiv_ui(seq.at(v).get_mpz_t(), p.value()) == 0) {
      z.residues.insert(v);
    }
  }
  return z;
}

/// alpha_p(A, n): how many base-p digits of n lie in Z_p(A). For n = 0 the
/// single digit 0 is counted when 0 is in the zero set.
inline unsigned long alpha(const ZeroSet& zero, long n) {
  if (n < 0) throw std::invalid_argument("alpha: negative index");
  const long p = static_cast<long>(zero.prime);
  unsigned long count = 0;
  while (true) {
    if (zero.contains(n % p)) ++count;
    n /= p;
    if (n == 0) return count;
  }
}

inline unsigned long alpha(const SequenceHandle& seq, Prime p, long n) {
  return alpha(zero_set(seq, p), n);
}

/// Verifies the Lucas congruence A(v + n p) = A(v) A(n) (mod p) for all
/// v < p and n <= n_bound.
inline Report check_plucas(const SequenceHandle& seq, Prime p, long n_bound,
                           int threads = 1) {
  Report report;
  ReportTimer timer(report);
  report.command = "check_plucas";
  report.param("sequence", seq.provenance());
  report.param("p", std::to_string(p.value()));
  report.param("n_bound", std::to_string(n_bound));

  const long pv = static_cast<long>(p.value());
  seq.ensure(pv - 1 + n_bound * pv);
  std::vector<unsigned long> residue(static_cast<std::size_t>(n_bound) + 1);
  for (long n = 0; n <= n_bound; ++n) {
    residue[n] = mpz_fdiv_ui(seq.at(n).get_mpz_t(), p.value());
  }
  struct Slot {
    bool ok;
    unsigned long lhs, rhs;
  };
  std::vector<Slot> slots((n_bound + 1) * pv);
  parallel_for(0, n_bound, threads, [&](long n) {
    for (long v = 0; v < pv; ++v) {
      unsigned long lhs =
          mpz_fdiv_ui(seq.at(v + n * pv).get_mpz_t(), p.value());
      unsigned long rhs = (residue[v] * residue[n]) % p.value();
      slots[n * pv + v] = {lhs == rhs, lhs, rhs};
    }
  });
  for (long n = 0; n <= n_bound; ++n) {
    for (long v = 0; v < pv; ++v) {
      const Slot& s = slots[n * pv + v];
      report.add("v=" + std::to_string(v) + " n=" + std::to_string(n),
                 "A(v+np) = A(v)A(n) mod " + std::to_string(pv),
                 std::to_string(s.lhs) + " vs " + std::to_string(s.rhs),
                 s.ok);
    }
  }
  return report;
}

/// Verifies the valuation lower bound for a multisum family:
/// v_p(S(n)) >= alpha_p(S, n), or with a polynomial weight g,
/// v_p(S^g(n)) >= alpha_p(S, n) - 1, for all n <= n_bound. The handle
/// `values` supplies the unweighted S values (typically recurrence-extended)
/// and also defines the zero set used for alpha.
inline Report check_valuation_bound(
    const RatioSpec& spec, const SequenceHandle& values, Prime p, long n_bound,
    const std::optional<PolynomialWeight>& weight = std::nullopt,
    int threads = 1) {
  Report report;
  ReportTimer timer(report);
  report.command = weight ? "check_valuation_bound(weighted)"
                          : "check_valuation_bound";
  report.param("spec", spec.str());
  report.param("sequence", values.provenance());
  report.param("p", std::to_string(p.value()));
  report.param("n_bound", std::to_string(n_bound));
  if (weight) report.param("weight", weight->str());

  Admissibility adm = is_r_admissible(spec, 2);
  report.precondition("e is 2-admissible", adm.admissible,
                      adm.admissible
                          ? "witness s=" + std::to_string(*adm.split)
                          : "no admissible split");
  bool units_only = true;
  for (const auto& w : spec.f) {
    long total = 0;
    for (long c : w) total += c;
    units_only = units_only && total == 1;
  }
  report.precondition("f consists of unit vectors", units_only,
                      units_only ? "ok" : "non-unit vector present");
  std::vector<long> diff = spec.weight_difference();
  bool balanced = true;
  for (long c : diff) balanced = balanced && c == 0;
  report.precondition("|e| = |f|", balanced,
                      balanced ? "ok" : "weight sums differ");
  if (report.outcome == Outcome::Error) return report;

  const ZeroSet zero = zero_set(values, p);
  report.param("zero_set", zero.str());
  values.ensure(n_bound);

  struct Slot {
    bool ok;
    long bound;
    Valuation v = Valuation(0);
  };
  std::vector<Slot> slots(static_cast<std::size_t>(n_bound) + 1);
  parallel_for(0, n_bound, threads, [&](long n) {
    long bound = static_cast<long>(alpha(zero, n)) - (weight ? 1 : 0);
    Valuation v =
        weight ? valuation(weighted_multisum(spec, *weight, n), p)
               : valuation(values.at(n), p);
    slots[n] = {v >= Valuation(bound), bound, v};
  });
  for (long n = 0; n <= n_bound; ++n) {
    const Slot& s = slots[n];
    std::string margin =
        s.v.is_finite() ? std::to_string(s.v.value() - s.bound) : "inf";
    report.add("n=" + std::to_string(n), "v_p >= " + std::to_string(s.bound),
               "v_p = " + s.v.str() + " margin " + margin, s.ok);
  }
  return report;
}

}  // namespace lucaslab
