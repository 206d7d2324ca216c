// The bound catalog: every estimate we track for M_{n_0,...,n_nu}, each with
// its applicability predicate and piecewise case selection. Case thresholds
// (X against p^{29/48}, p^{59/112}, p^{1/2}, p^{2/3}) are decided in exact
// integer arithmetic (X^48 vs p^29 and friends), never via floating logs;
// boundary convention is inclusive below, exclusive above.
#ifndef EXPSUM_BOUNDS_HPP
#define EXPSUM_BOUNDS_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "expsum/modarith.hpp"

namespace expsum {

using bigint = boost::multiprecision::cpp_int;

struct BoundValue {
  std::string name;
  std::optional<double> value;  // absent iff !applicable
  std::string case_id;          // piecewise branch, or ""
  bool applicable = false;
  bool asymptotic = false;      // true when the estimate hides a p^{o(1)} factor
  bool exceeds_trivial = false; // value > p (bound present but useless)
};

inline bigint bigpow(u64 base, unsigned exp) {
  bigint b = base;
  return boost::multiprecision::pow(b, exp);
}

// a^x vs b^y, exact. Returns -1, 0, +1.
inline int compare_powers(u64 a, unsigned x, u64 b, unsigned y) {
  const bigint lhs = bigpow(a, x);
  const bigint rhs = bigpow(b, y);
  if (lhs < rhs) return -1;
  if (lhs > rhs) return 1;
  return 0;
}

// Which of the four ranges X falls in:
//   1: p^{29/48} <= X < p^{2/3}     2: p^{59/112} <= X < p^{29/48}
//   3: p^{1/2}   <= X < p^{59/112}  4: X < p^{1/2}
// 0 means X >= p^{2/3} (outside the table).
inline int select_case(u64 X, u64 p) {
  if (compare_powers(X, 3, p, 2) >= 0) return 0;
  if (compare_powers(X, 48, p, 29) >= 0) return 1;
  if (compare_powers(X, 112, p, 59) >= 0) return 2;
  if (compare_powers(X, 2, p, 1) >= 0) return 3;
  return 4;
}

namespace detail {

inline BoundValue not_applicable(std::string name, std::string why) {
  BoundValue b;
  b.name = std::move(name);
  b.case_id = std::move(why);
  return b;
}

inline BoundValue present(std::string name, double value, std::string case_id,
                          bool asymptotic, u64 p) {
  BoundValue b;
  b.name = std::move(name);
  b.value = value;
  b.case_id = std::move(case_id);
  b.applicable = true;
  b.asymptotic = asymptotic;
  b.exceeds_trivial = value > double(p);
  return b;
}

inline void require_binomial(const std::vector<u64>& exps, const char* who) {
  if (exps.size() != 2) throw std::invalid_argument(std::string(who) + ": binomial required");
  if (exps[0] == exps[1]) throw std::invalid_argument(std::string(who) + ": exponents must be distinct");
  if (exps[0] == 0 || exps[1] == 0) throw std::invalid_argument(std::string(who) + ": exponents must be >= 1");
}

}  // namespace detail

// Trivial bound |S| <= p.
inline BoundValue bound_trivial(const PrimeField& field) {
  return detail::present("trivial", double(field.p()), "", false, field.p());
}

// Weil: max{n_i} * sqrt(p). Degree is read from the exponents as given,
// before any reduction mod p-1.
inline BoundValue bound_weil(const SparsePoly& poly, const PrimeField& field) {
  poly.validate(field);
  u64 deg = 0;
  for (u64 n : poly.exponents) deg = std::max(deg, n);
  return detail::present("weil", double(deg) * std::sqrt(double(field.p())), "", false, field.p());
}

// Akulinichev: M_{1,n} <= p / sqrt(gcd(n, p-1)).
inline BoundValue bound_aku_gcd(u64 m, u64 n, const PrimeField& field) {
  detail::require_binomial({m, n}, "bound_aku_gcd");
  if (m != 1) return detail::not_applicable("aku_gcd", "requires m = 1");
  const u64 p = field.p();
  return detail::present("aku_gcd", double(p) / std::sqrt(double(std::gcd(n, p - 1))), "", false, p);
}

// Uniform p^{5/6} (hypotheses m = 1, n | p-1 are checked by the catalog walk).
inline BoundValue bound_aku56(const PrimeField& field) {
  const u64 p = field.p();
  return detail::present("aku56", std::pow(double(p), 5.0 / 6.0), "", false, p);
}

// O(p^{4/5}) with an unspecified absolute constant; evaluated with constant 1
// and flagged asymptotic (report-only).
inline BoundValue bound_sv45(const PrimeField& field) {
  const u64 p = field.p();
  return detail::present("sv45", std::pow(double(p), 4.0 / 5.0), "", true, p);
}

// M_{1,n} <= p^{3/4} + (n-1)^{1/3} p^{2/3}.
inline BoundValue bound_sv(u64 n, const PrimeField& field) {
  if (n == 0) throw std::invalid_argument("bound_sv: n must be >= 1");
  const u64 p = field.p();
  const double v = std::pow(double(p), 0.75) +
                   std::cbrt(double(n - 1)) * std::pow(double(p), 2.0 / 3.0);
  return detail::present("sv", v, "", false, p);
}

// Cochrane-Pinner: M_{m,n} <= d + 2.292 e^{13/46} p^{89/92},
// d = gcd(n-m, p-1), e = gcd(m, n, p-1).
inline BoundValue bound_cp11(u64 m, u64 n, const PrimeField& field) {
  detail::require_binomial({m, n}, "bound_cp11");
  const u64 p = field.p();
  const u64 d = gcd_diff(n, m, p - 1);
  const u64 e = std::gcd(std::gcd(m, n), p - 1);
  const double v = double(d) + 2.292 * std::pow(double(e), 13.0 / 46.0) *
                                   std::pow(double(p), 89.0 / 92.0);
  return detail::present("cp11", v, "", false, p);
}

// Akulinichev: for n | p-1 and gcd(m,n) = 1, M_{m,n} <= p/n + h^{1/2} p^{3/4}
// with h = gcd(m, p-1).
inline BoundValue bound_a65(u64 m, u64 n, const PrimeField& field) {
  detail::require_binomial({m, n}, "bound_a65");
  const u64 p = field.p();
  if (n == 0 || (p - 1) % n != 0) return detail::not_applicable("a65", "requires n | p-1");
  if (std::gcd(m, n) != 1) return detail::not_applicable("a65", "requires gcd(m,n) = 1");
  const u64 h = std::gcd(m, p - 1);
  const double v = double(p) / double(n) + std::sqrt(double(h)) * std::pow(double(p), 0.75);
  return detail::present("a65", v, "", false, p);
}

// Four-case bound keyed by Delta (nu >= 2):
//   Delta^{-1/4}  Gamma^{-1/(4nu)} p^{7/6}      p^{29/48} <= Delta < p^{2/3}
//   Delta^{-21/52}Gamma^{-1/(4nu)} p^{131/104}  p^{59/112} <= Delta < p^{29/48}
//   Delta^{-7/20} Gamma^{-1/(4nu)} p^{197/160}  p^{1/2}   <= Delta < p^{59/112}
//   Delta^{-31/80}Gamma^{-1/(4nu)} p^{5/4}      Delta < p^{1/2}
inline BoundValue bound_thm21(const InvariantProfile& prof, u64 nu, const PrimeField& field) {
  if (nu < 2) return detail::not_applicable("thm21", "requires nu >= 2");
  if (!prof.Gamma) return detail::not_applicable("thm21", "Gamma undefined");
  const u64 p = field.p();
  const double pd = double(p);
  const double gam_pow = std::pow(double(*prof.Gamma), -1.0 / (4.0 * double(nu)));
  const double Delta = double(prof.delta);
  switch (select_case(prof.delta, p)) {
    case 1:
      return detail::present("thm21",
                             std::pow(Delta, -0.25) * gam_pow * std::pow(pd, 7.0 / 6.0),
                             "p^{29/48} <= Delta < p^{2/3}", true, p);
    case 2:
      return detail::present("thm21",
                             std::pow(Delta, -21.0 / 52.0) * gam_pow * std::pow(pd, 131.0 / 104.0),
                             "p^{59/112} <= Delta < p^{29/48}", true, p);
    case 3:
      return detail::present("thm21",
                             std::pow(Delta, -7.0 / 20.0) * gam_pow * std::pow(pd, 197.0 / 160.0),
                             "p^{1/2} <= Delta < p^{59/112}", true, p);
    case 4:
      return detail::present("thm21",
                             std::pow(Delta, -31.0 / 80.0) * gam_pow * std::pow(pd, 5.0 / 4.0),
                             "Delta < p^{1/2}", true, p);
    default:
      return detail::not_applicable("thm21", "Delta >= p^{2/3}");
  }
}

// Binomial specialisation, keyed by d/e:
//   e^{1/4} p^{11/12}                p^{29/48} <= d/e < p^{2/3}
//   e^{21/52} d^{-2/13} p^{105/104}  p^{59/112} <= d/e < p^{29/48}
//   e^{7/20} d^{-1/10} p^{157/160}   p^{1/2}   <= d/e < p^{59/112}
//   e^{31/80} d^{-11/80} p           d/e < p^{1/2}
inline BoundValue bound_cor22(u64 m, u64 n, const PrimeField& field) {
  detail::require_binomial({m, n}, "bound_cor22");
  const u64 p = field.p();
  const u64 d = gcd_diff(n, m, p - 1);
  const u64 e = std::gcd(std::gcd(m, n), p - 1);
  const double dd = double(d), ee = double(e), pd = double(p);
  switch (select_case(d / e, p)) {
    case 1:
      return detail::present("cor22", std::pow(ee, 0.25) * std::pow(pd, 11.0 / 12.0),
                             "p^{29/48} <= d/e < p^{2/3}", true, p);
    case 2:
      return detail::present("cor22",
                             std::pow(ee, 21.0 / 52.0) * std::pow(dd, -2.0 / 13.0) *
                                 std::pow(pd, 105.0 / 104.0),
                             "p^{59/112} <= d/e < p^{29/48}", true, p);
    case 3:
      return detail::present("cor22",
                             std::pow(ee, 7.0 / 20.0) * std::pow(dd, -1.0 / 10.0) *
                                 std::pow(pd, 157.0 / 160.0),
                             "p^{1/2} <= d/e < p^{59/112}", true, p);
    case 4:
      return detail::present("cor22",
                             std::pow(ee, 31.0 / 80.0) * std::pow(dd, -11.0 / 80.0) * pd,
                             "d/e < p^{1/2}", true, p);
    default:
      return detail::not_applicable("cor22", "d/e >= p^{2/3}");
  }
}

// Four-case bound keyed by n, for n | p-1 and gcd(m,n) = 1, h = gcd(m,p-1):
//   h^{1/4} n^{-1/4}  p^{11/12}   p^{29/48} <= n < p^{2/3}
//   h^{1/4} n^{-21/52} p^{105/104} p^{59/112} <= n < p^{29/48}
//   h^{1/4} n^{-7/20} p^{157/160}  p^{1/2}   <= n < p^{59/112}
//   h^{1/4} n^{-31/80} p           n < p^{1/2}
inline BoundValue bound_thm23(u64 m, u64 n, const PrimeField& field) {
  detail::require_binomial({m, n}, "bound_thm23");
  const u64 p = field.p();
  if ((p - 1) % n != 0) return detail::not_applicable("thm23", "requires n | p-1");
  if (std::gcd(m, n) != 1) return detail::not_applicable("thm23", "requires gcd(m,n) = 1");
  const u64 h = std::gcd(m, p - 1);
  const double hp = std::pow(double(h), 0.25);
  const double nd = double(n), pd = double(p);
  switch (select_case(n, p)) {
    case 1:
      return detail::present("thm23", hp * std::pow(nd, -0.25) * std::pow(pd, 11.0 / 12.0),
                             "p^{29/48} <= n < p^{2/3}", true, p);
    case 2:
      return detail::present("thm23", hp * std::pow(nd, -21.0 / 52.0) * std::pow(pd, 105.0 / 104.0),
                             "p^{59/112} <= n < p^{29/48}", true, p);
    case 3:
      return detail::present("thm23", hp * std::pow(nd, -7.0 / 20.0) * std::pow(pd, 157.0 / 160.0),
                             "p^{1/2} <= n < p^{59/112}", true, p);
    case 4:
      return detail::present("thm23", hp * std::pow(nd, -31.0 / 80.0) * pd,
                             "n < p^{1/2}", true, p);
    default:
      return detail::not_applicable("thm23", "n >= p^{2/3}");
  }
}

// Four-case bound on T_t keyed by (p-1)/t, for t | p-1 (logarithmic factors
// suppressed, hence asymptotic):
//   p^{8/3} t          p^{29/48} <= (p-1)/t < p^{2/3}
//   p^{63/26} t^{21/13} p^{59/112} <= (p-1)/t < p^{29/48}
//   p^{101/40} t^{7/5}  p^{1/2}   <= (p-1)/t < p^{59/112}
//   p^{49/20} t^{31/20} (p-1)/t < p^{1/2}
inline BoundValue bound_lemma31(u64 t, const PrimeField& field) {
  const u64 p = field.p();
  if (t == 0 || (p - 1) % t != 0) throw std::invalid_argument("bound_lemma31: t must divide p-1");
  const u64 ratio = (p - 1) / t;
  const double td = double(t), pd = double(p);
  switch (select_case(ratio, p)) {
    case 1:
      return detail::present("lemma31", std::pow(pd, 8.0 / 3.0) * td,
                             "p^{29/48} <= (p-1)/t < p^{2/3}", true, p);
    case 2:
      return detail::present("lemma31", std::pow(pd, 63.0 / 26.0) * std::pow(td, 21.0 / 13.0),
                             "p^{59/112} <= (p-1)/t < p^{29/48}", true, p);
    case 3:
      return detail::present("lemma31", std::pow(pd, 101.0 / 40.0) * std::pow(td, 7.0 / 5.0),
                             "p^{1/2} <= (p-1)/t < p^{59/112}", true, p);
    case 4:
      return detail::present("lemma31", std::pow(pd, 49.0 / 20.0) * std::pow(td, 31.0 / 20.0),
                             "(p-1)/t < p^{1/2}", true, p);
    default:
      return detail::not_applicable("lemma31", "(p-1)/t >= p^{2/3}");
  }
}

struct BoundReport {
  std::vector<BoundValue> rows;
  std::optional<double> min_explicit;         // over non-asymptotic applicable rows
  std::optional<double> min_with_asymptotic;  // over all applicable rows
};

// Every catalog entry evaluated for the given polynomial. Bounds whose
// hypotheses mention a distinguished exponent (m = 1, n | p-1) try both
// orientations of a binomial and keep the better applicable one; this is
// sound because M_{m,n} = M_{n,m}.
inline BoundReport best_bound(const SparsePoly& poly, const PrimeField& field) {
  poly.validate(field);
  BoundReport rep;
  auto add = [&rep](BoundValue b) { rep.rows.push_back(std::move(b)); };
  auto add_best_orientation = [&](BoundValue as_given, BoundValue swapped) {
    if (!as_given.applicable) { add(std::move(swapped)); return; }
    if (!swapped.applicable) { add(std::move(as_given)); return; }
    add(*swapped.value < *as_given.value ? std::move(swapped) : std::move(as_given));
  };

  add(bound_trivial(field));
  add(bound_weil(poly, field));

  if (poly.terms() == 2) {
    const u64 m = poly.exponents[0], n = poly.exponents[1];
    add_best_orientation(bound_aku_gcd(m, n, field), bound_aku_gcd(n, m, field));
    // p^{5/6} and the O(p^{4/5}) bound require m = 1 and n | p-1.
    const bool aku56_ok = (m == 1 && (field.p() - 1) % n == 0) ||
                          (n == 1 && (field.p() - 1) % m == 0);
    if (aku56_ok) {
      add(bound_aku56(field));
      add(bound_sv45(field));
    }
    if (m == 1) add(bound_sv(n, field));
    else if (n == 1) add(bound_sv(m, field));
    add(bound_cp11(m, n, field));
    add_best_orientation(bound_a65(m, n, field), bound_a65(n, m, field));
    add(bound_cor22(m, n, field));
    add_best_orientation(bound_thm23(m, n, field), bound_thm23(n, m, field));
  } else if (poly.terms() >= 3) {
    add(bound_thm21(invariant_profile(poly, field), poly.nu(), field));
  }

  for (const auto& row : rep.rows) {
    if (!row.applicable) continue;
    if (!rep.min_with_asymptotic || *row.value < *rep.min_with_asymptotic)
      rep.min_with_asymptotic = row.value;
    if (!row.asymptotic && (!rep.min_explicit || *row.value < *rep.min_explicit))
      rep.min_explicit = row.value;
  }
  return rep;
}

}  // namespace expsum

#endif  // EXPSUM_BOUNDS_HPP
