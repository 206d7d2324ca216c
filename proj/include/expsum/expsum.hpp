// Evaluation of the complete sums
//   S  = sum_{x=0}^{p-1} e_p(f(x))      and      S* = sum_{x in F_p^*} e_p(f(x))
// for sparse f. One twiddle table e_p(k) = exp(2*pi*i*k/p) is built per
// evaluator; per-term cost is a table lookup plus index arithmetic through
// the field's pow/dlog tables. Summation is compensated (Neumaier) in a
// fixed increasing-x order so batch and single evaluation agree bitwise.
#ifndef EXPSUM_EXPSUM_HPP
#define EXPSUM_EXPSUM_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <vector>

#include "expsum/modarith.hpp"

namespace expsum {

struct SumResult {
  double real_part = 0.0;
  double imag_part = 0.0;
  double magnitude = 0.0;
  u64 term_count = 0;
  double error_budget = 0.0;  // a priori rounding bound, ~8*p*eps
};

namespace detail {

struct Kahan {
  double sum = 0.0;
  double comp = 0.0;
  void add(double v) {
    double t = sum + v;
    if (std::abs(sum) >= std::abs(v))
      comp += (sum - t) + v;
    else
      comp += (v - t) + sum;
    sum = t;
  }
  double value() const { return sum + comp; }
};

}  // namespace detail

// Exponent vector prepared against a field: per-term power tables
// powers[i][x-1] = x^{n_i} mod p for x in 1..p-1. Reduction of n_i happens
// only here, i.e. only inside the F_p^* part of the sum; the x = 0 term is
// handled separately (f(0) = 0 since all n_i >= 1).
class PreparedExponents {
 public:
  PreparedExponents(std::vector<u64> exponents, const PrimeField& field)
      : field_(&field), exponents_(std::move(exponents)) {
    field.require_tables("PreparedExponents");
    const u64 p = field.p();
    const u64 pm1 = p - 1;
    powers_.resize(exponents_.size());
    for (std::size_t i = 0; i < exponents_.size(); ++i) {
      const u64 stride = exponents_[i] % pm1;
      auto& tab = powers_[i];
      tab.resize(pm1);
      for (u64 x = 1; x < p; ++x) {
        const u64 idx = (u64(field.dlog_of(x)) * stride) % pm1;
        tab[x - 1] = field.pow_of(idx);
      }
    }
  }

  const PrimeField& field() const { return *field_; }
  const std::vector<u64>& exponents() const { return exponents_; }
  std::size_t terms() const { return exponents_.size(); }

  // f(x) mod p for x in 1..p-1.
  u64 value_at(u64 x, const std::vector<u64>& coeffs) const {
    u128 acc = 0;
    for (std::size_t i = 0; i < powers_.size(); ++i)
      acc += u128(coeffs[i]) * powers_[i][x - 1];
    return static_cast<u64>(acc % field_->p());
  }

 private:
  const PrimeField* field_;
  std::vector<u64> exponents_;
  std::vector<std::vector<u32>> powers_;
};

class Evaluator {
 public:
  explicit Evaluator(const PrimeField& field) : field_(&field) {
    field.require_tables("Evaluator");
    const u64 p = field.p();
    twiddle_.resize(p);
    const double two_pi = 6.283185307179586476925286766559;
    for (u64 k = 0; k < p; ++k) {
      const double t = two_pi * double(k) / double(p);
      twiddle_[k] = {std::cos(t), std::sin(t)};
    }
  }

  const PrimeField& field() const { return *field_; }

  PreparedExponents prepare(const std::vector<u64>& exponents) const {
    return PreparedExponents(exponents, *field_);
  }

  // S* = sum over x in F_p^* of e_p(f(x)), x increasing from 1.
  SumResult sum_star(const PreparedExponents& prep, const std::vector<u64>& coeffs) const {
    detail::Kahan re, im;
    const u64 p = field_->p();
    for (u64 x = 1; x < p; ++x) {
      const u64 fx = prep.value_at(x, coeffs);
      re.add(twiddle_[fx].real());
      im.add(twiddle_[fx].imag());
    }
    return finish(re.value(), im.value(), p - 1);
  }

  // S = 1 + S*: the x = 0 term contributes e_p(0) = 1 exactly.
  SumResult sum_full(const PreparedExponents& prep, const std::vector<u64>& coeffs) const {
    detail::Kahan re, im;
    re.add(1.0);
    const u64 p = field_->p();
    for (u64 x = 1; x < p; ++x) {
      const u64 fx = prep.value_at(x, coeffs);
      re.add(twiddle_[fx].real());
      im.add(twiddle_[fx].imag());
    }
    return finish(re.value(), im.value(), p);
  }

  // |S| and |S*| from one sweep; used by the maximizer.
  void magnitudes(const PreparedExponents& prep, const std::vector<u64>& coeffs,
                  double& full_mag, double& star_mag) const {
    detail::Kahan re, im;
    const u64 p = field_->p();
    for (u64 x = 1; x < p; ++x) {
      const u64 fx = prep.value_at(x, coeffs);
      re.add(twiddle_[fx].real());
      im.add(twiddle_[fx].imag());
    }
    const double sr = re.value(), si = im.value();
    star_mag = std::hypot(sr, si);
    full_mag = std::hypot(sr + 1.0, si);
  }

 private:
  SumResult finish(double re, double im, u64 terms) const {
    SumResult r;
    r.real_part = re;
    r.imag_part = im;
    r.magnitude = std::hypot(re, im);
    r.term_count = terms;
    r.error_budget = 8.0 * double(field_->p()) * std::numeric_limits<double>::epsilon();
    return r;
  }

  const PrimeField* field_;
  std::vector<std::complex<double>> twiddle_;
};

inline SumResult eval_sum_full(const SparsePoly& poly, const PrimeField& field) {
  poly.validate(field);
  Evaluator ev(field);
  return ev.sum_full(ev.prepare(poly.exponents), poly.coefficients);
}

inline SumResult eval_sum_star(const SparsePoly& poly, const PrimeField& field) {
  poly.validate(field);
  Evaluator ev(field);
  return ev.sum_star(ev.prepare(poly.exponents), poly.coefficients);
}

// Shared twiddle and power tables across the whole batch; each entry is
// bitwise identical to the corresponding single eval_sum_full call.
inline std::vector<SumResult> eval_batch(const std::vector<u64>& exponents,
                                         const std::vector<std::vector<u64>>& coefficient_list,
                                         const PrimeField& field) {
  std::vector<SumResult> out;
  out.reserve(coefficient_list.size());
  if (coefficient_list.empty()) return out;
  Evaluator ev(field);
  PreparedExponents prep = ev.prepare(exponents);
  for (const auto& coeffs : coefficient_list) {
    SparsePoly(exponents, coeffs).validate(field);
    out.push_back(ev.sum_full(prep, coeffs));
  }
  return out;
}

}  // namespace expsum

#endif  // EXPSUM_EXPSUM_HPP
