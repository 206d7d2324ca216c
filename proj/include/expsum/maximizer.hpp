// Exact computation of M_{n_0,...,n_nu} by enumeration over coefficient
// tuples, plus an orbit reduction exploiting the substitution x -> cx:
// tuples (a_i) and (a_i c^{n_i}) give the same |S| and |S*|, so one
// representative per orbit suffices. Orbit size is (p-1)/e with
// e = gcd(n_0, ..., n_nu, p-1).
//
// Two passes keep results deterministic and thread-count independent:
// pass 1 finds the float maximum (associative max), pass 2 picks the
// lexicographically smallest tuple within 1e-9 of it.
#ifndef EXPSUM_MAXIMIZER_HPP
#define EXPSUM_MAXIMIZER_HPP

#include <algorithm>
#include <cmath>
#include <mutex>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "expsum/counting.hpp"
#include "expsum/expsum.hpp"
#include "expsum/parallel.hpp"

namespace expsum {

struct MaxResult {
  double value = 0.0;                // max |S| (full sum, x from 0)
  std::vector<u64> argmax;           // lex-smallest attaining it within 1e-9
  double star_value = 0.0;           // max |S*| over the same tuples
  std::vector<u64> star_argmax;
  u64 evaluations = 0;               // tuples enumerated in the max pass
  bool reduced = false;
  bool sampled_lower_bound = false;  // true only for the sampled mode
};

struct MaxCaps {
  // cost unit: evaluations x terms-per-evaluation (p per tuple)
  u64 max_cost = 100'000'000;
};

inline constexpr double kTieTolerance = 1e-9;

namespace detail {

// Mixed-radix odometer over [0, radix_0) x ... x [0, radix_{t-1}),
// coordinate 0 most significant (lexicographic order).
struct Odometer {
  std::vector<u64> radices;
  std::vector<u64> digits;

  explicit Odometer(std::vector<u64> r) : radices(std::move(r)), digits(radices.size(), 0) {}

  u64 total() const {
    u64 t = 1;
    for (u64 r : radices) t *= r;
    return t;
  }

  void seek(u64 index) {
    for (std::size_t i = radices.size(); i-- > 0;) {
      digits[i] = index % radices[i];
      index /= radices[i];
    }
  }

  void advance() {
    for (std::size_t i = radices.size(); i-- > 0;) {
      if (++digits[i] < radices[i]) return;
      digits[i] = 0;
    }
  }
};

struct LexMin {
  std::optional<std::vector<u64>> best;
  void offer(const std::vector<u64>& candidate) {
    if (!best || candidate < *best) best = candidate;
  }
  void merge(const LexMin& other) {
    if (other.best) offer(*other.best);
  }
};

inline u64 checked_tuple_count(const std::vector<u64>& radices, u64 p, u64 max_cost,
                               const char* who) {
  u128 total = 1;
  for (u64 r : radices) {
    total *= r;
    if (total > u128(max_cost)) break;
  }
  if (total * p > u128(max_cost))
    throw CapExceeded(std::string(who) + ": cost " + u128_to_string(total * p) +
                      " exceeds cap " + std::to_string(max_cost));
  return static_cast<u64>(total);
}

}  // namespace detail

inline MaxResult max_sum_exhaustive(const std::vector<u64>& exponents, const PrimeField& field,
                                    const MaxCaps& caps = {}, unsigned threads = 1) {
  field.require_tables("max_sum_exhaustive");
  const u64 p = field.p();
  const u64 pm1 = p - 1;
  SparsePoly probe(exponents, std::vector<u64>(exponents.size(), 1));
  probe.validate(field);

  const std::vector<u64> radices(exponents.size(), pm1);
  const u64 tuples =
      detail::checked_tuple_count(radices, p, caps.max_cost, "max_sum_exhaustive");

  Evaluator ev(field);
  const PreparedExponents prep = ev.prepare(exponents);

  auto coeffs_of = [&](const detail::Odometer& od, std::vector<u64>& out) {
    for (std::size_t i = 0; i < od.digits.size(); ++i) out[i] = od.digits[i] + 1;
  };

  // Pass 1: float maxima.
  double max_full = -1.0, max_star = -1.0;
  std::mutex mu;
  parallel_chunks(tuples, threads, [&](unsigned, u64 begin, u64 end) {
    detail::Odometer od(radices);
    od.seek(begin);
    std::vector<u64> coeffs(exponents.size());
    double local_full = -1.0, local_star = -1.0;
    for (u64 idx = begin; idx < end; ++idx, od.advance()) {
      coeffs_of(od, coeffs);
      double fm, sm;
      ev.magnitudes(prep, coeffs, fm, sm);
      local_full = std::max(local_full, fm);
      local_star = std::max(local_star, sm);
    }
    std::lock_guard<std::mutex> lock(mu);
    max_full = std::max(max_full, local_full);
    max_star = std::max(max_star, local_star);
  });

  // Pass 2: lexicographically smallest tuple within the tie band.
  detail::LexMin lex_full, lex_star;
  parallel_chunks(tuples, threads, [&](unsigned, u64 begin, u64 end) {
    detail::Odometer od(radices);
    od.seek(begin);
    std::vector<u64> coeffs(exponents.size());
    detail::LexMin local_full, local_star;
    for (u64 idx = begin; idx < end; ++idx, od.advance()) {
      coeffs_of(od, coeffs);
      double fm, sm;
      ev.magnitudes(prep, coeffs, fm, sm);
      if (fm >= max_full - kTieTolerance) local_full.offer(coeffs);
      if (sm >= max_star - kTieTolerance) local_star.offer(coeffs);
    }
    std::lock_guard<std::mutex> lock(mu);
    lex_full.merge(local_full);
    lex_star.merge(local_star);
  });

  MaxResult res;
  res.value = max_full;
  res.star_value = max_star;
  res.argmax = *lex_full.best;
  res.star_argmax = *lex_star.best;
  res.evaluations = tuples;
  res.reduced = false;
  return res;
}

namespace detail {

// Transversal of the orbit space in discrete-log coordinates. The action is
// alpha -> alpha + kappa * (n_0, ..., n_nu) on Z_{p-1}^{terms}; normalizing
// coordinates left to right gives box radices G_i with
//   G_i = gcd(n_i * L_i, p-1),  L_0 = 1,  L_{i+1} = L_i * (p-1)/G_i,
// and the box size is (p-1)^{terms} * e / (p-1) exactly.
inline std::vector<u64> orbit_box_radices(const std::vector<u64>& exponents, u64 pm1) {
  std::vector<u64> radices(exponents.size());
  u64 L = 1 % pm1;
  for (std::size_t i = 0; i < exponents.size(); ++i) {
    const u64 shift = (u128(exponents[i] % pm1) * L) % pm1;
    const u64 G = shift == 0 ? pm1 : std::gcd(shift, pm1);
    radices[i] = G;
    L = (u128(L) * (pm1 / G)) % pm1;
  }
  return radices;
}

}  // namespace detail

inline MaxResult max_sum_orbits(const std::vector<u64>& exponents, const PrimeField& field,
                                const MaxCaps& caps = {}, unsigned threads = 1) {
  field.require_tables("max_sum_orbits");
  const u64 p = field.p();
  const u64 pm1 = p - 1;
  SparsePoly probe(exponents, std::vector<u64>(exponents.size(), 1));
  probe.validate(field);

  const std::vector<u64> radices = detail::orbit_box_radices(exponents, pm1);
  const u64 reps = detail::checked_tuple_count(radices, p, caps.max_cost, "max_sum_orbits");

  Evaluator ev(field);
  const PreparedExponents prep = ev.prepare(exponents);

  std::vector<u64> strides(exponents.size());
  for (std::size_t i = 0; i < exponents.size(); ++i) strides[i] = exponents[i] % pm1;

  auto coeffs_of = [&](const detail::Odometer& od, std::vector<u64>& out) {
    for (std::size_t i = 0; i < od.digits.size(); ++i) out[i] = field.pow_of(od.digits[i]);
  };

  // Pass 1 over representatives only.
  double max_full = -1.0, max_star = -1.0;
  std::mutex mu;
  parallel_chunks(reps, threads, [&](unsigned, u64 begin, u64 end) {
    detail::Odometer od(radices);
    od.seek(begin);
    std::vector<u64> coeffs(exponents.size());
    double local_full = -1.0, local_star = -1.0;
    for (u64 idx = begin; idx < end; ++idx, od.advance()) {
      coeffs_of(od, coeffs);
      double fm, sm;
      ev.magnitudes(prep, coeffs, fm, sm);
      local_full = std::max(local_full, fm);
      local_star = std::max(local_star, sm);
    }
    std::lock_guard<std::mutex> lock(mu);
    max_full = std::max(max_full, local_full);
    max_star = std::max(max_star, local_star);
  });

  // Pass 2: collect representatives near either maximum (with extra slack
  // for per-orbit rounding spread), then expand their whole orbits and pick
  // lexicographic minima exactly as the exhaustive scan would.
  const double slack = 32.0 * double(p) * std::numeric_limits<double>::epsilon();
  std::vector<std::vector<u64>> candidates;  // dlog vectors
  parallel_chunks(reps, threads, [&](unsigned, u64 begin, u64 end) {
    detail::Odometer od(radices);
    od.seek(begin);
    std::vector<u64> coeffs(exponents.size());
    std::vector<std::vector<u64>> local;
    for (u64 idx = begin; idx < end; ++idx, od.advance()) {
      coeffs_of(od, coeffs);
      double fm, sm;
      ev.magnitudes(prep, coeffs, fm, sm);
      if (fm >= max_full - kTieTolerance - slack || sm >= max_star - kTieTolerance - slack)
        local.push_back(od.digits);
    }
    std::lock_guard<std::mutex> lock(mu);
    for (auto& c : local) candidates.push_back(std::move(c));
  });

  // Expand candidate orbits: member values first (the final maxima), then
  // the lex minima against the final tie bands.
  struct Member {
    std::vector<u64> coeffs;
    double full, star;
  };
  std::vector<Member> members;
  std::vector<u64> coeffs(exponents.size());
  for (const auto& alpha : candidates) {
    for (u64 kappa = 0; kappa < pm1; ++kappa) {
      for (std::size_t i = 0; i < alpha.size(); ++i)
        coeffs[i] = field.pow_of((alpha[i] + kappa * strides[i]) % pm1);
      Member m;
      m.coeffs = coeffs;
      ev.magnitudes(prep, coeffs, m.full, m.star);
      members.push_back(std::move(m));
    }
  }
  for (const auto& m : members) {
    max_full = std::max(max_full, m.full);
    max_star = std::max(max_star, m.star);
  }
  detail::LexMin lex_full, lex_star;
  for (const auto& m : members) {
    if (m.full >= max_full - kTieTolerance) lex_full.offer(m.coeffs);
    if (m.star >= max_star - kTieTolerance) lex_star.offer(m.coeffs);
  }

  MaxResult res;
  res.value = max_full;
  res.star_value = max_star;
  res.argmax = *lex_full.best;
  res.star_argmax = *lex_star.best;
  res.evaluations = reps;
  res.reduced = true;
  return res;
}

// Random coefficient tuples only: the result is a LOWER bound on M, never a
// substitute for it, and is flagged as such.
inline MaxResult max_sum_sampled(const std::vector<u64>& exponents, const PrimeField& field,
                                 u64 samples, u64 seed) {
  field.require_tables("max_sum_sampled");
  const u64 p = field.p();
  SparsePoly probe(exponents, std::vector<u64>(exponents.size(), 1));
  probe.validate(field);

  Evaluator ev(field);
  const PreparedExponents prep = ev.prepare(exponents);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<u64> coeff(1, p - 1);

  MaxResult res;
  res.sampled_lower_bound = true;
  res.evaluations = samples;
  res.value = -1.0;
  res.star_value = -1.0;
  std::vector<u64> coeffs(exponents.size());
  for (u64 i = 0; i < samples; ++i) {
    for (auto& c : coeffs) c = coeff(rng);
    double fm, sm;
    ev.magnitudes(prep, coeffs, fm, sm);
    if (fm > res.value + kTieTolerance ||
        (fm >= res.value - kTieTolerance && (res.argmax.empty() || coeffs < res.argmax))) {
      res.value = std::max(res.value, fm);
      res.argmax = coeffs;
    }
    if (sm > res.star_value + kTieTolerance ||
        (sm >= res.star_value - kTieTolerance &&
         (res.star_argmax.empty() || coeffs < res.star_argmax))) {
      res.star_value = std::max(res.star_value, sm);
      res.star_argmax = coeffs;
    }
  }
  return res;
}

}  // namespace expsum

#endif  // EXPSUM_MAXIMIZER_HPP
