// Exact integer counts: value histograms N(lambda), collision counts R,
// root counts Q, power-sum energies T_t and their multi-term extensions,
// and additive energy E(Gamma) of multiplicative subgroups. No floating
// point anywhere; wide counts are 128-bit.
#ifndef EXPSUM_COUNTING_HPP
#define EXPSUM_COUNTING_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "expsum/modarith.hpp"
#include "expsum/parallel.hpp"

namespace expsum {

struct CapExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline std::string u128_to_string(u128 v) {
  if (v == 0) return "0";
  std::string s;
  while (v > 0) {
    s.push_back(char('0' + int(v % 10)));
    v /= 10;
  }
  return {s.rbegin(), s.rend()};
}

struct ValueHistogram {
  std::vector<u64> counts;  // indexed by residue 0..p-1

  u64 total_mass() const {
    u64 t = 0;
    for (u64 c : counts) t += c;
    return t;
  }
};

enum class EnergyMethod { naive, structured };

struct EnergyCount {
  u128 value = 0;
  EnergyMethod method = EnergyMethod::structured;
};

// counts(lambda) = #{x in F_p^* : f(x) = lambda}; total mass p-1.
// Workers count disjoint residue ranges into partial histograms, merged by
// addition, so the result is independent of the thread count.
inline ValueHistogram value_histogram(const SparsePoly& poly, const PrimeField& field,
                                      unsigned threads = 1) {
  poly.validate(field);
  field.require_tables("value_histogram");
  const u64 p = field.p();
  const u64 pm1 = p - 1;
  ValueHistogram hist;
  hist.counts.assign(p, 0);
  // f(x) through dlog indices: x^{n_i} = g^{dlog(x) * n_i mod (p-1)}.
  std::vector<u64> strides(poly.terms());
  for (std::size_t i = 0; i < poly.terms(); ++i) strides[i] = poly.exponents[i] % pm1;
  const unsigned workers = resolve_threads(threads);
  std::vector<std::vector<u64>> partial(workers > 1 ? workers : 0);
  parallel_chunks(pm1, threads, [&](unsigned w, u64 begin, u64 end) {
    std::vector<u64>& counts = workers > 1 ? (partial[w].assign(p, 0), partial[w]) : hist.counts;
    for (u64 i = begin; i < end; ++i) {
      const u64 k = field.dlog_of(i + 1);
      u128 acc = 0;
      for (std::size_t t = 0; t < strides.size(); ++t)
        acc += u128(poly.coefficients[t]) * field.pow_of((k * strides[t]) % pm1);
      ++counts[static_cast<u64>(acc % p)];
    }
  });
  for (const auto& part : partial)
    for (u64 l = 0; l < u64(part.size()); ++l) hist.counts[l] += part[l];
  return hist;
}

// R = #{(x,y) in (F_p^*)^2 : f(x) = f(y)} = sum_lambda N(lambda)^2.
inline u64 self_collisions(const SparsePoly& poly, const PrimeField& field) {
  const ValueHistogram hist = value_histogram(poly, field);
  u64 r = 0;
  for (u64 c : hist.counts) r += c * c;
  return r;
}

// Q = #{x in F_p^* : f(x) = 0}.
inline u64 root_count(const SparsePoly& poly, const PrimeField& field) {
  return value_histogram(poly, field).counts[0];
}

namespace detail {

// Multiset {x^t mod p : x in F_p^*} as a histogram. Support is the subgroup
// of order (p-1)/gcd(t,p-1), each value hit gcd(t,p-1) times.
inline std::vector<u64> power_histogram(u64 t, const PrimeField& field) {
  field.require_tables("power_histogram");
  const u64 p = field.p();
  const u64 pm1 = p - 1;
  const u64 stride = t % pm1;
  std::vector<u64> hist(p, 0);
  for (u64 k = 0; k < pm1; ++k) ++hist[field.pow_of((k * stride) % pm1)];
  return hist;
}

// Additive convolution mod p of a dense histogram with a sparse one.
// Workers take disjoint shift ranges; partial outputs merge by addition.
inline std::vector<u64> convolve_mod_p(const std::vector<u64>& a, const std::vector<u64>& b,
                                       u64 p, unsigned threads = 1) {
  std::vector<u64> out(p, 0);
  const unsigned workers = resolve_threads(threads);
  std::vector<std::vector<u64>> partial(workers > 1 ? workers : 0);
  parallel_chunks(p, threads, [&](unsigned w, u64 begin, u64 end) {
    std::vector<u64>& acc = workers > 1 ? (partial[w].assign(p, 0), partial[w]) : out;
    for (u64 s = begin; s < end; ++s) {
      if (b[s] == 0) continue;
      const u64 weight = b[s];
      for (u64 l = 0; l < p; ++l) {
        if (a[l] == 0) continue;
        acc[(l + s) % p] += a[l] * weight;
      }
    }
  });
  for (const auto& part : partial)
    for (u64 l = 0; l < u64(part.size()); ++l) out[l] += part[l];
  return out;
}

inline u128 sum_of_squares(const std::vector<u64>& h) {
  u128 t = 0;
  for (u64 c : h) t += u128(c) * c;
  return t;
}

}  // namespace detail

// E(Gamma) for the unique subgroup of the given order: the number of
// quadruples in Gamma^4 with u1 + u2 = v1 + v2 mod p.
inline EnergyCount subgroup_energy(u64 order, const PrimeField& field, unsigned threads = 1) {
  field.require_tables("subgroup_energy");
  const u64 p = field.p();
  const u64 pm1 = p - 1;
  if (order == 0 || pm1 % order != 0)
    throw std::invalid_argument("subgroup_energy: order must divide p-1");
  const u64 step = pm1 / order;
  std::vector<u64> membership(p, 0);
  for (u64 j = 0; j < order; ++j) membership[field.pow_of(j * step)] = 1;
  const std::vector<u64> pair_sums = detail::convolve_mod_p(membership, membership, p, threads);
  EnergyCount out;
  out.value = detail::sum_of_squares(pair_sums);
  out.method = EnergyMethod::structured;
  return out;
}

// T_t = #{(u,v,x,y) in (F_p^*)^4 : u^t + v^t = x^t + y^t mod p}.
//
// naive      — definition-level O(p^2) enumeration (cross-check path).
// structured — t-th power histogram, pairwise-sum histogram over its
//              support in O(k^2) with k = (p-1)/gcd(t,p-1), square-sum.
inline EnergyCount t_energy(u64 t, const PrimeField& field,
                            EnergyMethod method = EnergyMethod::structured,
                            u64 naive_cap = 10000, unsigned threads = 1) {
  field.require_tables("t_energy");
  if (t == 0) throw std::invalid_argument("t_energy: t must be >= 1");
  const u64 p = field.p();
  EnergyCount out;
  out.method = method;
  if (method == EnergyMethod::naive) {
    if (p > naive_cap)
      throw CapExceeded("t_energy: naive method refused for p > " + std::to_string(naive_cap));
    const u64 pm1 = p - 1;
    const u64 stride = t % pm1;
    std::vector<u64> pw(p, 0);
    for (u64 x = 1; x < p; ++x) pw[x] = field.pow_of((u64(field.dlog_of(x)) * stride) % pm1);
    std::vector<u64> pair_sums(p, 0);
    for (u64 u = 1; u < p; ++u)
      for (u64 v = 1; v < p; ++v) ++pair_sums[(pw[u] + pw[v]) % p];
    out.value = detail::sum_of_squares(pair_sums);
    return out;
  }
  const std::vector<u64> powers = detail::power_histogram(t, field);
  const std::vector<u64> pair_sums = detail::convolve_mod_p(powers, powers, p, threads);
  out.value = detail::sum_of_squares(pair_sums);
  return out;
}

// Number of solutions of
//   sum_{i=1}^{nu+1} u_i^t = sum_{i=1}^{nu+1} v_i^t  (mod p),  u_i, v_i in F_p^*.
// nu = 1 coincides with t_energy. Computed by nu-fold additive
// self-convolution of the t-th power histogram, then square-summing.
// Refuses loudly past the cost cap; never approximates.
inline EnergyCount t_nu_energy(u64 nu, u64 t, const PrimeField& field, u64 max_p = 0,
                               unsigned threads = 1) {
  field.require_tables("t_nu_energy");
  if (nu < 1 || nu > 3) throw std::invalid_argument("t_nu_energy: nu must be in [1, 3]");
  if (t == 0) throw std::invalid_argument("t_nu_energy: t must be >= 1");
  if (max_p == 0) max_p = (nu == 3) ? 2000 : (nu == 2 ? 20000 : (kTableFieldCap - 1));
  const u64 p = field.p();
  if (p > max_p)
    throw CapExceeded("t_nu_energy: p = " + std::to_string(p) + " exceeds cap " +
                      std::to_string(max_p) + " for nu = " + std::to_string(nu));
  // intermediate counts reach (p-1)^{nu+1} and must stay within u64
  u128 peak = 1;
  for (u64 i = 0; i <= nu; ++i) peak *= p - 1;
  if (peak > u128(UINT64_MAX))
    throw CapExceeded("t_nu_energy: intermediate counts would overflow at p = " +
                      std::to_string(p) + ", nu = " + std::to_string(nu));
  const std::vector<u64> powers = detail::power_histogram(t, field);
  std::vector<u64> w = powers;
  for (u64 i = 0; i < nu; ++i) w = detail::convolve_mod_p(w, powers, p, threads);
  EnergyCount out;
  out.value = detail::sum_of_squares(w);
  out.method = EnergyMethod::structured;
  return out;
}

}  // namespace expsum

#endif  // EXPSUM_COUNTING_HPP
