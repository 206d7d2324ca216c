// Exponent-family sweeps: expand a family spec over a prime range, compute
// the exact maximum M per row (orbit-reduced), evaluate the bound catalog,
// and report ratios. Cap refusals are recorded per row, never silently
// downgraded.
#ifndef EXPSUM_FAMILIES_HPP
#define EXPSUM_FAMILIES_HPP

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "expsum/bounds.hpp"
#include "expsum/maximizer.hpp"

namespace expsum {

struct FamilySpec {
  enum class Kind { fixed, divisors, fixed_difference, explicit_tuples };
  Kind kind = Kind::fixed;
  std::vector<u64> exponents;            // fixed
  u64 m = 1;                             // divisors: binomials (m, n) over n | p-1
  u64 difference = 0;                    // fixed_difference: (m, m + difference)
  std::vector<std::vector<u64>> tuples;  // explicit_tuples
  // optional sampling fallback: 0 means exact only
  u64 sample_count = 0;

  std::string describe() const {
    switch (kind) {
      case Kind::fixed: return "fixed(" + join_u64_brief(exponents) + ")";
      case Kind::divisors: return "divisors(m=" + std::to_string(m) + ")";
      case Kind::fixed_difference: return "difference(" + std::to_string(difference) + ")";
      case Kind::explicit_tuples: return "explicit(" + std::to_string(tuples.size()) + ")";
    }
    return "?";
  }

 private:
  static std::string join_u64_brief(const std::vector<u64>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) s += ";";
      s += std::to_string(v[i]);
    }
    return s;
  }
};

// The exponent tuples a family produces for a given prime.
inline std::vector<std::vector<u64>> expand_family(const FamilySpec& spec, u64 p) {
  std::vector<std::vector<u64>> out;
  switch (spec.kind) {
    case FamilySpec::Kind::fixed:
      out.push_back(spec.exponents);
      break;
    case FamilySpec::Kind::divisors:
      for (u64 n = 1; n <= p - 1; ++n) {
        if ((p - 1) % n != 0) continue;
        if (n == spec.m) continue;  // exponents must stay distinct
        out.push_back({spec.m, n});
      }
      break;
    case FamilySpec::Kind::fixed_difference:
      if (spec.difference >= 1) {
        for (u64 m = 1; m + spec.difference <= p - 1; ++m)
          out.push_back({m, m + spec.difference});
      }
      break;
    case FamilySpec::Kind::explicit_tuples:
      out = spec.tuples;
      break;
  }
  return out;
}

struct BoundRatio {
  BoundValue bound;
  double ratio = std::numeric_limits<double>::quiet_NaN();  // M / bound
};

struct ScanRow {
  u64 p = 0;
  std::vector<u64> exponents;
  std::string status;  // "ok", "sampled-lower-bound", or "refused: ..."
  double m_full = std::numeric_limits<double>::quiet_NaN();
  double m_star = std::numeric_limits<double>::quiet_NaN();
  u64 evaluations = 0;
  bool reduced = false;
  std::vector<BoundRatio> bounds;
};

inline ScanRow scan_one(u64 p, const std::vector<u64>& exponents, const PrimeField& field,
                        const MaxCaps& caps, unsigned threads, u64 sample_count = 0,
                        u64 seed = 0) {
  ScanRow row;
  row.p = p;
  row.exponents = exponents;
  try {
    MaxResult r;
    try {
      r = max_sum_orbits(exponents, field, caps, threads);
      row.status = "ok";
    } catch (const CapExceeded&) {
      if (sample_count == 0) throw;
      r = max_sum_sampled(exponents, field, sample_count, seed);
      row.status = "sampled-lower-bound";
    }
    row.m_full = r.value;
    row.m_star = r.star_value;
    row.evaluations = r.evaluations;
    row.reduced = r.reduced;
    const BoundReport rep = best_bound(SparsePoly(exponents, std::vector<u64>(exponents.size(), 1)),
                                       field);
    for (const auto& b : rep.rows) {
      BoundRatio br;
      br.bound = b;
      if (b.applicable) br.ratio = row.m_full / *b.value;
      row.bounds.push_back(std::move(br));
    }
  } catch (const CapExceeded& ex) {
    row.status = std::string("refused: ") + ex.what();
  } catch (const std::invalid_argument& ex) {
    row.status = std::string("refused: ") + ex.what();
  }
  return row;
}

inline std::vector<ScanRow> scan_family(const FamilySpec& spec, const std::vector<u64>& primes,
                                        const MaxCaps& caps = {}, unsigned threads = 1,
                                        u64 seed = 0) {
  std::vector<ScanRow> rows;
  for (u64 p : primes) {
    PrimeField field(p);
    for (const auto& exps : expand_family(spec, p))
      rows.push_back(scan_one(p, exps, field, caps, threads, spec.sample_count, seed));
  }
  return rows;
}

inline std::vector<u64> primes_in_range(u64 lo, u64 hi) {
  std::vector<u64> out;
  for (u64 n = lo; n <= hi; ++n)
    if (is_prime(n)) out.push_back(n);
  return out;
}

}  // namespace expsum

#endif  // EXPSUM_FAMILIES_HPP
