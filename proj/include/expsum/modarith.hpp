// Prime-field arithmetic: primality, primitive roots, discrete-log tables,
// and the gcd invariants (d, e, D, Gamma, Delta, s, r, h) attached to a
// sparse exponent vector.
#ifndef EXPSUM_MODARITH_HPP
#define EXPSUM_MODARITH_HPP

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace expsum {

using u32 = std::uint32_t;
using u64 = std::uint64_t;
using u128 = unsigned __int128;

// Largest modulus for which pow/dlog tables are built (tables are O(p)).
inline constexpr u64 kTableFieldCap = u64(1) << 31;

inline u64 mul_mod(u64 a, u64 b, u64 m) {
  return static_cast<u64>((u128(a) * b) % m);
}

inline u64 pow_mod(u64 base, u64 exp, u64 m) {
  if (m == 1) return 0;
  u64 r = 1;
  base %= m;
  while (exp > 0) {
    if (exp & 1) r = mul_mod(r, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return r;
}

// Deterministic Miller-Rabin, valid for all n < 2^64.
inline bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull,
                29ull, 31ull, 37ull}) {
    if (n == q) return true;
    if (n % q == 0) return false;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) { d >>= 1; ++s; }
  for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull,
                29ull, 31ull, 37ull}) {
    u64 x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 0; i < s - 1; ++i) {
      x = mul_mod(x, x, n);
      if (x == n - 1) { composite = false; break; }
    }
    if (composite) return false;
  }
  return true;
}

// Distinct prime factors by trial division (inputs here are <= p-1 < 2^31,
// or 64-bit when a table-free field is used with small factors).
inline std::vector<u64> prime_factors(u64 n) {
  std::vector<u64> out;
  for (u64 q = 2; q * q <= n; q += (q == 2 ? 1 : 2)) {
    if (n % q == 0) {
      out.push_back(q);
      while (n % q == 0) n /= q;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

// Least k >= 1 with a^k = 1 (mod p). a must be a nonzero residue.
inline u64 multiplicative_order(u64 a, u64 p) {
  if (!is_prime(p)) throw std::invalid_argument("multiplicative_order: p not prime");
  a %= p;
  if (a == 0) throw std::invalid_argument("multiplicative_order: a is 0 mod p");
  u64 ord = p - 1;
  for (u64 q : prime_factors(p - 1)) {
    while (ord % q == 0 && pow_mod(a, ord / q, p) == 1) ord /= q;
  }
  return ord;
}

// Smallest positive primitive root of p.
inline u64 primitive_root(u64 p) {
  if (!is_prime(p)) throw std::invalid_argument("primitive_root: p not prime");
  if (p == 2) return 1;
  const auto factors = prime_factors(p - 1);
  for (u64 g = 2; g < p; ++g) {
    bool ok = true;
    for (u64 q : factors) {
      if (pow_mod(g, (p - 1) / q, p) == 1) { ok = false; break; }
    }
    if (ok) return g;
  }
  throw std::logic_error("primitive_root: none found");  // unreachable for prime p
}

// The arena everything runs in: a prime p, its smallest primitive root g,
// and (for p below the table cap) mutually inverse pow/dlog tables on
// {0..p-2} <-> {1..p-1}.
class PrimeField {
 public:
  explicit PrimeField(u64 p, bool build_tables = true) : p_(p) {
    if (!is_prime(p)) throw std::invalid_argument("PrimeField: " + std::to_string(p) + " is not prime");
    g_ = primitive_root(p);
    if (build_tables) {
      if (p >= kTableFieldCap)
        throw std::invalid_argument("PrimeField: p too large for tables; use PrimeField::table_free");
      pow_.resize(p - 1);
      dlog_.assign(p, 0);
      u64 x = 1;
      for (u64 j = 0; j + 1 < p; ++j) {
        pow_[j] = static_cast<u32>(x);
        dlog_[x] = static_cast<u32>(j);
        x = (x * g_) % p;
      }
      if (x != 1) throw std::logic_error("PrimeField: primitive root order check failed");
    }
  }

  static PrimeField table_free(u64 p) { return PrimeField(p, false); }

  u64 p() const { return p_; }
  u64 g() const { return g_; }
  bool has_tables() const { return !pow_.empty(); }

  // g^j mod p, 0 <= j <= p-2.
  u32 pow_of(u64 j) const { return pow_[j]; }
  // index of nonzero residue x.
  u32 dlog_of(u64 x) const { return dlog_[x]; }

  const std::vector<u32>& pow_table() const { return pow_; }
  const std::vector<u32>& dlog_table() const { return dlog_; }

  void require_tables(const char* who) const {
    if (!has_tables())
      throw std::invalid_argument(std::string(who) + ": field has no pow/dlog tables (table-free mode)");
  }

 private:
  u64 p_;
  u64 g_;
  std::vector<u32> pow_;
  std::vector<u32> dlog_;
};

// a_0 x^{n_0} + ... + a_nu x^{n_nu}: pairwise-distinct positive exponents,
// coefficients in [1, p-1].
struct SparsePoly {
  std::vector<u64> exponents;
  std::vector<u64> coefficients;

  SparsePoly() = default;
  SparsePoly(std::vector<u64> exps, std::vector<u64> coeffs)
      : exponents(std::move(exps)), coefficients(std::move(coeffs)) {}

  std::size_t terms() const { return exponents.size(); }
  // number of monomials is nu + 1
  std::size_t nu() const { return exponents.empty() ? 0 : exponents.size() - 1; }

  void validate(const PrimeField& field) const {
    if (exponents.empty()) throw std::invalid_argument("SparsePoly: no terms");
    if (exponents.size() != coefficients.size())
      throw std::invalid_argument("SparsePoly: exponent/coefficient length mismatch");
    for (u64 n : exponents)
      if (n == 0) throw std::invalid_argument("SparsePoly: exponents must be >= 1");
    auto sorted = exponents;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw std::invalid_argument("SparsePoly: exponents must be pairwise distinct");
    for (u64 a : coefficients)
      if (a == 0 || a >= field.p())
        throw std::invalid_argument("SparsePoly: coefficients must lie in [1, p-1]");
  }
};

// gcd with the convention gcd over an empty difference set = p-1 (so that a
// monomial gets d = p-1, e = gcd(p-1, n_0), s = 1, r = e).
struct InvariantProfile {
  u64 p = 0;
  u64 d = 0;                    // gcd(n_1-n_0, ..., n_nu-n_0, p-1)
  u64 e = 0;                    // gcd(d, n_0)
  u64 delta = 0;                // d / e
  u64 s = 0;                    // (p-1) / d
  u64 r = 0;                    // e * s  ( = gcd(n_0 s, p-1) )
  u64 h = 0;                    // gcd(n_0, p-1)
  std::optional<u64> D;         // min_i max_{j!=i} gcd(n_j-n_i, p-1); needs nu >= 1
  std::optional<u64> Gamma;     // (p-1) / D

  bool consistent() const {
    if (e == 0 || d % e != 0 || (p - 1) % d != 0) return false;
    if (delta * e != d || s * d != p - 1 || r != e * s) return false;
    if (D && (d > *D || (p - 1) % *D != 0 || *Gamma * *D != p - 1)) return false;
    return true;
  }
};

inline u64 gcd_diff(u64 a, u64 b, u64 m) {
  // gcd(|a-b|, m), safe for either order.
  u64 diff = a > b ? a - b : b - a;
  return std::gcd(diff, m);
}

inline InvariantProfile invariant_profile(const SparsePoly& poly, const PrimeField& field) {
  poly.validate(field);
  const u64 p = field.p();
  const u64 pm1 = p - 1;
  const auto& n = poly.exponents;

  InvariantProfile prof;
  prof.p = p;
  u64 d = pm1;
  for (std::size_t i = 1; i < n.size(); ++i) d = std::gcd(d, gcd_diff(n[i], n[0], pm1));
  prof.d = d;
  prof.e = std::gcd(d, n[0]);
  prof.delta = d / prof.e;
  prof.s = pm1 / d;
  prof.r = prof.e * prof.s;
  prof.h = std::gcd(n[0], pm1);

  if (n.size() >= 2) {
    u64 D = pm1;
    for (std::size_t i = 0; i < n.size(); ++i) {
      u64 mx = 1;
      for (std::size_t j = 0; j < n.size(); ++j) {
        if (j == i) continue;
        mx = std::max(mx, gcd_diff(n[j], n[i], pm1));
      }
      D = std::min(D, mx);
    }
    prof.D = D;
    prof.Gamma = pm1 / D;
  }
  return prof;
}

// One profile per choice of base exponent (rotation i puts n_i first).
// The invariants distinguish n_0; relabeling lets callers minimize Delta.
inline std::vector<InvariantProfile> invariant_profile_rotations(const SparsePoly& poly,
                                                                 const PrimeField& field) {
  std::vector<InvariantProfile> out;
  out.reserve(poly.terms());
  for (std::size_t i = 0; i < poly.terms(); ++i) {
    SparsePoly rot = poly;
    std::rotate(rot.exponents.begin(), rot.exponents.begin() + i, rot.exponents.end());
    std::rotate(rot.coefficients.begin(), rot.coefficients.begin() + i, rot.coefficients.end());
    out.push_back(invariant_profile(rot, field));
  }
  return out;
}

}  // namespace expsum

#endif  // EXPSUM_MODARITH_HPP
