#include <catch2/catch_amalgamated.hpp>

#include <numeric>
#include <random>
#include <set>

#include "expsum/modarith.hpp"

using namespace expsum;

namespace {

// Trial-division oracle, independent of the Miller-Rabin path.
bool is_prime_trial(u64 n) {
  if (n < 2) return false;
  for (u64 d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

}  // namespace

TEST_CASE("is_prime matches trial division") {
  CHECK(is_prime(7));
  CHECK_FALSE(is_prime(1));
  CHECK(is_prime(1009));
  for (u64 n = 0; n <= 3000; ++n) CHECK(is_prime(n) == is_prime_trial(n));
  CHECK(is_prime(2147483647));  // 2^31 - 1
  CHECK_FALSE(is_prime(u64(3037000493) * 3037000493 % 2));  // even
}

TEST_CASE("primitive_root is smallest and has full order") {
  CHECK(primitive_root(7) == 3);
  CHECK(primitive_root(2) == 1);
  CHECK(primitive_root(11) == 2);

  // order-check oracle: g^k cycles through all nonzero residues
  for (u64 p : {3, 5, 7, 11, 13, 101, 1009}) {
    const u64 g = primitive_root(p);
    std::set<u64> seen;
    u64 x = 1;
    for (u64 k = 0; k + 1 < p; ++k) {
      seen.insert(x);
      x = x * g % p;
    }
    CHECK(seen.size() == p - 1);
    // nothing smaller works
    for (u64 c = 1; c < g; ++c) CHECK(multiplicative_order(c, p) < p - 1);
  }
}

TEST_CASE("multiplicative_order") {
  CHECK(multiplicative_order(2, 7) == 3);  // 2, 4, 1
  CHECK(multiplicative_order(1, 101) == 1);
  CHECK(multiplicative_order(3, 7) == 6);
  CHECK_THROWS_AS(multiplicative_order(0, 7), std::invalid_argument);
  CHECK_THROWS_AS(multiplicative_order(7, 7), std::invalid_argument);

  for (u64 p : {13, 31, 61}) {
    for (u64 a = 1; a < p; ++a) {
      const u64 ord = multiplicative_order(a, p);
      CHECK((p - 1) % ord == 0);
      CHECK(pow_mod(a, ord, p) == 1);
      // enumeration oracle
      u64 k = 1, x = a % p;
      while (x != 1) { x = x * a % p; ++k; }
      CHECK(ord == k);
    }
  }
}

TEST_CASE("PrimeField tables are mutually inverse bijections") {
  for (u64 p : {2, 3, 7, 31, 101, 1009}) {
    PrimeField field(p);
    CHECK(field.p() == p);
    CHECK(multiplicative_order(field.g(), p) == p - 1);
    std::set<u64> image;
    for (u64 j = 0; j + 1 < p; ++j) {
      const u64 x = field.pow_of(j);
      CHECK(x >= 1);
      CHECK(x < p);
      CHECK(field.dlog_of(x) == j);
      image.insert(x);
    }
    CHECK(image.size() == p - 1);
  }
  CHECK_THROWS_AS(PrimeField(64), std::invalid_argument);
  CHECK_THROWS_AS(PrimeField(1), std::invalid_argument);

  PrimeField big = PrimeField::table_free(2147483647);
  CHECK_FALSE(big.has_tables());
  CHECK_THROWS_AS(big.require_tables("test"), std::invalid_argument);
}

TEST_CASE("SparsePoly validation") {
  PrimeField field(7);
  CHECK_NOTHROW(SparsePoly({1, 3}, {2, 5}).validate(field));
  CHECK_THROWS(SparsePoly({1, 1}, {2, 5}).validate(field));    // duplicate exponent
  CHECK_THROWS(SparsePoly({0, 3}, {2, 5}).validate(field));    // zero exponent
  CHECK_THROWS(SparsePoly({1, 3}, {0, 5}).validate(field));    // zero coefficient
  CHECK_THROWS(SparsePoly({1, 3}, {2, 7}).validate(field));    // coefficient >= p
  CHECK_THROWS(SparsePoly({}, {}).validate(field));
}

TEST_CASE("invariant_profile worked examples") {
  {
    PrimeField field(31);
    auto prof = invariant_profile(SparsePoly({1, 7}, {1, 1}), field);
    CHECK(prof.d == 6);   // gcd(6, 30)
    CHECK(prof.e == 1);
    CHECK(prof.delta == 6);
    CHECK(prof.D.value() == 6);
    CHECK(prof.Gamma.value() == 5);
    CHECK(prof.s == 5);
    CHECK(prof.r == 5);
    CHECK(prof.h == 1);
    CHECK(prof.consistent());
  }
  {
    PrimeField field(13);
    auto prof = invariant_profile(SparsePoly({3, 6, 9}, {1, 1, 1}), field);
    CHECK(prof.d == 3);
    CHECK(prof.e == 3);
    CHECK(prof.delta == 1);
    CHECK(prof.D.value() == 3);  // minimum attained at i = 1
    CHECK(prof.Gamma.value() == 4);
    CHECK(prof.consistent());
  }
  {
    PrimeField field(5);
    auto prof = invariant_profile(SparsePoly({1, 2}, {1, 1}), field);
    CHECK(prof.d == 1);
    CHECK(prof.e == 1);
    CHECK(prof.delta == 1);
  }
}

TEST_CASE("invariant_profile monomial: D and Gamma undefined, signalled") {
  PrimeField field(31);
  auto prof = invariant_profile(SparsePoly({4}, {2}), field);
  CHECK_FALSE(prof.D.has_value());
  CHECK_FALSE(prof.Gamma.has_value());
  CHECK(prof.d == 30);               // empty difference set: d = p-1
  CHECK(prof.e == std::gcd<u64>(30, 4));
  CHECK(prof.s == 1);
  CHECK(prof.r == prof.e);
}

TEST_CASE("invariant_profile algebraic invariants on random polynomials") {
  std::mt19937_64 rng(12345);
  for (u64 p : {13, 31, 61, 101}) {
    PrimeField field(p);
    for (int trial = 0; trial < 200; ++trial) {
      const std::size_t terms = 2 + rng() % 3;
      std::set<u64> exps;
      while (exps.size() < terms) exps.insert(1 + rng() % (3 * (p - 1)));
      std::vector<u64> n(exps.begin(), exps.end());
      std::shuffle(n.begin(), n.end(), rng);
      std::vector<u64> coeffs(terms, 1);
      auto prof = invariant_profile(SparsePoly(n, coeffs), field);

      CHECK(prof.consistent());
      CHECK(prof.delta * prof.e == prof.d);
      CHECK(prof.s * prof.d == p - 1);
      CHECK(prof.r == std::gcd(n[0] * prof.s, p - 1));
      CHECK(prof.d <= prof.D.value());
      CHECK(prof.D.value() <= p - 1);
      CHECK((p - 1) % prof.d == 0);
      CHECK(prof.d % prof.e == 0);
      for (std::size_t i = 1; i < n.size(); ++i) {
        const u64 diff = n[i] > n[0] ? n[i] - n[0] : n[0] - n[i];
        CHECK(std::gcd(diff, p - 1) % prof.d == 0);  // d | gcd(n_i - n_0, p-1)
      }
    }
  }
}

TEST_CASE("binomial identity e = gcd(d, m) = gcd(m, n, p-1)") {
  for (u64 p : {13, 31, 101}) {
    PrimeField field(p);
    for (u64 m = 1; m < 20; ++m) {
      for (u64 n = m + 1; n < 20; ++n) {
        auto prof = invariant_profile(SparsePoly({m, n}, {1, 1}), field);
        CHECK(prof.e == std::gcd(std::gcd(m, n), p - 1));
        CHECK(prof.e == std::gcd(prof.d, m));
      }
    }
  }
}

TEST_CASE("rotation helper exposes every base-exponent choice") {
  PrimeField field(31);
  SparsePoly poly({2, 7, 12}, {1, 2, 3});
  auto profs = invariant_profile_rotations(poly, field);
  REQUIRE(profs.size() == 3);
  for (const auto& prof : profs) CHECK(prof.consistent());
  // d depends on the base exponent through the differences mod p-1
  CHECK(profs[0].h == std::gcd<u64>(2, 30));
  CHECK(profs[1].h == std::gcd<u64>(7, 30));
  CHECK(profs[2].h == std::gcd<u64>(12, 30));
}
