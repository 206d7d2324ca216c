#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numeric>

#include "expsum/maximizer.hpp"

using namespace expsum;

TEST_CASE("full linear sums vanish: M_1 = 0") {
  for (u64 p : {5, 7, 13}) {
    PrimeField field(p);
    const MaxResult r = max_sum_exhaustive({1}, field);
    CHECK(r.value <= 1e-9);
    CHECK(r.evaluations == p - 1);
    // the star maximum of a linear sum is 1 (each is a full sum minus 1)
    CHECK(r.star_value == Catch::Approx(1.0).margin(1e-9));
  }
}

TEST_CASE("M_2 over F_7 is the Gauss magnitude sqrt(7)") {
  PrimeField field(7);
  const MaxResult ex = max_sum_exhaustive({2}, field);
  CHECK(ex.value == Catch::Approx(std::sqrt(7.0)).margin(1e-9));
  CHECK(ex.evaluations == 6);
  CHECK(ex.argmax == std::vector<u64>{1});  // all coefficients tie; lex smallest wins

  const MaxResult orb = max_sum_orbits({2}, field);
  CHECK(orb.value == Catch::Approx(ex.value).margin(1e-9));
  CHECK(orb.evaluations == 2);  // e = gcd(2,6) = 2: representatives {1, g}
  CHECK(orb.argmax == ex.argmax);
  CHECK(orb.reduced);
}

TEST_CASE("orbit representative counts match the stabilizer arithmetic") {
  PrimeField field(7);
  // binomial (1,3): e = 1, orbit size 6, 36/6 = 6 representatives
  CHECK(max_sum_orbits({1, 3}, field).evaluations == 6);
  // (2,4): e = gcd(2,4,6) = 2, orbit size 3, 36/3 = 12 representatives
  CHECK(max_sum_orbits({2, 4}, field).evaluations == 12);
}

TEST_CASE("orbit reduction equals exhaustive search") {
  // spot selection; the full sweep is in the acceptance suite
  struct Case { u64 p; std::vector<u64> exps; };
  const Case cases[] = {
      {7, {1, 3}}, {7, {2, 4}}, {13, {1, 5}}, {13, {3, 4, 8}},
      {17, {2, 6}}, {31, {1, 7}}, {11, {2, 5, 10}},
  };
  for (const auto& c : cases) {
    PrimeField field(c.p);
    const MaxResult ex = max_sum_exhaustive(c.exps, field);
    const MaxResult orb = max_sum_orbits(c.exps, field);
    CHECK(std::abs(ex.value - orb.value) <= 1e-9);
    CHECK(std::abs(ex.star_value - orb.star_value) <= 1e-9);
    CHECK(ex.argmax == orb.argmax);
    CHECK(ex.star_argmax == orb.star_argmax);
    CHECK(orb.evaluations <= ex.evaluations);
    // representative count is (p-1)^{terms} * e / (p-1)
    u64 e = c.p - 1;
    for (u64 n : c.exps) e = std::gcd(e, n);
    u64 expect = e;
    for (std::size_t i = 1; i < c.exps.size(); ++i) expect *= (c.p - 1);
    CHECK(orb.evaluations == expect);
  }
}

TEST_CASE("M is invariant under exponent scaling by units mod p-1") {
  PrimeField field(13);
  const std::vector<u64> base{1, 3};
  const MaxResult ref = max_sum_exhaustive(base, field);
  for (u64 u = 1; u < 12; ++u) {
    if (std::gcd<u64>(u, 12) != 1) continue;
    std::vector<u64> scaled;
    for (u64 n : base) {
      const u64 m = (n * u) % 12;
      scaled.push_back(m == 0 ? 12 : m);
    }
    if (scaled[0] == scaled[1]) continue;
    const MaxResult got = max_sum_exhaustive(scaled, field);
    CHECK(got.value == Catch::Approx(ref.value).margin(1e-9));
  }
}

TEST_CASE("M dominates spot sums") {
  PrimeField field(13);
  const MaxResult r = max_sum_orbits({1, 4}, field);
  Evaluator ev(field);
  const auto prep = ev.prepare({1, 4});
  for (u64 a : {u64(1), u64(5), u64(12)}) {
    for (u64 b : {u64(2), u64(7)}) {
      double fm, sm;
      ev.magnitudes(prep, {a, b}, fm, sm);
      CHECK(r.value >= fm - 1e-9);
      CHECK(r.star_value >= sm - 1e-9);
    }
  }
}

TEST_CASE("cost cap refusal is loud") {
  PrimeField field(101);
  MaxCaps caps;
  caps.max_cost = 1000;
  CHECK_THROWS_AS(max_sum_exhaustive({1, 3}, field, caps), CapExceeded);
  CHECK_THROWS_AS(max_sum_orbits({1, 3}, field, caps), CapExceeded);
}

TEST_CASE("results are independent of thread count") {
  PrimeField field(17);
  const MaxResult t1 = max_sum_exhaustive({1, 3, 5}, field, {}, 1);
  const MaxResult t4 = max_sum_exhaustive({1, 3, 5}, field, {}, 4);
  CHECK(t1.value == t4.value);  // bitwise
  CHECK(t1.star_value == t4.star_value);
  CHECK(t1.argmax == t4.argmax);
  CHECK(t1.star_argmax == t4.star_argmax);

  const MaxResult o1 = max_sum_orbits({1, 3, 5}, field, {}, 1);
  const MaxResult o4 = max_sum_orbits({1, 3, 5}, field, {}, 4);
  CHECK(o1.value == o4.value);
  CHECK(o1.argmax == o4.argmax);
}

TEST_CASE("sampled mode is a labeled lower bound") {
  PrimeField field(31);
  const MaxResult exact = max_sum_orbits({1, 7}, field);
  const MaxResult sampled = max_sum_sampled({1, 7}, field, 200, 42);
  CHECK(sampled.sampled_lower_bound);
  CHECK(sampled.value <= exact.value + 1e-9);
  CHECK(sampled.evaluations == 200);
  // deterministic for a fixed seed
  const MaxResult again = max_sum_sampled({1, 7}, field, 200, 42);
  CHECK(sampled.value == again.value);
  CHECK(sampled.argmax == again.argmax);
}
