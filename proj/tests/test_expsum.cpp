#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <random>
#include <set>

#include "expsum/expsum.hpp"

using namespace expsum;

namespace {

// Definition-level oracle: f(x) by square-and-multiply on the original
// exponents (no pow/dlog tables), e_p via std::polar, plain summation.
std::complex<double> oracle_sum(const SparsePoly& poly, u64 p, bool include_zero) {
  const double two_pi = 2.0 * std::acos(-1.0);
  std::complex<double> acc = include_zero ? std::complex<double>(1.0, 0.0) : 0.0;
  for (u64 x = 1; x < p; ++x) {
    u64 fx = 0;
    for (std::size_t i = 0; i < poly.terms(); ++i)
      fx = (fx + poly.coefficients[i] * pow_mod(x, poly.exponents[i], p)) % p;
    acc += std::polar(1.0, two_pi * double(fx) / double(p));
  }
  return acc;
}

}  // namespace

TEST_CASE("linear full sum vanishes, star sum is -1") {
  PrimeField field(7);
  SparsePoly poly({1}, {1});
  const SumResult full = eval_sum_full(poly, field);
  CHECK(full.magnitude <= full.error_budget);
  CHECK(full.term_count == 7);

  const SumResult star = eval_sum_star(poly, field);
  CHECK(star.real_part == Catch::Approx(-1.0).margin(1e-12));
  CHECK(std::abs(star.imag_part) <= star.error_budget);
  CHECK(star.term_count == 6);
}

TEST_CASE("quadratic Gauss sum has magnitude sqrt(p)") {
  PrimeField field(7);
  const SumResult r = eval_sum_full(SparsePoly({2}, {1}), field);
  CHECK(r.magnitude == Catch::Approx(std::sqrt(7.0)).margin(1e-6));

  for (u64 p : {3, 5, 11, 13, 101}) {
    PrimeField f(p);
    for (u64 a : {u64(1), p - 1, p / 2}) {
      if (a == 0) continue;
      const SumResult g = eval_sum_full(SparsePoly({2}, {a}), f);
      CHECK(g.magnitude == Catch::Approx(std::sqrt(double(p))).margin(1e-6));
    }
  }
}

TEST_CASE("x^6 over F_7 is constant 1 on the group") {
  PrimeField field(7);
  const SumResult star = eval_sum_star(SparsePoly({6}, {1}), field);
  // S* = 6 e_7(1): all six terms coincide
  CHECK(star.magnitude == Catch::Approx(6.0).margin(1e-9));
  const double two_pi_over_7 = 2.0 * std::acos(-1.0) / 7.0;
  CHECK(star.real_part == Catch::Approx(6.0 * std::cos(two_pi_over_7)).margin(1e-9));
  CHECK(star.imag_part == Catch::Approx(6.0 * std::sin(two_pi_over_7)).margin(1e-9));
}

TEST_CASE("matches definition-level oracle") {
  {
    PrimeField field(5);
    SparsePoly poly({3, 1}, {2, 1});
    const SumResult r = eval_sum_full(poly, field);
    const auto want = oracle_sum(poly, 5, true);
    CHECK(r.real_part == Catch::Approx(want.real()).margin(1e-9));
    CHECK(r.imag_part == Catch::Approx(want.imag()).margin(1e-9));
  }
  {
    PrimeField field(11);
    SparsePoly poly({1, 3}, {1, 1});
    const SumResult r = eval_sum_star(poly, field);
    const auto want = oracle_sum(poly, 11, false);
    CHECK(r.real_part == Catch::Approx(want.real()).margin(1e-9));
    CHECK(r.imag_part == Catch::Approx(want.imag()).margin(1e-9));
  }
  std::mt19937_64 rng(777);
  for (u64 p : {13, 31, 61}) {
    PrimeField field(p);
    for (int trial = 0; trial < 30; ++trial) {
      const std::size_t terms = 1 + rng() % 3;
      std::set<u64> exps;
      while (exps.size() < terms) exps.insert(1 + rng() % (2 * p));
      std::vector<u64> n(exps.begin(), exps.end());
      std::vector<u64> a;
      for (std::size_t i = 0; i < terms; ++i) a.push_back(1 + rng() % (p - 1));
      SparsePoly poly(n, a);
      const SumResult r = eval_sum_full(poly, field);
      const auto want = oracle_sum(poly, p, true);
      CHECK(r.real_part == Catch::Approx(want.real()).margin(1e-8));
      CHECK(r.imag_part == Catch::Approx(want.imag()).margin(1e-8));
      CHECK(r.magnitude <= double(p) + r.error_budget);
    }
  }
}

TEST_CASE("batch evaluation is bitwise identical to single calls") {
  PrimeField field(7);
  std::vector<u64> exponents{1, 3};
  std::vector<std::vector<u64>> coeff_lists;
  for (u64 a = 1; a < 7; ++a)
    for (u64 b = 1; b < 7; ++b) coeff_lists.push_back({a, b});
  const auto batch = eval_batch(exponents, coeff_lists, field);
  REQUIRE(batch.size() == 36);
  for (std::size_t i = 0; i < batch.size(); ++i) {
    const SumResult single = eval_sum_full(SparsePoly(exponents, coeff_lists[i]), field);
    CHECK(batch[i].real_part == single.real_part);  // bitwise
    CHECK(batch[i].imag_part == single.imag_part);
    CHECK(batch[i].magnitude == single.magnitude);
  }

  CHECK(eval_batch(exponents, {}, field).empty());
  const auto one = eval_batch(exponents, {{2, 3}}, field);
  REQUIRE(one.size() == 1);
  CHECK(one[0].real_part == eval_sum_full(SparsePoly(exponents, {2, 3}), field).real_part);
}

TEST_CASE("conjugation symmetry: negated coefficients conjugate the sum") {
  PrimeField field(13);
  SparsePoly poly({1, 4}, {3, 7});
  SparsePoly conj({1, 4}, {13 - 3, 13 - 7});
  const SumResult a = eval_sum_full(poly, field);
  const SumResult b = eval_sum_full(conj, field);
  CHECK(a.magnitude == Catch::Approx(b.magnitude).margin(2 * (a.error_budget + b.error_budget)));
  CHECK(a.real_part == Catch::Approx(b.real_part).margin(1e-10));
  CHECK(a.imag_part == Catch::Approx(-b.imag_part).margin(1e-10));
}

TEST_CASE("substitution invariance: a_i -> a_i c^{n_i} preserves |S*|") {
  for (u64 p : {7, 13}) {
    PrimeField field(p);
    std::vector<u64> exps{1, 3};
    std::vector<u64> coeffs{2, p - 2};
    const double base = eval_sum_star(SparsePoly(exps, coeffs), field).magnitude;
    for (u64 c = 1; c < p; ++c) {
      std::vector<u64> moved(2);
      for (int i = 0; i < 2; ++i)
        moved[i] = coeffs[i] * pow_mod(c, exps[i], p) % p;
      const double got = eval_sum_star(SparsePoly(exps, moved), field).magnitude;
      CHECK(got == Catch::Approx(base).margin(1e-9));
    }
  }
}

TEST_CASE("exponent reduction mod p-1 leaves the group part unchanged") {
  PrimeField field(11);
  // 13 = 3 mod 10, 20 = 10 mod 10 -> reduce to p-1, never to 0
  SparsePoly raw({13, 20}, {4, 9});
  SparsePoly reduced({3, 10}, {4, 9});
  const SumResult s_raw = eval_sum_star(raw, field);
  const SumResult s_red = eval_sum_star(reduced, field);
  CHECK(s_raw.real_part == s_red.real_part);  // identical table walk
  CHECK(s_raw.imag_part == s_red.imag_part);
  // all stored exponents stay >= 1, so f(0) = 0 and S = S* + 1 regardless
  const SumResult f_raw = eval_sum_full(raw, field);
  const SumResult f_red = eval_sum_full(reduced, field);
  CHECK(f_raw.real_part == f_red.real_part);
  CHECK(f_raw.real_part == Catch::Approx(s_raw.real_part + 1.0).margin(1e-12));
}
