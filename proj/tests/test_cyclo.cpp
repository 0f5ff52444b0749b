#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "quartic/arith.hpp"
#include "quartic/cyclo.hpp"

using namespace quartic;
namespace cy = quartic::cyclo;

namespace {

constexpr double kTol = 1e-9;

// Schoolbook product of integer polynomials (ascending coefficients).
std::vector<int64_t> poly_mul(const std::vector<int64_t>& a, const std::vector<int64_t>& b) {
  std::vector<int64_t> out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

}  // namespace

TEST_SUITE("cyclo") {

TEST_CASE("closed form matches the literal complex product") {
  for (uint64_t n = 1; n <= cy::kNumericCap; ++n) {
    const auto cf = cy::p_closed(n);
    CHECK(cf.n == n);
    for (uint64_t k : {uint64_t{1}, uint64_t{4}}) {
      const auto num = cy::p_eval_numeric(n, k);
      CHECK(std::abs(num.unit - cy::phase_value(cf.phase)) < kTol);
      CHECK(std::abs(num.log_magnitude - cf.log_magnitude()) <
            kTol * std::max(1.0, cf.log_magnitude()));
    }
  }
  // The pair factors only involve zeta^k, so k cancels out of the product.
  const auto a = cy::p_eval_numeric(24, 1);
  const auto b = cy::p_eval_numeric(24, 7);
  CHECK(std::abs(a.unit - b.unit) < 1e-12);
  CHECK(std::abs(a.log_magnitude - b.log_magnitude) < 1e-12);
}

TEST_CASE("squared phase matches the square-sign formula") {
  for (uint64_t n = 1; n <= 2000; ++n)
    CHECK(cy::phase_squared_sign(cy::p_closed(n).phase) == cy::expected_square_sign(n));
}

TEST_CASE("phase helpers") {
  CHECK(cy::phase_squared_sign(cy::Phase::PlusOne) == 1);
  CHECK(cy::phase_squared_sign(cy::Phase::MinusOne) == 1);
  CHECK(cy::phase_squared_sign(cy::Phase::PlusI) == -1);
  CHECK(cy::phase_squared_sign(cy::Phase::MinusI) == -1);
  CHECK(cy::phase_value(cy::Phase::MinusI) == std::complex<double>(0, -1));
  CHECK(cy::p_closed(1).log_magnitude() == 0.0);
  CHECK_THROWS_AS(cy::p_closed(0), std::domain_error);
  CHECK_THROWS_AS(cy::p_eval_numeric(cy::kNumericCap + 1, 1), std::domain_error);
  CHECK_THROWS_AS(cy::p_eval_numeric(4, 0), std::domain_error);
}

TEST_CASE("cyclotomic polynomials over the integers") {
  CHECK(cy::cyclotomic_polynomial(1) == std::vector<int64_t>{-1, 1});
  CHECK(cy::cyclotomic_polynomial(2) == std::vector<int64_t>{1, 1});
  CHECK(cy::cyclotomic_polynomial(6) == std::vector<int64_t>{1, -1, 1});
  CHECK(cy::cyclotomic_polynomial(12) == std::vector<int64_t>{1, 0, -1, 0, 1});
  const auto c105 = cy::cyclotomic_polynomial(105);
  REQUIRE(c105.size() == 49);  // degree phi(105) = 48
  CHECK(*std::min_element(c105.begin(), c105.end()) == -2);
  CHECK(c105.back() == 1);
  CHECK_THROWS_AS(cy::cyclotomic_polynomial(0), std::domain_error);

  // prod over d | n of Phi_d(x) = x^n - 1.
  for (uint64_t n = 1; n <= 30; ++n) {
    std::vector<int64_t> prod = {1};
    for (uint64_t d = 1; d <= n; ++d)
      if (n % d == 0) prod = poly_mul(prod, cy::cyclotomic_polynomial(d));
    std::vector<int64_t> want(n + 1, 0);
    want[0] = -1;
    want[n] = 1;
    CHECK(prod == want);
  }
}

TEST_CASE("the (p-1)-st cyclotomic polynomial splits at the primitive roots") {
  for (uint64_t p : primes_in_range(2, 100))
    CHECK(cy::cyclotomic_split_check(p));
  CHECK_THROWS_AS(cy::cyclotomic_split_check(10), std::domain_error);
}

TEST_CASE("mod-p denominator: direct product equals the reduced closed form") {
  for (uint64_t p : {uint64_t{17}, uint64_t{41}, uint64_t{73}, uint64_t{89}, uint64_t{97},
                     uint64_t{113}}) {
    PrimeContext ctx(p);
    for (uint64_t g : ctx.primitive_roots())
      CHECK(cy::denominator_product(ctx, g) == cy::g_poly_value(ctx, g));
  }
  struct Row { uint64_t p, g, value; };
  for (const auto& r : {Row{17, 3, 4}, Row{41, 6, 1}, Row{73, 5, 72}, Row{89, 3, 1},
                        Row{97, 5, 22}, Row{113, 3, 98}}) {
    PrimeContext ctx(r.p);
    CHECK(cy::g_poly_value(ctx, r.g).value == r.value);
  }
  PrimeContext p17(17);
  CHECK_THROWS_AS(cy::g_poly_value(p17, 2), std::invalid_argument);
  CHECK_THROWS_AS(cy::g_poly_value(PrimeContext(13), 2), std::domain_error);
}

TEST_CASE("floor form is decided by p mod 16") {
  // 9 (mod 16): agrees at every root.
  for (uint64_t p : {uint64_t{41}, uint64_t{73}, uint64_t{89}, uint64_t{137}}) {
    PrimeContext ctx(p);
    for (uint64_t g : ctx.primitive_roots())
      CHECK(cy::denominator_floor_form(ctx, g) == cy::denominator_product(ctx, g));
  }
  // 1 (mod 16): off by exactly -1 at every root.
  for (uint64_t p : {uint64_t{17}, uint64_t{97}, uint64_t{113}, uint64_t{193}}) {
    PrimeContext ctx(p);
    for (uint64_t g : ctx.primitive_roots()) {
      const auto direct = cy::denominator_product(ctx, g);
      const auto floored = cy::denominator_floor_form(ctx, g);
      CHECK(residue_sign(floored * inverse(direct)) == -1);
    }
  }
}

}  // TEST_SUITE
