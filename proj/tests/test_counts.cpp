#include <doctest.h>

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "quartic/arith.hpp"
#include "quartic/counts.hpp"

using namespace quartic;
namespace cn = quartic::counts;

namespace {

const std::vector<uint64_t> kOneMod8 = {17, 41, 73, 89, 97, 113};

}  // namespace

TEST_SUITE("counts") {

TEST_CASE("Omega partition at p = 17") {
  PrimeContext ctx(17);
  const auto om = cn::omega_sets(ctx);
  CHECK(om.omega_one == std::vector<uint64_t>{1, 4});
  CHECK(om.omega_minus_one == std::vector<uint64_t>{2, 8});
  CHECK(om.omega_i == std::vector<uint64_t>{3, 5});
  CHECK(om.omega_minus_i == std::vector<uint64_t>{6, 7});
  CHECK(om.omega_r == std::vector<uint64_t>{1, 2, 4, 8});
}

TEST_CASE("Omega sets partition (0, p/2) into equal classes") {
  for (uint64_t p : kOneMod8) {
    PrimeContext ctx(p);
    const auto om = cn::omega_sets(ctx);
    const uint64_t eighth = (p - 1) / 8;
    CHECK(om.omega_one.size() == eighth);
    CHECK(om.omega_minus_one.size() == eighth);
    CHECK(om.omega_i.size() == eighth);
    CHECK(om.omega_minus_i.size() == eighth);
    CHECK(om.omega_r.size() == (p - 1) / 4);

    std::vector<uint64_t> all;
    for (const auto* s : {&om.omega_one, &om.omega_minus_one, &om.omega_i, &om.omega_minus_i}) {
      CHECK(std::is_sorted(s->begin(), s->end()));
      all.insert(all.end(), s->begin(), s->end());
    }
    std::sort(all.begin(), all.end());
    std::vector<uint64_t> half((p - 1) / 2);
    std::iota(half.begin(), half.end(), uint64_t{1});
    CHECK(all == half);

    for (uint64_t t : om.omega_one) CHECK(ctx.quartic_class_of(t) == QuarticClass::One);
    for (uint64_t t : om.omega_minus_one) CHECK(ctx.quartic_class_of(t) == QuarticClass::MinusOne);
    for (uint64_t t : om.omega_i) CHECK(ctx.pow(t, (p - 1) / 4) == ctx.i_unit());
    for (uint64_t t : om.omega_minus_i) CHECK(ctx.pow(t, (p - 1) / 4) == p - ctx.i_unit());

    std::vector<uint64_t> qrs = om.omega_one;
    qrs.insert(qrs.end(), om.omega_minus_one.begin(), om.omega_minus_one.end());
    std::sort(qrs.begin(), qrs.end());
    CHECK(om.omega_r == qrs);
  }
  CHECK_THROWS_AS(cn::omega_sets(PrimeContext(13)), std::domain_error);
}

TEST_CASE("squared Omega products match the closed congruences") {
  for (uint64_t p : {uint64_t{17}, uint64_t{41}, uint64_t{73}, uint64_t{89}, uint64_t{97},
                     uint64_t{113}, uint64_t{137}, uint64_t{193}, uint64_t{233}}) {
    PrimeContext ctx(p);
    CHECK(cn::omega_square_products(ctx).all_match());
  }
  // Hand-computed at p = 17: (1*4)^2 = 16, (2*8)^2 = 1, (3*5)^2 = 4 = -i.
  PrimeContext ctx(17);
  const auto osp = cn::omega_square_products(ctx);
  CHECK(osp.prod_one_sq.value == 16);
  CHECK(osp.expect_one_sq.value == 16);        // (-1)^((17+7)/8) = -1
  CHECK(osp.prod_minus_one_sq.value == 1);
  CHECK(osp.expect_minus_one_sq.value == 1);   // (-1)^((17-1)/8) = +1
  CHECK(osp.prod_i_sq.value == 4);
  CHECK(osp.expect_i_sq.value == 4);           // -(2b/a) = -13 = 4
}

TEST_CASE("sign parameter bundle at the anchor primes") {
  struct Row {
    uint64_t p, a_product, b_product, d_p;
    int lambda;
    uint64_t epsilon;
  };
  const Row rows[] = {
      {17, 4, 16, 5, 1, 4},    {41, 40, 9, 23, 1, 15},  {73, 72, 27, 81, 1, 55},
      {89, 1, 34, 119, 1, 77}, {97, 75, 96, 140, 0, 79}, {113, 15, 1, 197, 1, 125},
  };
  for (const auto& r : rows) {
    PrimeContext ctx(r.p);
    const auto sp = cn::sign_params(ctx);
    CHECK(sp.p == r.p);
    CHECK(sp.a_product == r.a_product);
    CHECK(sp.b_product == r.b_product);
    CHECK(sp.d_p == r.d_p);
    CHECK(sp.lambda == r.lambda);
    CHECK(sp.epsilon_count == r.epsilon);
    CHECK(sp.epsilon_parity == static_cast<int>(r.epsilon % 2));
    CHECK(sp.lambda == static_cast<int>(r.d_p % 2));
  }
}

TEST_CASE("beta/gamma bits for p = 9 (mod 16), delta/mu per root otherwise") {
  struct BG { uint64_t p; int beta, gamma; };
  for (const auto& r : {BG{41, 1, 0}, BG{73, 1, 1}, BG{89, 0, 1}}) {
    PrimeContext ctx(r.p);
    const auto sp = cn::sign_params(ctx);
    REQUIRE(sp.beta.has_value());
    REQUIRE(sp.gamma.has_value());
    CHECK(*sp.beta == r.beta);
    CHECK(*sp.gamma == r.gamma);
    CHECK_FALSE(sp.delta.has_value());
    CHECK_THROWS_AS(cn::delta_mu_bits(ctx, sp, ctx.min_primitive_root()), std::domain_error);
    // (-1)^beta = A_p and (-1)^gamma = 2b B_p / a, by definition.
    CHECK(ctx.reduce(*sp.beta == 0 ? 1 : -1) == sp.a_product);
    const uint64_t rhs = ctx.mul(ctx.reduce(2 * static_cast<int64_t>(ctx.b())),
                                 ctx.mul(sp.b_product, ctx.inv(ctx.reduce(ctx.a()))));
    CHECK(ctx.reduce(*sp.gamma == 0 ? 1 : -1) == rhs);
  }

  struct DM { uint64_t p, g; int delta, mu; };
  for (const auto& r : {DM{17, 3, 1, 1}, DM{97, 5, 1, 0}, DM{113, 3, 1, 0}}) {
    PrimeContext ctx(r.p);
    const auto sp = cn::sign_params(ctx, r.g);
    REQUIRE(sp.delta.has_value());
    REQUIRE(sp.mu.has_value());
    CHECK(*sp.delta == r.delta);
    CHECK(*sp.mu == r.mu);
    CHECK_FALSE(sp.beta.has_value());
    CHECK(cn::delta_mu_bits(ctx, cn::sign_params(ctx), r.g) == std::pair(r.delta, r.mu));
  }
  CHECK_THROWS_AS(cn::sign_params(PrimeContext(17), uint64_t{2}), std::invalid_argument);
}

TEST_CASE("d_p from the pair loop equals d_p from the histogram") {
  for (uint64_t p : {uint64_t{17}, uint64_t{41}, uint64_t{73}, uint64_t{89}}) {
    PrimeContext ctx(p);
    const auto hist = cn::n_histogram(ctx);
    CHECK(cn::lambda_and_d(ctx) == cn::lambda_and_d_from_histogram(ctx, hist));
    const auto sp = cn::sign_params(ctx, std::nullopt, &hist);
    CHECK(sp.d_p == cn::lambda_and_d(ctx).first);
  }
}

TEST_CASE("N(t): enumeration, histogram, and closed form agree") {
  PrimeContext p41(41);
  CHECK(cn::n_count(p41, 1) == 0);
  CHECK(cn::n_count(p41, 2) == 1);
  CHECK(cn::n_count(p41, 40) == 0);
  REQUIRE(cn::n_sum_closed(p41, 1).has_value());
  CHECK(*cn::n_sum_closed(p41, 1) == 0);
  CHECK(*cn::n_sum_closed(p41, 2) == 3);

  for (uint64_t p : kOneMod8) {
    PrimeContext ctx(p);
    const auto hist = cn::n_histogram(ctx);
    REQUIRE(hist.size() == p);
    CHECK(hist[0] == 0);
    uint64_t total = 0;
    for (uint64_t t = 1; t < p; ++t) {
      CHECK(hist[t] == cn::n_count(ctx, t));
      total += hist[t];
      const auto closed = cn::n_sum_closed(ctx, t);
      REQUIRE(closed.has_value());
      CHECK(hist[t] + hist[p - t] == *closed);
    }
    // Every QR pair x < y lands on exactly one t.
    const uint64_t n = (p - 1) / 4;
    CHECK(total == n * (n - 1) / 2);
  }
  CHECK_THROWS_AS(cn::n_count(p41, 0), std::invalid_argument);
  CHECK_THROWS_AS(cn::n_sum_closed(p41, 41), std::invalid_argument);
}

TEST_CASE("proof sums match their assigned values for every t") {
  for (uint64_t p : {uint64_t{17}, uint64_t{41}}) {
    PrimeContext ctx(p);
    for (uint64_t t = 1; t < p; ++t) {
      const auto got = cn::proof_sums(ctx, t);
      const auto want = cn::proof_sums_expected(ctx, t);
      CHECK(got.s1 == want.s1);
      CHECK(got.s2 == want.s2);
      CHECK(got.s3 == want.s3);
      CHECK(got.s4 == want.s4);
    }
  }
}

TEST_CASE("epsilon agrees with a literal fourth-power pair count") {
  for (uint64_t p : kOneMod8) {
    PrimeContext ctx(p);
    const auto& q4 = ctx.quartic_sorted();
    uint64_t direct = 0;
    for (uint64_t x : q4)
      for (uint64_t y : q4)
        if (2 * (x + y) < p) ++direct;
    CHECK(cn::epsilon(ctx) == direct);
  }
}

TEST_CASE("A_m family: enumeration vs closed forms") {
  for (uint64_t p : {uint64_t{17}, uint64_t{41}, uint64_t{73}, uint64_t{89}}) {
    PrimeContext ctx(p);
    for (uint64_t m = 1; m < p; ++m) {
      const auto am = cn::a_m_set(ctx, m);
      for (uint64_t x : am) {
        CHECK(ctx.legendre_of(x) == 1);
        CHECK(ctx.legendre_of((x + m) % p) == 1);
      }
      const auto size_closed = cn::a_m_size_closed(ctx, m);
      REQUIRE(size_closed.has_value());
      CHECK(am.size() == *size_closed);
      CHECK(cn::quartic_sum_over_am(ctx, m) == cn::quartic_sum_closed(ctx, m));
      const auto count_closed = cn::quartic_count_closed(ctx, m);
      REQUIRE(count_closed.has_value());
      CHECK(cn::quartic_count_in_am(ctx, m) == *count_closed);
    }
  }
  // The size formula needs only p = 1 (mod 4).
  for (uint64_t p : {uint64_t{13}, uint64_t{29}, uint64_t{37}}) {
    PrimeContext ctx(p);
    for (uint64_t m = 1; m < p; ++m)
      CHECK(cn::a_m_set(ctx, m).size() == *cn::a_m_size_closed(ctx, m));
  }
}

TEST_CASE("r_m records: loop and bitset routes are identical") {
  auto same = [](const cn::RmRecord& x, const cn::RmRecord& y) {
    return x.p == y.p && x.m == y.m && x.l_size == y.l_size && x.r_pp == y.r_pp &&
           x.r_mm == y.r_mm && x.r_pm == y.r_pm && x.r_mp == y.r_mp;
  };
  PrimeContext small(97);
  for (uint64_t m = 1; m < 97; ++m)
    CHECK(same(cn::rm_record(small, m, cn::RmStrategy::Loop),
               cn::rm_record(small, m, cn::RmStrategy::Bitset)));
  // Above the Auto threshold the bitset route takes over; diff a few m there.
  PrimeContext large(5081);
  REQUIRE(large.p() > cn::kRmBitsetThreshold);
  for (uint64_t m : {uint64_t{1}, uint64_t{2}, uint64_t{3}, uint64_t{100}, uint64_t{2540}}) {
    const auto loop = cn::rm_record(large, m, cn::RmStrategy::Loop);
    CHECK(same(loop, cn::rm_record(large, m, cn::RmStrategy::Bitset)));
    CHECK(same(loop, cn::rm_record(large, m, cn::RmStrategy::Auto)));
  }
}

TEST_CASE("r_m identities hold for every m") {
  for (uint64_t p : {uint64_t{17}, uint64_t{41}, uint64_t{73}}) {
    PrimeContext ctx(p);
    for (uint64_t m = 1; m < p; ++m) {
      const auto rep = cn::rm_identities(ctx, m);
      CHECK(rep.all());
      CHECK(rep.rec.l_size == rep.rec.r_pp + rep.rec.r_mm + rep.rec.r_pm + rep.rec.r_mp);
      CHECK(rep.rec.l_size + rep.rec_comp.l_size == rep.a_m_size);
    }
  }
}

TEST_CASE("epsilon via the r_m sum") {
  for (uint64_t p : kOneMod8) {
    PrimeContext ctx(p);
    CHECK(cn::epsilon_rm_sum(ctx) == cn::epsilon(ctx));
  }
  PrimeContext ctx(97);
  CHECK(cn::epsilon_rm_sum(ctx, cn::RmStrategy::Loop) ==
        cn::epsilon_rm_sum(ctx, cn::RmStrategy::Bitset));
}

}  // TEST_SUITE
