#include "quartic/jacobsthal.hpp"

#include <stdexcept>

namespace quartic::jacobsthal {

namespace {

uint64_t require_nonzero(const PrimeContext& ctx, uint64_t m) {
  uint64_t v = m % ctx.p();
  if (v == 0) throw std::invalid_argument("jacobsthal: m = 0 (mod p)");
  return v;
}

// x^k mod p for the small fixed exponents the sums use; the incremental
// squaring keeps the per-term cost at one or two multiplications.
inline uint64_t pow_small(const PrimeContext& ctx, uint64_t x, uint32_t k) {
  switch (k) {
    case 1: return x;
    case 2: return ctx.mul(x, x);
    case 4: {
      uint64_t s = ctx.mul(x, x);
      return ctx.mul(s, s);
    }
    default: return ctx.pow(x, k);
  }
}

}  // namespace

int64_t phi_k(const PrimeContext& ctx, uint64_t m, uint32_t k) {
  if (k == 0) throw std::invalid_argument("phi_k: k must be positive");
  uint64_t mv = require_nonzero(ctx, m);
  const uint64_t p = ctx.p();
  int64_t sum = 0;
  for (uint64_t x = 1; x < p; ++x) {
    int lx = ctx.legendre_of(x);
    uint64_t inner = ctx.add(pow_small(ctx, x, k), mv);
    sum += lx * ctx.legendre_of(inner);
  }
  return sum;
}

int64_t psi_k(const PrimeContext& ctx, uint64_t m, uint32_t k) {
  if (k == 0) throw std::invalid_argument("psi_k: k must be positive");
  uint64_t mv = require_nonzero(ctx, m);
  const uint64_t p = ctx.p();
  int64_t sum = 0;
  for (uint64_t x = 1; x < p; ++x) {
    uint64_t inner = ctx.add(pow_small(ctx, x, k), mv);
    sum += ctx.legendre_of(inner);
  }
  return sum;
}

int64_t phi2_closed(const PrimeContext& ctx, uint64_t m) {
  switch (ctx.quartic_class_of(m)) {
    case QuarticClass::One: return 2 * ctx.a();
    case QuarticClass::MinusOne: return -2 * ctx.a();
    case QuarticClass::I: return 4 * static_cast<int64_t>(ctx.b());
    case QuarticClass::MinusI: return -4 * static_cast<int64_t>(ctx.b());
  }
  throw std::logic_error("phi2_closed: unreachable");
}

bool check_doubling(const PrimeContext& ctx, uint64_t m, uint32_t k) {
  return psi_k(ctx, m, 2 * k) == psi_k(ctx, m, k) + phi_k(ctx, m, k);
}

Evaluation evaluate(const PrimeContext& ctx, uint64_t m, uint32_t k) {
  return Evaluation{ctx.p(), m % ctx.p(), k, phi_k(ctx, m, k), psi_k(ctx, m, k)};
}

}  // namespace quartic::jacobsthal
