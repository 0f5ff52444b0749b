#include "quartic/cyclo.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>

namespace quartic::cyclo {

namespace {

using u128 = unsigned __int128;

void require_mod8(const PrimeContext& ctx, const char* who) {
  if (!ctx.is_1_mod_8()) throw std::domain_error(std::string(who) + ": requires p = 1 (mod 8)");
}

void require_root(const PrimeContext& ctx, uint64_t g, const char* who) {
  if (!is_primitive_root(g, ctx.p()))
    throw std::invalid_argument(std::string(who) + ": g is not a primitive root");
}

// Exact quotient of a by b over Z[x], coefficients ascending. Remainder must
// vanish; the callers only divide known factors of x^n - 1.
std::vector<int64_t> divide_exact(std::vector<int64_t> a, const std::vector<int64_t>& b) {
  if (b.empty() || b.back() == 0) throw std::logic_error("divide_exact: bad divisor");
  if (a.size() < b.size()) throw std::logic_error("divide_exact: degree underflow");
  std::vector<int64_t> q(a.size() - b.size() + 1, 0);
  for (size_t i = q.size(); i-- > 0;) {
    if (a[i + b.size() - 1] % b.back() != 0) throw std::logic_error("divide_exact: inexact");
    const int64_t c = a[i + b.size() - 1] / b.back();
    q[i] = c;
    if (c != 0)
      for (size_t j = 0; j < b.size(); ++j) a[i + j] -= c * b[j];
  }
  for (int64_t r : a)
    if (r != 0) throw std::logic_error("divide_exact: nonzero remainder");
  return q;
}

std::vector<uint64_t> sorted_divisors(uint64_t n) {
  std::vector<uint64_t> out;
  for (uint64_t d = 1; d * d <= n; ++d) {
    if (n % d != 0) continue;
    out.push_back(d);
    if (d != n / d) out.push_back(n / d);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

const char* to_string(Phase p) noexcept {
  switch (p) {
    case Phase::PlusOne: return "+1";
    case Phase::MinusOne: return "-1";
    case Phase::PlusI: return "+i";
    default: return "-i";
  }
}

std::complex<double> phase_value(Phase p) noexcept {
  switch (p) {
    case Phase::PlusOne: return {1, 0};
    case Phase::MinusOne: return {-1, 0};
    case Phase::PlusI: return {0, 1};
    default: return {0, -1};
  }
}

int phase_squared_sign(Phase p) noexcept {
  return (p == Phase::PlusOne || p == Phase::MinusOne) ? 1 : -1;
}

double ZetaProductClosedForm::log_magnitude() const {
  return n <= 1 ? 0.0 : 0.5 * static_cast<double>(n) * std::log(static_cast<double>(n));
}

ZetaProductClosedForm p_closed(uint64_t n) {
  if (n == 0) throw std::domain_error("p_closed: n must be positive");
  ZetaProductClosedForm out;
  out.n = n;
  bool i_factor;
  switch (n % 4) {
    case 2: out.sign_exponent = static_cast<int64_t>((n - 2) / 4); i_factor = false; break;
    case 0: out.sign_exponent = static_cast<int64_t>((n - 4) / 4); i_factor = true; break;
    case 1: out.sign_exponent = static_cast<int64_t>((n - 1) / 4); i_factor = false; break;
    default: out.sign_exponent = static_cast<int64_t>((n + 1) / 4); i_factor = true; break;
  }
  const bool minus = out.sign_exponent % 2 != 0;
  if (i_factor) {
    out.phase = minus ? Phase::MinusI : Phase::PlusI;
  } else {
    out.phase = minus ? Phase::MinusOne : Phase::PlusOne;
  }
  return out;
}

int expected_square_sign(uint64_t n) {
  const u128 half = (static_cast<u128>(n) * n + n + 2) / 2;
  return half % 2 == 0 ? 1 : -1;
}

ZetaProductNumeric p_eval_numeric(uint64_t n, uint64_t k) {
  if (n == 0 || k == 0) throw std::domain_error("p_eval_numeric: n, k must be positive");
  if (n > kNumericCap) throw std::domain_error("p_eval_numeric: n exceeds the float safety cap");
  (void)k;  // zeta^{ki} = e^{2 pi i . i/n}: the product only sees n
  std::vector<std::complex<double>> pw(n + 1);
  for (uint64_t i = 1; i <= n; ++i)
    pw[i] = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(i) /
                                static_cast<double>(n));
  ZetaProductNumeric out;
  out.unit = {1, 0};
  for (uint64_t i = 1; i <= n; ++i)
    for (uint64_t j = i + 1; j <= n; ++j) {
      const std::complex<double> f = pw[j] - pw[i];
      const double mag = std::abs(f);
      out.log_magnitude += std::log(mag);
      out.unit *= f / mag;
    }
  return out;
}

Residue g_poly_value(const PrimeContext& ctx, uint64_t g) {
  require_mod8(ctx, "g_poly_value");
  require_root(ctx, g, "g_poly_value");
  const uint64_t p = ctx.p();
  const uint64_t n = (p - 1) / 4;
  uint64_t value = ctx.pow(n, n / 2);
  uint64_t sign_exp;
  if (n % 4 == 2) {
    sign_exp = (n - 2) / 4;
  } else {
    sign_exp = (n - 4) / 4;
    value = ctx.mul(value, ctx.pow(g, (p - 1) / 4));
  }
  if (sign_exp % 2 != 0) value = ctx.sub(0, value);
  return Residue{value, p};
}

Residue denominator_product(const PrimeContext& ctx, uint64_t g) {
  require_mod8(ctx, "denominator_product");
  require_root(ctx, g, "denominator_product");
  const uint64_t n = (ctx.p() - 1) / 4;
  const uint64_t g4 = ctx.pow(g, 4);
  std::vector<uint64_t> e(n);
  uint64_t cur = 1;
  for (auto& v : e) {
    cur = ctx.mul(cur, g4);
    v = cur;
  }
  uint64_t prod = 1;
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j) prod = ctx.mul(prod, ctx.sub(e[j], e[i]));
  return Residue{prod, ctx.p()};
}

Residue denominator_floor_form(const PrimeContext& ctx, uint64_t g) {
  require_mod8(ctx, "denominator_floor_form");
  require_root(ctx, g, "denominator_floor_form");
  const uint64_t p = ctx.p();
  uint64_t parity = p / 16;
  if (ctx.residue_class_16() == 9) parity += 1;
  if (ctx.chi4_of(2) == -1) parity += 1;
  uint64_t value = parity % 2 == 0 ? 1 : p - 1;
  if (ctx.residue_class_16() == 1) value = ctx.mul(value, ctx.pow(g, (p - 1) / 4));
  return Residue{value, p};
}

std::vector<int64_t> cyclotomic_polynomial(uint64_t n) {
  if (n == 0) throw std::domain_error("cyclotomic_polynomial: n must be positive");
  std::map<uint64_t, std::vector<int64_t>> memo;
  for (uint64_t d : sorted_divisors(n)) {
    std::vector<int64_t> poly(d + 1, 0);
    poly[0] = -1;
    poly[d] = 1;
    for (uint64_t e : sorted_divisors(d)) {
      if (e == d) continue;
      poly = divide_exact(std::move(poly), memo.at(e));
    }
    memo.emplace(d, std::move(poly));
  }
  return memo.at(n);
}

bool cyclotomic_split_check(uint64_t p) {
  if (!is_prime(p)) throw std::domain_error("cyclotomic_split_check: p must be prime");
  const std::vector<int64_t> phi = cyclotomic_polynomial(p - 1);
  const std::vector<uint64_t> roots = primitive_roots(p);
  if (phi.size() != roots.size() + 1) return false;  // degree = phi(p-1) = #roots
  // prod over roots of (x - g), coefficients mod p, ascending
  std::vector<uint64_t> prod{1};
  for (uint64_t g : roots) {
    prod.push_back(0);
    const uint64_t neg = (p - g % p) % p;
    for (size_t i = prod.size(); i-- > 1;)
      prod[i] = (mul_mod(prod[i], neg, p) + prod[i - 1]) % p;
    prod[0] = mul_mod(prod[0], neg, p);
  }
  for (size_t i = 0; i < phi.size(); ++i)
    if (reduce_mod(phi[i], p) != prod[i]) return false;
  return true;
}

}  // namespace quartic::cyclo
