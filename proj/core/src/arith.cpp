#include "quartic/arith.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <mutex>
#include <numeric>
#include <stdexcept>

namespace quartic {

using u128 = unsigned __int128;

uint64_t mul_mod(uint64_t a, uint64_t b, uint64_t m) noexcept {
  return static_cast<uint64_t>((u128)a * b % m);
}

uint64_t pow_mod(uint64_t base, uint64_t exp, uint64_t m) noexcept {
  if (m == 1) return 0;
  uint64_t r = 1;
  base %= m;
  while (exp != 0) {
    if (exp & 1) r = mul_mod(r, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return r;
}

uint64_t inv_mod(uint64_t a, uint64_t m) {
  // Extended Euclid on (a, m); works for any modulus, not just primes.
  int64_t t = 0, new_t = 1;
  uint64_t r = m, new_r = a % m;
  while (new_r != 0) {
    uint64_t q = r / new_r;
    int64_t tmp_t = t - static_cast<int64_t>(q) * new_t;
    t = new_t;
    new_t = tmp_t;
    uint64_t tmp_r = r - q * new_r;
    r = new_r;
    new_r = tmp_r;
  }
  if (r != 1) throw std::domain_error("inv_mod: value not invertible");
  return t < 0 ? static_cast<uint64_t>(t + static_cast<int64_t>(m)) : static_cast<uint64_t>(t);
}

uint64_t reduce_mod(int64_t v, uint64_t m) noexcept {
  int64_t r = v % static_cast<int64_t>(m);
  if (r < 0) r += static_cast<int64_t>(m);
  return static_cast<uint64_t>(r);
}

uint64_t isqrt(uint64_t n) noexcept {
  if (n == 0) return 0;
  auto r = static_cast<uint64_t>(std::sqrt(static_cast<double>(n)));
  while (r > 0 && (u128)r * r > n) --r;
  while ((u128)(r + 1) * (r + 1) <= n) ++r;
  return r;
}

bool is_prime(uint64_t n) noexcept {
  if (n < 2) return false;
  for (uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % q == 0) return n == q;
  }
  uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // This base set is deterministic for all n < 3.3 * 10^24.
  for (uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    uint64_t x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int i = 1; i < s; ++i) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

namespace {

uint64_t brent_rho(uint64_t n) {
  // Brent's cycle variant of Pollard rho; n must be composite and odd.
  if (n % 2 == 0) return 2;
  uint64_t c = 1;
  while (true) {
    uint64_t x = 2, y = 2, d = 1;
    uint64_t saved = 2;
    int power = 1, lam = 1;
    auto step = [&](uint64_t v) { return (mul_mod(v, v, n) + c) % n; };
    while (d == 1) {
      if (power == lam) {
        saved = x;
        power *= 2;
        lam = 0;
      }
      x = step(x);
      ++lam;
      uint64_t diff = x > saved ? x - saved : saved - x;
      d = std::gcd(diff, n);
    }
    if (d != n) return d;
    ++c;  // cycle collapsed onto n itself; retry with another constant
    (void)y;
  }
}

void factor_rec(uint64_t n, std::vector<uint64_t>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    out.push_back(n);
    return;
  }
  uint64_t d = brent_rho(n);
  factor_rec(d, out);
  factor_rec(n / d, out);
}

}  // namespace

std::vector<std::pair<uint64_t, int>> factorize(uint64_t n) {
  std::vector<std::pair<uint64_t, int>> result;
  if (n == 0) throw std::domain_error("factorize: n must be positive");
  for (uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull}) {
    if (n % q == 0) {
      int e = 0;
      while (n % q == 0) {
        n /= q;
        ++e;
      }
      result.emplace_back(q, e);
    }
  }
  if (n > 1) {
    std::vector<uint64_t> rest;
    factor_rec(n, rest);
    std::sort(rest.begin(), rest.end());
    for (size_t i = 0; i < rest.size();) {
      size_t j = i;
      while (j < rest.size() && rest[j] == rest[i]) ++j;
      result.emplace_back(rest[i], static_cast<int>(j - i));
      i = j;
    }
  }
  std::sort(result.begin(), result.end());
  return result;
}

uint64_t euler_phi(uint64_t n) {
  uint64_t phi = n;
  for (auto [q, e] : factorize(n)) phi -= phi / q;
  return phi;
}

std::vector<uint64_t> primes_in_range(uint64_t lo, uint64_t hi,
                                      std::optional<CongruenceFilter> filter) {
  std::vector<uint64_t> out;
  if (hi < 2 || lo > hi) return out;
  lo = std::max<uint64_t>(lo, 2);
  if (hi >= kPrimeCap) throw std::domain_error("primes_in_range: bound above prime cap");
  if (filter && filter->modulus == 0) throw std::invalid_argument("primes_in_range: zero filter modulus");

  // Base primes up to sqrt(hi) by a plain sieve.
  uint64_t root = isqrt(hi);
  std::vector<bool> small(root + 1, true);
  std::vector<uint64_t> base;
  for (uint64_t i = 2; i <= root; ++i) {
    if (!small[i]) continue;
    base.push_back(i);
    for (uint64_t j = i * i; j <= root; j += i) small[j] = false;
  }

  constexpr uint64_t kBlock = uint64_t{1} << 20;
  std::vector<bool> seg;
  for (uint64_t start = lo; start <= hi; start = (start + kBlock < start) ? hi + 1 : start + kBlock) {
    uint64_t end = std::min(hi, start + kBlock - 1);
    seg.assign(end - start + 1, true);
    for (uint64_t q : base) {
      u128 first = std::max((u128)q * q, (u128)((start + q - 1) / q) * q);
      for (u128 j = first; j <= end; j += q) seg[static_cast<uint64_t>(j) - start] = false;
    }
    for (uint64_t v = start; v <= end; ++v) {
      if (!seg[v - start]) continue;
      if (filter && v % filter->modulus != filter->remainder % filter->modulus) continue;
      out.push_back(v);
    }
    if (end == hi) break;
  }
  return out;
}

const char* to_string(QuarticClass c) noexcept {
  switch (c) {
    case QuarticClass::One: return "1";
    case QuarticClass::MinusOne: return "-1";
    case QuarticClass::I: return "i";
    case QuarticClass::MinusI: return "-i";
  }
  return "?";
}

int legendre(int64_t x, uint64_t p) {
  if (p < 3 || p % 2 == 0 || !is_prime(p)) throw std::domain_error("legendre: p must be an odd prime");
  uint64_t v = reduce_mod(x, p);
  if (v == 0) return 0;
  uint64_t e = pow_mod(v, (p - 1) / 2, p);
  return e == 1 ? 1 : -1;
}

int quartic_symbol(int64_t x, uint64_t p) {
  if (p % 4 != 1 || !is_prime(p)) throw std::domain_error("quartic_symbol: p must be a prime = 1 (mod 4)");
  uint64_t v = reduce_mod(x, p);
  if (v == 0) return 0;
  // x is a fourth power iff its index is divisible by 4 iff x^((p-1)/4) = 1.
  return pow_mod(v, (p - 1) / 4, p) == 1 ? 1 : -1;
}

Residue make_residue(int64_t value, uint64_t modulus) {
  if (modulus == 0) throw std::invalid_argument("make_residue: zero modulus");
  return Residue{reduce_mod(value, modulus), modulus};
}

namespace {
void require_same_modulus(const Residue& x, const Residue& y) {
  if (x.modulus != y.modulus || x.modulus == 0)
    throw std::invalid_argument("residue arithmetic across different moduli");
}
}  // namespace

Residue operator+(Residue x, Residue y) {
  require_same_modulus(x, y);
  uint64_t v = x.value + y.value;
  if (v >= x.modulus) v -= x.modulus;
  return Residue{v, x.modulus};
}

Residue operator-(Residue x, Residue y) {
  require_same_modulus(x, y);
  uint64_t v = x.value >= y.value ? x.value - y.value : x.value + x.modulus - y.value;
  return Residue{v, x.modulus};
}

Residue operator*(Residue x, Residue y) {
  require_same_modulus(x, y);
  return Residue{mul_mod(x.value, y.value, x.modulus), x.modulus};
}

Residue inverse(Residue x) {
  return Residue{inv_mod(x.value, x.modulus), x.modulus};
}

Residue mod_pow(Residue base, uint64_t exp) {
  return Residue{pow_mod(base.value, exp, base.modulus), base.modulus};
}

int residue_sign(const Residue& x) {
  if (x.value == 1) return 1;
  if (x.value + 1 == x.modulus) return -1;
  throw std::domain_error("residue_sign: value is neither 1 nor -1");
}

namespace {
std::pair<int64_t, uint64_t> normalize_ab(uint64_t a0, uint64_t b, uint64_t p) {
  // a0 is the positive odd root; pick the sign that lands in -1 (mod 4).
  int64_t a = (a0 % 4 == 3) ? static_cast<int64_t>(a0) : -static_cast<int64_t>(a0);
  if ((u128)a0 * a0 + (u128)4 * b * b != p) throw std::logic_error("decompose: verification failed");
  return {a, b};
}
}  // namespace

std::pair<int64_t, uint64_t> decompose_search(uint64_t p) {
  if (p % 4 != 1 || !is_prime(p)) throw std::domain_error("decompose: p must be a prime = 1 (mod 4)");
  for (uint64_t b = 1; 4 * (u128)b * b < p; ++b) {
    uint64_t rem = p - 4 * b * b;
    uint64_t a0 = isqrt(rem);
    if (a0 * a0 == rem) return normalize_ab(a0, b, p);
  }
  throw std::logic_error("decompose: no representation found");
}

std::pair<int64_t, uint64_t> decompose_cornacchia(uint64_t p) {
  if (p % 4 != 1 || !is_prime(p)) throw std::domain_error("decompose: p must be a prime = 1 (mod 4)");
  if (p >= kPrimeCap) throw std::domain_error("decompose: p above prime cap");
  // Square root of -1 from any quadratic nonresidue u: z = u^((p-1)/4).
  uint64_t z = 0;
  for (uint64_t u = 2;; ++u) {
    if (pow_mod(u, (p - 1) / 2, p) == p - 1) {
      z = pow_mod(u, (p - 1) / 4, p);
      break;
    }
  }
  // Euclid chain down to the first remainder below sqrt(p): that remainder
  // and sqrt(p - r^2) are the two squares.
  uint64_t r0 = p, r1 = z;
  while ((u128)r1 * r1 > p) {
    r0 %= r1;
    std::swap(r0, r1);
  }
  uint64_t x = r1;
  uint64_t y = isqrt(p - x * x);
  if (x * x + y * y != p) throw std::logic_error("decompose_cornacchia: chain failed");
  uint64_t odd = x % 2 == 1 ? x : y;
  uint64_t even = x % 2 == 1 ? y : x;
  return normalize_ab(odd, even / 2, p);
}

std::pair<int64_t, uint64_t> decompose(uint64_t p) {
  // Exhaustive search is the contract; the Cornacchia chain takes over once
  // the O(sqrt(p)) scan stops being desk scale. Both paths are cross-checked
  // in the unit tests.
  if (p < (uint64_t{1} << 40)) return decompose_search(p);
  return decompose_cornacchia(p);
}

uint64_t min_primitive_root(uint64_t p) {
  if (!is_prime(p)) throw std::domain_error("min_primitive_root: p must be prime");
  if (p == 2) return 1;
  if (p == 3) return 2;
  auto factors = factorize(p - 1);
  for (uint64_t g = 2; g < p; ++g) {
    bool ok = true;
    for (auto [q, e] : factors) {
      if (pow_mod(g, (p - 1) / q, p) == 1) {
        ok = false;
        break;
      }
    }
    if (ok) return g;
  }
  throw std::logic_error("min_primitive_root: none found");
}

bool is_primitive_root(uint64_t g, uint64_t p) {
  if (!is_prime(p)) throw std::domain_error("is_primitive_root: p must be prime");
  g %= p;
  if (g == 0) return false;
  if (p == 2) return g == 1;
  for (auto [q, e] : factorize(p - 1)) {
    if (pow_mod(g, (p - 1) / q, p) == 1) return false;
  }
  return true;
}

std::vector<uint64_t> primitive_roots(uint64_t p) {
  if (!is_prime(p)) throw std::domain_error("primitive_roots: p must be prime");
  if (p == 2) return {1};
  uint64_t g0 = min_primitive_root(p);
  std::vector<uint64_t> roots;
  roots.reserve(euler_phi(p - 1));
  uint64_t power = 1;
  for (uint64_t j = 1; j < p; ++j) {
    power = mul_mod(power, g0, p);
    if (std::gcd(j, p - 1) == 1) roots.push_back(power);
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

struct PrimeContext::Tables {
  std::once_flag built;
  std::vector<QuarticClass> cls;      // index: residue in [0, p)
  std::vector<uint64_t> qr_bits;      // packed indicator of nonzero QRs
  std::vector<uint64_t> q4_bits;      // packed indicator of nonzero fourth powers
  std::vector<uint64_t> qr_half;      // QRs in (0, p/2), ascending
  std::vector<uint64_t> quartic_sorted;
  std::vector<uint64_t> roots;        // primitive roots, ascending
  uint64_t g0 = 0;
};

PrimeContext::PrimeContext(uint64_t p) : p_(p), tables_(std::make_shared<Tables>()) {
  if (p >= kPrimeCap) throw std::domain_error("PrimeContext: p above prime cap");
  if (p % 4 != 1 || !is_prime(p)) throw std::domain_error("PrimeContext: p must be a prime = 1 (mod 4)");
  auto [a, b] = decompose(p);
  a_ = a;
  b_ = b;
  i_unit_ = mul_mod(reduce_mod(2 * static_cast<int64_t>(b), p), inv_mod(reduce_mod(a, p), p), p);
  if (mul_mod(i_unit_, i_unit_, p) != p - 1) throw std::logic_error("PrimeContext: (2b/a)^2 != -1");
}

const PrimeContext::Tables& PrimeContext::tables() const {
  Tables& t = *tables_;
  std::call_once(t.built, [&] {
    if (p_ > kTableCap) throw std::length_error("PrimeContext: p too large for lookup tables");
    const uint64_t p = p_;
    t.g0 = quartic::min_primitive_root(p);
    t.cls.assign(p, QuarticClass::One);
    const uint64_t omega = pow_mod(t.g0, (p - 1) / 4, p);
    const bool omega_is_i = omega == i_unit_;

    // One pass over the power table of g0: the class of g0^j is omega^j,
    // so only j mod 4 matters.
    uint64_t cur = 1;
    for (uint64_t j = 0; j + 1 < p; ++j) {
      QuarticClass c;
      switch (j % 4) {
        case 0: c = QuarticClass::One; break;
        case 2: c = QuarticClass::MinusOne; break;
        case 1: c = omega_is_i ? QuarticClass::I : QuarticClass::MinusI; break;
        default: c = omega_is_i ? QuarticClass::MinusI : QuarticClass::I; break;
      }
      t.cls[cur] = c;
      cur = mul_mod(cur, t.g0, p);
    }

    const size_t words = (p + 63) / 64;
    t.qr_bits.assign(words, 0);
    t.q4_bits.assign(words, 0);
    for (uint64_t x = 1; x < p; ++x) {
      QuarticClass c = t.cls[x];
      if (legendre_of_class(c) == 1) {
        t.qr_bits[x >> 6] |= uint64_t{1} << (x & 63);
        if (x < (p + 1) / 2) t.qr_half.push_back(x);
      }
      if (c == QuarticClass::One) {
        t.q4_bits[x >> 6] |= uint64_t{1} << (x & 63);
        t.quartic_sorted.push_back(x);
      }
    }

    t.roots.reserve(euler_phi(p - 1));
    uint64_t power = 1;
    for (uint64_t j = 1; j < p; ++j) {
      power = mul_mod(power, t.g0, p);
      if (std::gcd(j, p - 1) == 1) t.roots.push_back(power);
    }
    std::sort(t.roots.begin(), t.roots.end());
  });
  return t;
}

int PrimeContext::legendre_of(uint64_t x) const {
  uint64_t v = x % p_;
  if (v == 0) return 0;
  return legendre_of_class(tables().cls[v]);
}

int PrimeContext::chi4_of(uint64_t x) const {
  uint64_t v = x % p_;
  if (v == 0) return 0;
  return chi4_of_class(tables().cls[v]);
}

QuarticClass PrimeContext::quartic_class_of(uint64_t m) const {
  uint64_t v = m % p_;
  if (v == 0) throw std::invalid_argument("quartic_class_of: m = 0 (mod p)");
  return tables().cls[v];
}

uint64_t PrimeContext::min_primitive_root() const { return tables().g0; }

const std::vector<uint64_t>& PrimeContext::primitive_roots() const { return tables().roots; }
const std::vector<uint64_t>& PrimeContext::qr_half() const { return tables().qr_half; }
const std::vector<uint64_t>& PrimeContext::quartic_sorted() const { return tables().quartic_sorted; }
const std::vector<uint64_t>& PrimeContext::qr_bits() const { return tables().qr_bits; }
const std::vector<uint64_t>& PrimeContext::q4_bits() const { return tables().q4_bits; }

uint64_t PrimeContext::add(uint64_t x, uint64_t y) const noexcept {
  uint64_t v = x % p_ + y % p_;
  if (v >= p_) v -= p_;
  return v;
}

uint64_t PrimeContext::sub(uint64_t x, uint64_t y) const noexcept {
  uint64_t xv = x % p_, yv = y % p_;
  return xv >= yv ? xv - yv : xv + p_ - yv;
}

QuarticClass quartic_class(uint64_t m, const PrimeContext& ctx) { return ctx.quartic_class_of(m); }

}  // namespace quartic
