// Modular arithmetic over a fixed odd prime, quartic residue classification,
// the decomposition p = a^2 + 4b^2, primitive roots, and prime enumeration.
// Everything fits in 64-bit words; intermediate products go through 128-bit
// arithmetic, so moduli up to 2^62 stay exact. No big integers anywhere.

#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace quartic {

// Largest modulus accepted anywhere. 2^62 keeps a*b < 2^124 inside __int128.
inline constexpr uint64_t kPrimeCap = uint64_t{1} << 62;

uint64_t mul_mod(uint64_t a, uint64_t b, uint64_t m) noexcept;
// pow_mod(0, 0, m) == 1 by convention.
uint64_t pow_mod(uint64_t base, uint64_t exp, uint64_t m) noexcept;
// Throws std::domain_error when gcd(a, m) != 1.
uint64_t inv_mod(uint64_t a, uint64_t m);
// Least nonnegative residue of a signed value.
uint64_t reduce_mod(int64_t v, uint64_t m) noexcept;
uint64_t isqrt(uint64_t n) noexcept;

// Deterministic Miller-Rabin, valid for the full uint64 range.
bool is_prime(uint64_t n) noexcept;
// Sorted (prime, multiplicity) pairs. Trial division plus Brent's rho, so
// factoring p-1 stays cheap even near the prime cap.
std::vector<std::pair<uint64_t, int>> factorize(uint64_t n);
uint64_t euler_phi(uint64_t n);

struct CongruenceFilter {
  uint64_t remainder = 0;
  uint64_t modulus = 1;
};

// Primes in [lo, hi] (inclusive), optionally restricted to a congruence
// class. Segmented sieve; lo below 2 is clamped to 2.
std::vector<uint64_t> primes_in_range(uint64_t lo, uint64_t hi,
                                      std::optional<CongruenceFilter> filter = std::nullopt);

// Value of m^((p-1)/4): 1, -1, or a primitive fourth root of unity. For
// p = a^2 + 4b^2 with a = -1 (mod 4) the two fourth roots are +-2b/a mod p;
// class I is the one congruent to 2b/a.
enum class QuarticClass : uint8_t { One = 0, MinusOne = 1, I = 2, MinusI = 3 };

constexpr int chi4_of_class(QuarticClass c) noexcept {
  return c == QuarticClass::One ? 1 : -1;
}
constexpr int legendre_of_class(QuarticClass c) noexcept {
  return (c == QuarticClass::One || c == QuarticClass::MinusOne) ? 1 : -1;
}
const char* to_string(QuarticClass c) noexcept;

// Legendre symbol via Euler's criterion; 0 when p | x.
int legendre(int64_t x, uint64_t p);
// Rational quartic residue symbol: +1 iff x is a nonzero fourth power mod p,
// -1 for every other nonzero x, 0 when p | x. Requires p = 1 (mod 4).
int quartic_symbol(int64_t x, uint64_t p);

// A value in [0, p) tied to its modulus. Mixing moduli is a usage error and
// throws; this is the currency of the public closed-form evaluators.
struct Residue {
  uint64_t value = 0;
  uint64_t modulus = 0;

  friend bool operator==(const Residue&, const Residue&) = default;
};

Residue make_residue(int64_t value, uint64_t modulus);
Residue operator+(Residue x, Residue y);
Residue operator-(Residue x, Residue y);
Residue operator*(Residue x, Residue y);
Residue inverse(Residue x);
Residue mod_pow(Residue base, uint64_t exp);
// +1 for value 1, -1 for value p-1; throws std::domain_error otherwise.
int residue_sign(const Residue& x);

// p = a^2 + 4b^2 with the unique normalization a = -1 (mod 4) (signed) and
// b > 0; e.g. p = 17 gives a = -1, b = 2. Defined for primes p = 1 (mod 4).
// decompose() verifies its result and is exhaustive-search-backed below 2^40;
// the Cornacchia path is a fast alternative that must agree (unit-tested).
std::pair<int64_t, uint64_t> decompose(uint64_t p);
std::pair<int64_t, uint64_t> decompose_search(uint64_t p);
std::pair<int64_t, uint64_t> decompose_cornacchia(uint64_t p);

uint64_t min_primitive_root(uint64_t p);
bool is_primitive_root(uint64_t g, uint64_t p);
// All primitive roots of p, ascending. O(p) time and memory.
std::vector<uint64_t> primitive_roots(uint64_t p);

// Per-prime bundle: the decomposition, the distinguished fourth root of
// unity i = 2b/a, and lazily built O(p) lookup tables (quartic class of
// every nonzero residue, bit arrays for the quadratic/quartic residue sets,
// sorted residue lists, primitive roots). Immutable after construction;
// copies share tables; safe to use from multiple threads.
class PrimeContext {
 public:
  // Throws std::domain_error unless p is an odd prime = 1 (mod 4) below
  // kPrimeCap. Table-backed queries additionally need p <= kTableCap.
  explicit PrimeContext(uint64_t p);

  uint64_t p() const noexcept { return p_; }
  int64_t a() const noexcept { return a_; }
  uint64_t b() const noexcept { return b_; }
  unsigned residue_class_16() const noexcept { return static_cast<unsigned>(p_ % 16); }
  unsigned residue_class_8() const noexcept { return static_cast<unsigned>(p_ % 8); }
  bool is_1_mod_8() const noexcept { return p_ % 8 == 1; }
  // {2b/a}_p, the distinguished square root of -1.
  uint64_t i_unit() const noexcept { return i_unit_; }

  // Table-backed symbol queries. x is reduced mod p; 0 maps to 0 symbols.
  int legendre_of(uint64_t x) const;
  int chi4_of(uint64_t x) const;
  // Throws std::invalid_argument when p | m.
  QuarticClass quartic_class_of(uint64_t m) const;

  uint64_t min_primitive_root() const;
  const std::vector<uint64_t>& primitive_roots() const;

  // Quadratic residues in (0, p/2), ascending.
  const std::vector<uint64_t>& qr_half() const;
  // Nonzero fourth powers mod p, ascending: the sorted sequence of
  // biquadratic residues.
  const std::vector<uint64_t>& quartic_sorted() const;
  // Bit arrays over [0, p): x-th bit set iff x is a nonzero QR (resp. a
  // nonzero fourth power). Packed in 64-bit words, little-endian bit order.
  const std::vector<uint64_t>& qr_bits() const;
  const std::vector<uint64_t>& q4_bits() const;

  // Arithmetic helpers bound to p.
  uint64_t mul(uint64_t x, uint64_t y) const noexcept { return mul_mod(x, y, p_); }
  uint64_t pow(uint64_t x, uint64_t e) const noexcept { return pow_mod(x, e, p_); }
  uint64_t inv(uint64_t x) const { return inv_mod(x % p_, p_); }
  uint64_t add(uint64_t x, uint64_t y) const noexcept;
  uint64_t sub(uint64_t x, uint64_t y) const noexcept;
  uint64_t reduce(int64_t v) const noexcept { return reduce_mod(v, p_); }
  Residue residue(int64_t v) const { return make_residue(v, p_); }

  static constexpr uint64_t kTableCap = uint64_t{1} << 27;

 private:
  struct Tables;
  const Tables& tables() const;

  uint64_t p_ = 0;
  int64_t a_ = 0;
  uint64_t b_ = 0;
  uint64_t i_unit_ = 0;
  std::shared_ptr<Tables> tables_;
};

// Quartic class of m via the context's table.
QuarticClass quartic_class(uint64_t m, const PrimeContext& ctx);

}  // namespace quartic
