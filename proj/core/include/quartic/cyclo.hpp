// The root-of-unity product P(zeta) = prod_{1<=i<j<=n} (zeta^{kj} - zeta^{ki})
// with zeta = e^{2 pi i / (nk)}: its closed form phase * n^{n/2}, the
// integral reduction G(x) used to evaluate the product at a primitive root
// mod p, and the mod-p splitting of the cyclotomic polynomial Phi_{p-1} that
// justifies substituting roots for zeta. n^{n/2} stays symbolic (n = 64
// already needs 192 bits); mod p it reduces by repeated squaring, and the
// numeric path compares unit phase and log-magnitude instead.

#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "quartic/arith.hpp"

namespace quartic::cyclo {

enum class Phase : uint8_t { PlusOne, MinusOne, PlusI, MinusI };
const char* to_string(Phase p) noexcept;
std::complex<double> phase_value(Phase p) noexcept;
// Phase squared is +-1: +1 for +-1, -1 for +-i.
int phase_squared_sign(Phase p) noexcept;

// P(zeta) = phase * n^{n/2} (n^{n/2} means n^{(n-1)/2} * sqrt(n) for odd n).
struct ZetaProductClosedForm {
  uint64_t n = 0;
  Phase phase = Phase::PlusOne;
  int64_t sign_exponent = 0;  // the case-table exponent of -1, for reference

  double log_magnitude() const;  // (n/2) ln n; 0 for n <= 1
};

// Four-way case split on nu_2(n) and n mod 4; valid for every n >= 1.
ZetaProductClosedForm p_closed(uint64_t n);

// Sign of P(zeta)^2 / n^n = (-1)^{(n^2+n+2)/2}. p_closed's phase squared
// must reproduce this exactly.
int expected_square_sign(uint64_t n);

struct ZetaProductNumeric {
  std::complex<double> unit;  // P / |P|
  double log_magnitude = 0;   // ln |P|; empty product gives 0
};

inline constexpr uint64_t kNumericCap = 64;

// Literal complex product over the (n choose 2) pair factors, zeta of order
// n*k. Throws std::domain_error for n > kNumericCap (rounding growth).
ZetaProductNumeric p_eval_numeric(uint64_t n, uint64_t k);

// G(g) mod p for n = (p-1)/4:
//   nu_2(n) = 1 : (-1)^{(n-2)/4} n^{n/2}
//   nu_2(n) > 1 : (-1)^{(n-4)/4} n^{n/2} g^{(p-1)/4}
// Requires p = 1 (mod 8) (so n is even) and g a primitive root.
Residue g_poly_value(const PrimeContext& ctx, uint64_t g);

// Direct O(n^2) product prod_{1<=i<j<=n} (g^{4j} - g^{4i}) mod p. Must equal
// g_poly_value at every primitive root of every prime (asserted in scans).
Residue denominator_product(const PrimeContext& ctx, uint64_t g);

// Floor-form display of the same quantity:
//   p = 9 (mod 16): (-1)^{floor(p/16)+1} chi4(2)
//   p = 1 (mod 16): (-1)^{floor(p/16)}   chi4(2) g^{(p-1)/4}
// Disagrees with denominator_product for p = 1 (mod 16) (off by -1 there);
// scans record its agreement rate as data, never assert it.
Residue denominator_floor_form(const PrimeContext& ctx, uint64_t g);

// Phi_n over Z, ascending coefficients, exact integer divisor recursion
// (poly division of x^n - 1 by the Phi_d for proper divisors d).
std::vector<int64_t> cyclotomic_polynomial(uint64_t n);

inline constexpr uint64_t kSplitCheckCap = 500;

// Phi_{p-1} mod p == prod over primitive roots g of (x - g), compared
// coefficientwise. Any prime p >= 2; cost grows like phi(p-1)^2, so callers
// stay below kSplitCheckCap.
bool cyclotomic_split_check(uint64_t p);

}  // namespace quartic::cyclo
