// Jacobsthal-type character sums over Z/p:
//
//   phi_k(m) = sum_{x=1}^{p-1} (x/p) ((x^k + m)/p)
//   psi_k(m) = sum_{x=1}^{p-1} ((x^k + m)/p)
//
// Both sums run over nonzero x; the anchor value psi_2(t^2) = -2 pins that
// convention (including x = 0 would shift it to -1).
//
// phi_2 has a four-case closed form driven by the quartic class of m and the
// decomposition p = a^2 + 4b^2; the doubling identity links psi_2k to the
// pair (psi_k, phi_k). Both sums here are literal brute-force evaluations:
// they are the oracle side of every closed-form check.

#pragma once

#include <cstdint>

#include "quartic/arith.hpp"

namespace quartic::jacobsthal {

// Literal O(p) sums using the context's symbol table. m is reduced mod p;
// m = 0 (mod p) is a usage error (the closed forms all assume m != 0).
int64_t phi_k(const PrimeContext& ctx, uint64_t m, uint32_t k);
int64_t psi_k(const PrimeContext& ctx, uint64_t m, uint32_t k);

// Closed form for phi_2(m), p = 1 (mod 4):
//   class 1 -> 2a, class -1 -> -2a, class i -> 4b, class -i -> -4b.
int64_t phi2_closed(const PrimeContext& ctx, uint64_t m);

// psi_2k(m) == psi_k(m) + phi_k(m), evaluated by brute force on both sides.
bool check_doubling(const PrimeContext& ctx, uint64_t m, uint32_t k);

struct Evaluation {
  uint64_t p = 0;
  uint64_t m = 0;
  uint32_t k = 0;
  int64_t phi = 0;
  int64_t psi = 0;
};

Evaluation evaluate(const PrimeContext& ctx, uint64_t m, uint32_t k);

}  // namespace quartic::jacobsthal
