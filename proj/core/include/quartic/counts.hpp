// Counting machinery over the residue classes of a prime p = 1 (mod 8):
//
//  * the Omega partition of (0, p/2) by quartic class, the products A_p,
//    B_p over Omega_1 / Omega_{-1}, and the squared-product congruences;
//  * the sign parameters beta, gamma, delta(g), mu(g), lambda = d_p mod 2
//    and epsilon (quartic pairs with small sum);
//  * N_p(t): ordered pairs x < y of quadratic residues in (0, p/2) with
//    {y^2 - x^2}_p = t, the closed form for N_p(t) + N_p(-t), and the four
//    character sums its proof splits into;
//  * the section-3 sets A_m = {x : x and x+m both QR}, L_m (the same with
//    x + m <= p-1 as an integer), and the refined counts r_m^{..} of L_m by
//    the quartic characters of x and x+m.
//
// Everything on the "actual" side is literal enumeration against the
// context's symbol table; the "_closed" forms are the formulas under test.
// The two sides are never allowed to share a code path.

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "quartic/arith.hpp"

namespace quartic::counts {

// -------- Omega partition and squared products --------

struct OmegaSets {
  std::vector<uint64_t> omega_one;        // quartic class 1
  std::vector<uint64_t> omega_minus_one;  // class -1
  std::vector<uint64_t> omega_i;          // class i = 2b/a
  std::vector<uint64_t> omega_minus_i;    // class -i
  std::vector<uint64_t> omega_r;          // all QRs in (0, p/2)
};

// Requires p = 1 (mod 8); each class set then has exactly (p-1)/8 members.
OmegaSets omega_sets(const PrimeContext& ctx);

struct OmegaSquareProducts {
  Residue prod_i_sq;             // prod over Omega_i of t^2
  Residue prod_one_sq;           // prod over Omega_1 of t^2
  Residue prod_minus_one_sq;     // prod over Omega_{-1} of t^2
  Residue expect_i_sq;           // (-1)^((p+7)/8) * 2b/a
  Residue expect_one_sq;         // (-1)^((p+7)/8)
  Residue expect_minus_one_sq;   // (-1)^((p-1)/8)

  bool all_match() const {
    return prod_i_sq == expect_i_sq && prod_one_sq == expect_one_sq &&
           prod_minus_one_sq == expect_minus_one_sq;
  }
};

OmegaSquareProducts omega_square_products(const PrimeContext& ctx);

// -------- sign parameters --------

struct SignParams {
  uint64_t p = 0;
  uint64_t a_product = 0;  // A_p = prod over Omega_1, as a residue
  uint64_t b_product = 0;  // B_p = prod over Omega_{-1}
  std::optional<uint64_t> g;
  // Exponent bits in {0, 1}, ready to drop into (-1)^(lambda + ...) sums.
  // (-1)^beta = A_p and (-1)^gamma = 2b B_p / a; defined for p = 9 (mod 16).
  std::optional<int> beta, gamma;
  // (-1)^delta = A_p / g^((p-1)/4) and (-1)^mu = 2b B_p / (a g^((p-1)/4));
  // defined for p = 1 (mod 16) when a primitive root g is supplied.
  std::optional<int> delta, mu;
  uint64_t d_p = 0;        // QR pairs x < y in (0,p/2) with {y^2-x^2}_p > p/2
  int lambda = 0;          // d_p mod 2
  uint64_t epsilon_count = 0;
  int epsilon_parity = 0;
};

// Throws std::logic_error if a defining congruence lands outside {1, -1}
// (that would be an implementation bug, not a data discrepancy).
// `histogram`, when supplied, must be n_histogram(ctx); d_p is then read off
// it instead of re-running the O(p^2) pair loop.
SignParams sign_params(const PrimeContext& ctx, std::optional<uint64_t> g = std::nullopt,
                       const std::vector<uint64_t>* histogram = nullptr);

// (delta, mu) exponent bits for one primitive root, reusing the Omega
// products already in `sp`. Requires p = 1 (mod 16).
std::pair<int, int> delta_mu_bits(const PrimeContext& ctx, const SignParams& sp, uint64_t g);

// (d_p, lambda) by direct pair enumeration, O(p^2/32).
std::pair<uint64_t, int> lambda_and_d(const PrimeContext& ctx);
// Same, read off a precomputed n_histogram: d_p = sum of hist[t] for t > p/2.
std::pair<uint64_t, int> lambda_and_d_from_histogram(const PrimeContext& ctx,
                                                     const std::vector<uint64_t>& hist);

// Ordered pairs (x, y), diagonal included, of fourth powers with
// 0 < x, y and x + y < p/2. The r_{p-m}^{++} sum identity below fixes this
// convention: summing over m enumerates ordered (x, y = m-x) including x = y.
uint64_t epsilon(const PrimeContext& ctx);

// -------- N_p(t) and its proof sums --------

// Exact count by enumeration over QR pairs; t must be nonzero mod p.
uint64_t n_count(const PrimeContext& ctx, uint64_t t);

// hist[t] = N_p(t) for every t in one pass over all pairs.
std::vector<uint64_t> n_histogram(const PrimeContext& ctx);

// Closed form for N_p(t) + N_p(p-t):
//   (t/p) = -1:  (p - 3 - 2a + 2 phi_2(t)) / 16
//   (t/p) = +1:  (p - 7 + 2a + 2 phi_2(t) - 4 chi4(t)) / 16
// phi_2(t) is evaluated by brute force so this stays independent of the
// phi_2 closed form. Returns nullopt when the numerator is not a
// nonnegative multiple of 16 (a discrepancy for the caller to record).
std::optional<uint64_t> n_sum_closed(const PrimeContext& ctx, uint64_t t);

struct ProofSums {
  int64_t s1 = 0;  // # solutions (x,y) in [1,p-1]^2 of y^2 - x^2 = t
  int64_t s2 = 0;  // same solutions weighted by (x/p)
  int64_t s3 = 0;  // weighted by (y/p)
  int64_t s4 = 0;  // weighted by (xy/p)
};

// Enumerated values, O(p) per call via y-root counting.
ProofSums proof_sums(const PrimeContext& ctx, uint64_t t);
// The values the proof of the N_p(t) formula assigns to them:
//   s1 = p - 3 - 2(t/p),  s2 = s3 = phi_2(t) - [t is QR] 2 chi4(t),
//   s4 = psi_4(-t^2) = -2 + 2 (t/p) a   (phi_2 by brute force).
ProofSums proof_sums_expected(const PrimeContext& ctx, uint64_t t);

// -------- section-3 sets --------

// A_m = {1 <= x <= p-1 : (x/p) = ((x+m)/p) = 1}, x + m taken mod p.
std::vector<uint64_t> a_m_set(const PrimeContext& ctx, uint64_t m);
// #A_m = (p - 3 - 2(m/p)) / 4.
std::optional<uint64_t> a_m_size_closed(const PrimeContext& ctx, uint64_t m);

// sum over A_m of chi4(x^2 + mx); closed value (-1 + a (m/p)) / 2.
int64_t quartic_sum_over_am(const PrimeContext& ctx, uint64_t m);
int64_t quartic_sum_closed(const PrimeContext& ctx, uint64_t m);

// #{x in A_m : chi4(x) = 1}; closed value by the class of m:
//   class i: (p-1+4b)/8,  class -i: (p-1-4b)/8,
//   class 1: (p-7+2a)/8,  class -1: (p-3-2a)/8.
uint64_t quartic_count_in_am(const PrimeContext& ctx, uint64_t m);
std::optional<uint64_t> quartic_count_closed(const PrimeContext& ctx, uint64_t m);

// -------- L_m and the r_m family --------

enum class RmStrategy { Auto, Loop, Bitset };
inline constexpr uint64_t kRmBitsetThreshold = 5000;

struct RmRecord {
  uint64_t p = 0;
  uint64_t m = 0;
  uint64_t l_size = 0;  // #L_m, L_m = {1 <= x <= p-1-m : x, x+m both QR}
  uint64_t r_pp = 0;    // chi4(x) = +1, chi4(x+m) = +1
  uint64_t r_mm = 0;    // -1, -1
  uint64_t r_pm = 0;    // +1, -1
  uint64_t r_mp = 0;    // -1, +1
};

// Plain loop below kRmBitsetThreshold, word-parallel bit counting above
// (Auto); both routes are exposed so tests can diff them.
RmRecord rm_record(const PrimeContext& ctx, uint64_t m, RmStrategy strategy = RmStrategy::Auto);

struct RmIdentityReport {
  RmRecord rec;          // at m
  RmRecord rec_comp;     // at p - m
  int64_t chi_pair_sum = 0;   // sum over L_m of chi4(x^2 + mx), direct loop
  uint64_t quartic_in_l = 0;  // #{x in L_m : chi4(x) = 1}, direct loop
  uint64_t a_m_size = 0;      // #A_m, direct loop
  bool reflection = false;    // r_pm == r_mp
  bool partition = false;     // four counts sum to #L_m
  bool chi_sum = false;       // r_pp + r_mm - r_pm - r_mp == chi_pair_sum
  bool quartic_row = false;   // r_pp + r_pm == quartic_in_l
  bool eq31 = false;          // 4 r_pp == 4 quartic_in_l - #L_m + chi_pair_sum
  bool pair_sum = false;      // #L_m + #L_{p-m} == #A_m

  bool all() const {
    return reflection && partition && chi_sum && quartic_row && eq31 && pair_sum;
  }
};

RmIdentityReport rm_identities(const PrimeContext& ctx, uint64_t m,
                               RmStrategy strategy = RmStrategy::Auto);

// sum over 0 < m < p/2 of r_{p-m}^{++}. Reindexing ordered fourth-power
// pairs (x, y) by their difference shows this equals epsilon(ctx), but the
// two are computed by disjoint routes so the identity stays checkable.
uint64_t epsilon_rm_sum(const PrimeContext& ctx, RmStrategy strategy = RmStrategy::Auto);

}  // namespace quartic::counts
