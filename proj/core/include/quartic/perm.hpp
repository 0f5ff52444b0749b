// Listings of the nonzero fourth powers mod p and the permutations between
// them. Three listings of the same (p-1)/4 values:
//
//   squares  : {a_1^2}_p, ..., {a_n^2}_p  for the QRs a_1 < ... < a_n in
//              (0, p/2) ascending;
//   powers(g): {g^4}_p, {g^8}_p, ..., {g^{p-1}}_p  for a primitive root g;
//   sorted   : the fourth powers ascending.
//
// tau(g) rearranges squares into powers(g), rho rearranges squares into
// sorted. Signs come from four independent routes: inversion parity, the
// mod-p ratio of difference products, the recomposition of the two closed
// forms (product congruence / root-power denominator), and the explicit
// exponent formulas. The exponent formulas are evaluated verbatim and only
// ever *reported* against the direct sign; the rest are asserted.

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "quartic/arith.hpp"
#include "quartic/counts.hpp"

namespace quartic::perm {

struct ResidueSequences {
  std::vector<uint64_t> squares;          // occurrence order of a_i^2
  std::vector<uint64_t> powers;           // g^{4i}; empty when no g given
  std::vector<uint64_t> sorted;           // ascending fourth powers
};

// Requires p = 1 (mod 8); validates g when supplied and asserts the three
// listings agree as multisets.
ResidueSequences build_sequences(const PrimeContext& ctx,
                                 std::optional<uint64_t> g = std::nullopt);

// Sign of the permutation taking src to dst (equal multisets of distinct
// values). O(n log n) merge inversion count. Throws std::invalid_argument
// when dst is not a rearrangement of src.
int perm_sign(const std::vector<uint64_t>& src, const std::vector<uint64_t>& dst);

int sgn_tau_direct(const PrimeContext& ctx, uint64_t g);
int sgn_rho_direct(const PrimeContext& ctx);

// prod_{i<j} (squares[j] - squares[i]) mod p, direct O(n^2) product.
Residue w_product(const PrimeContext& ctx);
// Closed form for w_product: four cases on (p mod 16, chi4(2)), exponent
// (p-3-2a+-8b)/32 or (p+29-2a+-8b)/32, unit A_p or 2b B_p / a. Exponent
// integrality is asserted (it is provable, not empirical).
Residue w_closed(const PrimeContext& ctx, const counts::SignParams& sp);
// Histogram route: (-1)^{d_p} prod_{0<t<p/2} t^{hist[t]+hist[p-t]} where
// hist = counts::n_histogram. Independent of both routes above.
Residue w_histogram_route(const PrimeContext& ctx, const std::vector<uint64_t>& hist);

// prod_{i<j} (sorted[j] - sorted[i]) mod p.
Residue s_product(const PrimeContext& ctx);
// r_m route: (-1)^{eps} prod_{0<m<p/2} m^{r_m^{++} + r_{p-m}^{++}}.
Residue s_rm_route(const PrimeContext& ctx,
                   counts::RmStrategy strategy = counts::RmStrategy::Auto);

struct TauPrediction {
  uint64_t p = 0;
  uint64_t g = 0;
  int direct = 0;            // inversion parity of squares -> powers(g)
  int recomposed = 0;        // sign of w_closed / G(g); asserted == direct
  int exponent_formula = 0;  // the four-case explicit exponent; reported only
};

// All three signs for one root. sp must come from sign_params on the same
// context (the Omega products and lambda are reused; delta/mu are derived
// per root here, so sp need not have been built with this g).
TauPrediction tau_prediction(const PrimeContext& ctx, uint64_t g,
                             const counts::SignParams& sp);

// sign of w_product / prod_{i<j}(g^{4j} - g^{4i}) mod p; O(n^2). Must equal
// sgn_tau_direct. Pass a precomputed w_product to skip recomputing it.
int tau_ratio_sign(const PrimeContext& ctx, uint64_t g,
                   std::optional<Residue> w = std::nullopt);

// Explicit exponent value on its own (also used per root in scans).
int tau_exponent_formula(const PrimeContext& ctx, const counts::SignParams& sp, uint64_t g);

// (-1)^{lambda + eps}.
int rho_parity_formula(const counts::SignParams& sp);
// sign of s_product / w_product mod p; throws if the ratio is not +-1.
int rho_ratio_sign(const PrimeContext& ctx);
// Same from precomputed products, so callers holding both skip the O(n^2)
// recomputation.
int rho_ratio_sign(const Residue& s, const Residue& w);

// Direct tau sign for every primitive root, ascending g. One shared squares
// listing; O(phi(p-1) * n log n).
std::vector<std::pair<uint64_t, int>> all_root_tau_signs(const PrimeContext& ctx);

// p = 1 (mod 16): every g pairs with g^{-1} at opposite sign.
bool tau_pairing_check(const PrimeContext& ctx);
// p = 1 (mod 16): #{g : +1} == #{g : -1}.
bool tau_balance_check(const PrimeContext& ctx);
// p = 9 (mod 16): the sign is the same for every g.
bool g_independence_check(const PrimeContext& ctx);

// Same checks against a precomputed all_root_tau_signs(ctx) vector, so one
// pass can feed several of them. No domain gating here; callers choose.
bool tau_pairing_check(const PrimeContext& ctx,
                       const std::vector<std::pair<uint64_t, int>>& signs);
bool tau_balance_check(const std::vector<std::pair<uint64_t, int>>& signs);
bool g_independence_check(const std::vector<std::pair<uint64_t, int>>& signs);

}  // namespace quartic::perm
