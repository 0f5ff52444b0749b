#include "quartic/perm.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "quartic/cyclo.hpp"

namespace quartic::perm {

namespace {

using i128 = __int128;

void require_mod8(const PrimeContext& ctx, const char* who) {
  if (!ctx.is_1_mod_8()) throw std::domain_error(std::string(who) + ": requires p = 1 (mod 8)");
}

// 2b * B_p / a mod p.
uint64_t b_unit(const PrimeContext& ctx, uint64_t b_product) {
  uint64_t num = ctx.mul(ctx.reduce(2 * static_cast<int64_t>(ctx.b())), b_product);
  return ctx.mul(num, ctx.inv(ctx.reduce(ctx.a())));
}

int parity_of(i128 v) { return static_cast<int>(((v % 2) + 2) % 2); }

// Exponent numerator / 32 with a hard integrality assert; these are the
// provably integral exponents, so a remainder means a code bug.
i128 exact_32nd(i128 num, const char* who) {
  if (num % 32 != 0) throw std::logic_error(std::string(who) + ": exponent not divisible by 32");
  return num / 32;
}

std::vector<uint64_t> squares_listing(const PrimeContext& ctx) {
  const auto& qr = ctx.qr_half();
  std::vector<uint64_t> out(qr.size());
  for (size_t i = 0; i < qr.size(); ++i) out[i] = ctx.mul(qr[i], qr[i]);
  return out;
}

std::vector<uint64_t> powers_listing(const PrimeContext& ctx, uint64_t g) {
  const uint64_t g4 = ctx.pow(g, 4);
  std::vector<uint64_t> out((ctx.p() - 1) / 4);
  uint64_t cur = 1;
  for (auto& v : out) {
    cur = ctx.mul(cur, g4);
    v = cur;
  }
  return out;
}

// Inversion parity of an index permutation, bottom-up merge. q is consumed;
// buf is caller scratch of the same size.
int inversion_parity_scratch(std::vector<uint32_t>& q, std::vector<uint32_t>& buf) {
  const size_t n = q.size();
  uint64_t inversions = 0;
  for (size_t width = 1; width < n; width *= 2) {
    for (size_t lo = 0; lo + width < n; lo += 2 * width) {
      const size_t mid = lo + width, hi = std::min(lo + 2 * width, n);
      size_t a = lo, b = mid, out = lo;
      while (a < mid && b < hi) {
        if (q[a] <= q[b]) {
          buf[out++] = q[a++];
        } else {
          inversions += mid - a;
          buf[out++] = q[b++];
        }
      }
      while (a < mid) buf[out++] = q[a++];
      while (b < hi) buf[out++] = q[b++];
      std::copy(buf.begin() + lo, buf.begin() + hi, q.begin() + lo);
    }
  }
  return inversions % 2 == 0 ? 1 : -1;
}

int inversion_parity(std::vector<uint32_t> q) {
  std::vector<uint32_t> buf(q.size());
  return inversion_parity_scratch(q, buf);
}

}  // namespace

ResidueSequences build_sequences(const PrimeContext& ctx, std::optional<uint64_t> g) {
  require_mod8(ctx, "build_sequences");
  ResidueSequences out;
  out.squares = squares_listing(ctx);
  out.sorted = ctx.quartic_sorted();
  if (g) {
    if (!is_primitive_root(*g, ctx.p()))
      throw std::invalid_argument("build_sequences: g is not a primitive root");
    out.powers = powers_listing(ctx, *g);
  }
  // Multiset agreement is an invariant of the construction, not a check
  // under test: violation is a table bug.
  std::vector<uint64_t> probe = out.squares;
  std::sort(probe.begin(), probe.end());
  if (probe != out.sorted) throw std::logic_error("build_sequences: squares/sorted mismatch");
  if (g) {
    probe = out.powers;
    std::sort(probe.begin(), probe.end());
    if (probe != out.sorted) throw std::logic_error("build_sequences: powers/sorted mismatch");
  }
  return out;
}

int perm_sign(const std::vector<uint64_t>& src, const std::vector<uint64_t>& dst) {
  const size_t n = src.size();
  if (dst.size() != n) throw std::invalid_argument("perm_sign: length mismatch");
  std::vector<std::pair<uint64_t, uint32_t>> by_value(n);
  for (size_t i = 0; i < n; ++i) by_value[i] = {dst[i], static_cast<uint32_t>(i)};
  std::sort(by_value.begin(), by_value.end());
  for (size_t i = 0; i + 1 < n; ++i) {
    if (by_value[i].first == by_value[i + 1].first)
      throw std::invalid_argument("perm_sign: repeated value");
  }
  std::vector<uint32_t> q(n);
  std::vector<char> used(n, 0);
  for (size_t i = 0; i < n; ++i) {
    auto it = std::lower_bound(by_value.begin(), by_value.end(),
                               std::make_pair(src[i], uint32_t{0}));
    if (it == by_value.end() || it->first != src[i])
      throw std::invalid_argument("perm_sign: dst is not a rearrangement of src");
    if (used[it->second]) throw std::invalid_argument("perm_sign: repeated value");
    used[it->second] = 1;
    q[i] = it->second;
  }
  return inversion_parity(std::move(q));
}

int sgn_tau_direct(const PrimeContext& ctx, uint64_t g) {
  ResidueSequences seq = build_sequences(ctx, g);
  return perm_sign(seq.squares, seq.powers);
}

int sgn_rho_direct(const PrimeContext& ctx) {
  ResidueSequences seq = build_sequences(ctx);
  return perm_sign(seq.squares, seq.sorted);
}

Residue w_product(const PrimeContext& ctx) {
  require_mod8(ctx, "w_product");
  const std::vector<uint64_t> d = squares_listing(ctx);
  uint64_t prod = 1;
  for (size_t i = 0; i < d.size(); ++i)
    for (size_t j = i + 1; j < d.size(); ++j) prod = ctx.mul(prod, ctx.sub(d[j], d[i]));
  return Residue{prod, ctx.p()};
}

Residue w_closed(const PrimeContext& ctx, const counts::SignParams& sp) {
  require_mod8(ctx, "w_closed");
  const i128 p = ctx.p();
  const i128 a = ctx.a(), b8 = 8 * static_cast<i128>(ctx.b());
  const bool two_is_quartic = ctx.chi4_of(2) == 1;
  const i128 base = ctx.residue_class_16() == 9 ? p - 3 - 2 * a : p + 29 - 2 * a;
  const i128 num = two_is_quartic ? base + b8 : base - b8;
  const int parity = (sp.lambda + parity_of(exact_32nd(num, "w_closed"))) % 2;
  uint64_t unit = two_is_quartic ? sp.a_product : b_unit(ctx, sp.b_product);
  if (parity != 0) unit = ctx.sub(0, unit);
  return Residue{unit, ctx.p()};
}

Residue w_histogram_route(const PrimeContext& ctx, const std::vector<uint64_t>& hist) {
  require_mod8(ctx, "w_histogram_route");
  const uint64_t p = ctx.p();
  auto [d_p, lam] = counts::lambda_and_d_from_histogram(ctx, hist);
  (void)d_p;
  uint64_t prod = lam == 0 ? 1 : p - 1;
  for (uint64_t t = 1; 2 * t < p; ++t) {
    const uint64_t e = hist[t] + hist[p - t];
    if (e != 0) prod = ctx.mul(prod, ctx.pow(t, e));
  }
  return Residue{prod, p};
}

Residue s_product(const PrimeContext& ctx) {
  require_mod8(ctx, "s_product");
  const auto& f = ctx.quartic_sorted();
  uint64_t prod = 1;
  for (size_t i = 0; i < f.size(); ++i)
    for (size_t j = i + 1; j < f.size(); ++j) prod = ctx.mul(prod, f[j] - f[i]);
  return Residue{prod, ctx.p()};
}

Residue s_rm_route(const PrimeContext& ctx, counts::RmStrategy strategy) {
  require_mod8(ctx, "s_rm_route");
  const uint64_t p = ctx.p();
  uint64_t prod = 1, eps = 0;
  for (uint64_t m = 1; 2 * m < p; ++m) {
    const uint64_t r = counts::rm_record(ctx, m, strategy).r_pp;
    const uint64_t rc = counts::rm_record(ctx, p - m, strategy).r_pp;
    eps += rc;
    if (r + rc != 0) prod = ctx.mul(prod, ctx.pow(m, r + rc));
  }
  if (eps % 2 != 0) prod = ctx.sub(0, prod);
  return Residue{prod, p};
}

int tau_exponent_formula(const PrimeContext& ctx, const counts::SignParams& sp, uint64_t g) {
  require_mod8(ctx, "tau_exponent_formula");
  const i128 p = ctx.p();
  const i128 a = ctx.a(), b8 = 8 * static_cast<i128>(ctx.b());
  const bool two_is_quartic = ctx.chi4_of(2) == 1;
  i128 num;
  int bit;
  if (ctx.residue_class_16() == 9) {
    num = two_is_quartic ? 3 * p + 11 - 2 * a + b8 : 3 * p - 21 - 2 * a + b8;
    bit = two_is_quartic ? sp.beta.value() : sp.gamma.value();
  } else {
    auto [delta, mu] = counts::delta_mu_bits(ctx, sp, g);
    num = two_is_quartic ? 3 * p - 5 - 2 * a + b8 : 3 * p + 27 - 2 * a + b8;
    bit = two_is_quartic ? delta : mu;
  }
  const int parity = (sp.lambda + bit + parity_of(exact_32nd(num, "tau_exponent_formula"))) % 2;
  return parity == 0 ? 1 : -1;
}

TauPrediction tau_prediction(const PrimeContext& ctx, uint64_t g,
                             const counts::SignParams& sp) {
  TauPrediction out;
  out.p = ctx.p();
  out.g = g % ctx.p();
  out.direct = sgn_tau_direct(ctx, g);
  out.recomposed = residue_sign(w_closed(ctx, sp) * inverse(cyclo::g_poly_value(ctx, g)));
  out.exponent_formula = tau_exponent_formula(ctx, sp, g);
  return out;
}

int tau_ratio_sign(const PrimeContext& ctx, uint64_t g, std::optional<Residue> w) {
  Residue den = cyclo::denominator_product(ctx, g);
  Residue num = w ? *w : w_product(ctx);
  return residue_sign(num * inverse(den));
}

int rho_parity_formula(const counts::SignParams& sp) {
  return (sp.lambda + sp.epsilon_parity) % 2 == 0 ? 1 : -1;
}

int rho_ratio_sign(const PrimeContext& ctx) {
  return rho_ratio_sign(s_product(ctx), w_product(ctx));
}

int rho_ratio_sign(const Residue& s, const Residue& w) {
  return residue_sign(s * inverse(w));
}

std::vector<std::pair<uint64_t, int>> all_root_tau_signs(const PrimeContext& ctx) {
  require_mod8(ctx, "all_root_tau_signs");
  const std::vector<uint64_t> squares = squares_listing(ctx);
  const auto& roots = ctx.primitive_roots();
  const size_t n = squares.size();
  std::vector<std::pair<uint64_t, int>> out;
  out.reserve(roots.size());
  // Every power listing permutes the same fourth-power set, so one shared
  // value -> position table replaces the per-root sort perm_sign would do.
  std::vector<uint32_t> rank(ctx.p(), 0);
  std::vector<uint32_t> q(n), buf(n);
  for (uint64_t g : roots) {
    const uint64_t g4 = ctx.pow(g, 4);
    uint64_t cur = 1;
    for (size_t i = 0; i < n; ++i) {
      cur = ctx.mul(cur, g4);
      rank[cur] = static_cast<uint32_t>(i);
    }
    for (size_t i = 0; i < n; ++i) q[i] = rank[squares[i]];
    out.emplace_back(g, inversion_parity_scratch(q, buf));
  }
  return out;
}

bool tau_pairing_check(const PrimeContext& ctx) {
  if (ctx.residue_class_16() != 1)
    throw std::domain_error("tau_pairing_check: requires p = 1 (mod 16)");
  return tau_pairing_check(ctx, all_root_tau_signs(ctx));
}

bool tau_balance_check(const PrimeContext& ctx) {
  if (ctx.residue_class_16() != 1)
    throw std::domain_error("tau_balance_check: requires p = 1 (mod 16)");
  return tau_balance_check(all_root_tau_signs(ctx));
}

bool g_independence_check(const PrimeContext& ctx) {
  if (ctx.residue_class_16() != 9)
    throw std::domain_error("g_independence_check: requires p = 9 (mod 16)");
  return g_independence_check(all_root_tau_signs(ctx));
}

bool tau_pairing_check(const PrimeContext& ctx,
                       const std::vector<std::pair<uint64_t, int>>& signs) {
  const auto& roots = ctx.primitive_roots();
  for (const auto& [g, sign] : signs) {
    const uint64_t g_inv = ctx.inv(g);
    const auto it = std::lower_bound(roots.begin(), roots.end(), g_inv);
    if (it == roots.end() || *it != g_inv) return false;  // would be a table bug
    if (sign * signs[static_cast<size_t>(it - roots.begin())].second != -1) return false;
  }
  return true;
}

bool tau_balance_check(const std::vector<std::pair<uint64_t, int>>& signs) {
  int64_t sum = 0;
  for (const auto& [g, sign] : signs) sum += sign;
  return sum == 0;
}

bool g_independence_check(const std::vector<std::pair<uint64_t, int>>& signs) {
  if (signs.empty()) return true;
  for (const auto& [g, sign] : signs)
    if (sign != signs.front().second) return false;
  return true;
}

}  // namespace quartic::perm
