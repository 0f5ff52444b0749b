#include "quartic/counts.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

#include "quartic/jacobsthal.hpp"

namespace quartic::counts {

namespace {

void require_mod8(const PrimeContext& ctx, const char* who) {
  if (!ctx.is_1_mod_8()) throw std::domain_error(std::string(who) + ": requires p = 1 (mod 8)");
}

uint64_t require_nonzero(const PrimeContext& ctx, uint64_t v, const char* who) {
  v %= ctx.p();
  if (v == 0) throw std::invalid_argument(std::string(who) + ": argument = 0 (mod p)");
  return v;
}

// (-1)^parity as a residue mod p.
uint64_t sign_residue(const PrimeContext& ctx, uint64_t parity) {
  return parity % 2 == 0 ? 1 : ctx.p() - 1;
}

// Exponent bit of a +-1 residue: 1 -> 0, p-1 -> 1.
int bit_of_residue(const PrimeContext& ctx, uint64_t v, const char* who) {
  if (v == 1) return 0;
  if (v == ctx.p() - 1) return 1;
  throw std::logic_error(std::string(who) + ": defining congruence is not +-1");
}

// 2b * B / a mod p, shared by gamma and mu.
uint64_t two_b_over_a(const PrimeContext& ctx, uint64_t b_product) {
  uint64_t num = ctx.mul(ctx.reduce(2 * static_cast<int64_t>(ctx.b())), b_product);
  return ctx.mul(num, ctx.inv(ctx.reduce(ctx.a())));
}

// Count bits x in [lo, hi] with a[x] and b[x + shift] both set. The b word
// is spliced from two neighbours; x + shift never reaches past the table.
uint64_t shifted_and_count(const std::vector<uint64_t>& a, const std::vector<uint64_t>& b,
                           uint64_t shift, uint64_t lo, uint64_t hi) {
  if (lo > hi) return 0;
  const uint64_t q = shift >> 6, r = shift & 63;
  const uint64_t w_lo = lo >> 6, w_hi = hi >> 6;
  uint64_t total = 0;
  for (uint64_t w = w_lo; w <= w_hi; ++w) {
    uint64_t aw = a[w];
    if (w == w_lo) aw &= ~uint64_t{0} << (lo & 63);
    if (w == w_hi) {
      uint64_t top = hi & 63;
      if (top != 63) aw &= (uint64_t{1} << (top + 1)) - 1;
    }
    if (aw == 0) continue;
    const size_t i = w + q;
    uint64_t b0 = i < b.size() ? b[i] : 0;
    uint64_t bw;
    if (r == 0) {
      bw = b0;
    } else {
      uint64_t b1 = i + 1 < b.size() ? b[i + 1] : 0;
      bw = (b0 >> r) | (b1 << (64 - r));
    }
    total += static_cast<uint64_t>(std::popcount(aw & bw));
  }
  return total;
}

}  // namespace

OmegaSets omega_sets(const PrimeContext& ctx) {
  require_mod8(ctx, "omega_sets");
  OmegaSets sets;
  const uint64_t half = (ctx.p() - 1) / 2;
  for (uint64_t x = 1; x <= half; ++x) {
    switch (ctx.quartic_class_of(x)) {
      case QuarticClass::One: sets.omega_one.push_back(x); break;
      case QuarticClass::MinusOne: sets.omega_minus_one.push_back(x); break;
      case QuarticClass::I: sets.omega_i.push_back(x); break;
      case QuarticClass::MinusI: sets.omega_minus_i.push_back(x); break;
    }
  }
  sets.omega_r.reserve(sets.omega_one.size() + sets.omega_minus_one.size());
  std::merge(sets.omega_one.begin(), sets.omega_one.end(), sets.omega_minus_one.begin(),
             sets.omega_minus_one.end(), std::back_inserter(sets.omega_r));
  return sets;
}

OmegaSquareProducts omega_square_products(const PrimeContext& ctx) {
  require_mod8(ctx, "omega_square_products");
  const uint64_t p = ctx.p();
  uint64_t prod_i = 1, prod_one = 1, prod_minus_one = 1;
  const uint64_t half = (p - 1) / 2;
  for (uint64_t x = 1; x <= half; ++x) {
    switch (ctx.quartic_class_of(x)) {
      case QuarticClass::I: prod_i = ctx.mul(prod_i, ctx.mul(x, x)); break;
      case QuarticClass::One: prod_one = ctx.mul(prod_one, ctx.mul(x, x)); break;
      case QuarticClass::MinusOne: prod_minus_one = ctx.mul(prod_minus_one, ctx.mul(x, x)); break;
      case QuarticClass::MinusI: break;
    }
  }
  const uint64_t s_plus7 = sign_residue(ctx, (p + 7) / 8);
  const uint64_t s_minus1 = sign_residue(ctx, (p - 1) / 8);
  OmegaSquareProducts out;
  out.prod_i_sq = Residue{prod_i, p};
  out.prod_one_sq = Residue{prod_one, p};
  out.prod_minus_one_sq = Residue{prod_minus_one, p};
  out.expect_i_sq = Residue{ctx.mul(s_plus7, ctx.i_unit()), p};
  out.expect_one_sq = Residue{s_plus7, p};
  out.expect_minus_one_sq = Residue{s_minus1, p};
  return out;
}

SignParams sign_params(const PrimeContext& ctx, std::optional<uint64_t> g,
                       const std::vector<uint64_t>* histogram) {
  require_mod8(ctx, "sign_params");
  const uint64_t p = ctx.p();
  SignParams out;
  out.p = p;
  uint64_t prod_one = 1, prod_minus_one = 1;
  const uint64_t half = (p - 1) / 2;
  for (uint64_t x = 1; x <= half; ++x) {
    QuarticClass c = ctx.quartic_class_of(x);
    if (c == QuarticClass::One) prod_one = ctx.mul(prod_one, x);
    else if (c == QuarticClass::MinusOne) prod_minus_one = ctx.mul(prod_minus_one, x);
  }
  out.a_product = prod_one;
  out.b_product = prod_minus_one;

  if (g) {
    if (!is_primitive_root(*g, p)) throw std::invalid_argument("sign_params: g is not a primitive root");
    out.g = *g % p;
  }

  if (ctx.residue_class_16() == 9) {
    out.beta = bit_of_residue(ctx, prod_one, "beta");
    out.gamma = bit_of_residue(ctx, two_b_over_a(ctx, prod_minus_one), "gamma");
  } else if (ctx.residue_class_16() == 1 && g) {
    auto [d_bit, m_bit] = delta_mu_bits(ctx, out, *g);
    out.delta = d_bit;
    out.mu = m_bit;
  }

  auto [d, lam] = histogram ? lambda_and_d_from_histogram(ctx, *histogram) : lambda_and_d(ctx);
  out.d_p = d;
  out.lambda = lam;
  out.epsilon_count = epsilon(ctx);
  out.epsilon_parity = static_cast<int>(out.epsilon_count % 2);
  return out;
}

std::pair<int, int> delta_mu_bits(const PrimeContext& ctx, const SignParams& sp, uint64_t g) {
  if (ctx.residue_class_16() != 1) throw std::domain_error("delta_mu_bits: requires p = 1 (mod 16)");
  const uint64_t inv_gq = ctx.inv(ctx.pow(g, (ctx.p() - 1) / 4));
  int delta = bit_of_residue(ctx, ctx.mul(sp.a_product, inv_gq), "delta");
  int mu = bit_of_residue(ctx, ctx.mul(two_b_over_a(ctx, sp.b_product), inv_gq), "mu");
  return {delta, mu};
}

std::pair<uint64_t, int> lambda_and_d_from_histogram(const PrimeContext& ctx,
                                                     const std::vector<uint64_t>& hist) {
  const uint64_t p = ctx.p();
  uint64_t d = 0;
  for (uint64_t t = p / 2 + 1; t < p; ++t) d += hist[t];
  return {d, static_cast<int>(d % 2)};
}

std::pair<uint64_t, int> lambda_and_d(const PrimeContext& ctx) {
  const uint64_t p = ctx.p();
  const auto& qr = ctx.qr_half();
  const size_t n = qr.size();
  std::vector<uint64_t> sq(n);
  for (size_t i = 0; i < n; ++i) sq[i] = ctx.mul(qr[i], qr[i]);
  uint64_t d = 0;
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = i + 1; j < n; ++j) {
      uint64_t diff = ctx.sub(sq[j], sq[i]);
      if (2 * diff > p) ++d;
    }
  }
  return {d, static_cast<int>(d % 2)};
}

uint64_t epsilon(const PrimeContext& ctx) {
  require_mod8(ctx, "epsilon");
  const uint64_t half = (ctx.p() - 1) / 2;  // x + y < p/2 <=> x + y <= half
  const auto& q4 = ctx.quartic_sorted();
  uint64_t total = 0;
  for (uint64_t x : q4) {
    if (x + 1 > half) break;  // no y >= 1 can fit
    uint64_t bound = half - x;
    auto it = std::upper_bound(q4.begin(), q4.end(), bound);
    total += static_cast<uint64_t>(it - q4.begin());
  }
  return total;
}

uint64_t n_count(const PrimeContext& ctx, uint64_t t) {
  const uint64_t tv = require_nonzero(ctx, t, "n_count");
  const auto& qr = ctx.qr_half();
  const size_t n = qr.size();
  std::vector<uint64_t> sq(n);
  for (size_t i = 0; i < n; ++i) sq[i] = ctx.mul(qr[i], qr[i]);
  uint64_t cnt = 0;
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j)
      if (ctx.sub(sq[j], sq[i]) == tv) ++cnt;
  return cnt;
}

std::vector<uint64_t> n_histogram(const PrimeContext& ctx) {
  const uint64_t p = ctx.p();
  const auto& qr = ctx.qr_half();
  const size_t n = qr.size();
  std::vector<uint64_t> sq(n);
  for (size_t i = 0; i < n; ++i) sq[i] = ctx.mul(qr[i], qr[i]);
  std::vector<uint64_t> hist(p, 0);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j) ++hist[ctx.sub(sq[j], sq[i])];
  return hist;
}

std::optional<uint64_t> n_sum_closed(const PrimeContext& ctx, uint64_t t) {
  require_mod8(ctx, "n_sum_closed");
  const uint64_t tv = require_nonzero(ctx, t, "n_sum_closed");
  const int64_t p = static_cast<int64_t>(ctx.p());
  const int64_t a = ctx.a();
  const int64_t phi2 = jacobsthal::phi_k(ctx, tv, 2);
  int64_t num;
  if (ctx.legendre_of(tv) == -1) {
    num = p - 3 - 2 * a + 2 * phi2;
  } else {
    num = p - 7 + 2 * a + 2 * phi2 - 4 * ctx.chi4_of(tv);
  }
  if (num < 0 || num % 16 != 0) return std::nullopt;
  return static_cast<uint64_t>(num / 16);
}

ProofSums proof_sums(const PrimeContext& ctx, uint64_t t) {
  const uint64_t tv = require_nonzero(ctx, t, "proof_sums");
  const uint64_t p = ctx.p();
  // s[v] = sum of (y/p) over the roots of y^2 = v; c(v) = number of roots.
  std::vector<int8_t> root_leg(p, 0);
  for (uint64_t y = 1; y < p; ++y)
    root_leg[ctx.mul(y, y)] += static_cast<int8_t>(ctx.legendre_of(y));
  auto roots = [&](uint64_t v) -> int64_t {
    return v == 0 ? 0 : 1 + ctx.legendre_of(v);
  };
  ProofSums out;
  for (uint64_t x = 1; x < p; ++x) {
    const int lx = ctx.legendre_of(x);
    const uint64_t v = ctx.add(ctx.mul(x, x), tv);  // y^2 when y^2 - x^2 = t
    const int64_t c = roots(v);
    out.s1 += c;
    out.s2 += lx * c;
    out.s4 += lx * root_leg[v];
  }
  for (uint64_t y = 1; y < p; ++y) {
    const uint64_t v = ctx.sub(ctx.mul(y, y), tv);  // x^2 when y^2 - x^2 = t
    out.s3 += ctx.legendre_of(y) * roots(v);
  }
  return out;
}

ProofSums proof_sums_expected(const PrimeContext& ctx, uint64_t t) {
  require_mod8(ctx, "proof_sums_expected");
  const uint64_t tv = require_nonzero(ctx, t, "proof_sums_expected");
  const int64_t p = static_cast<int64_t>(ctx.p());
  const int leg = ctx.legendre_of(tv);
  const int64_t phi2 = jacobsthal::phi_k(ctx, tv, 2);
  ProofSums out;
  out.s1 = p - 3 - 2 * leg;
  out.s2 = phi2 - (leg == 1 ? 2 * ctx.chi4_of(tv) : 0);
  out.s3 = out.s2;
  out.s4 = -2 + 2 * leg * ctx.a();
  return out;
}

std::vector<uint64_t> a_m_set(const PrimeContext& ctx, uint64_t m) {
  const uint64_t mv = require_nonzero(ctx, m, "a_m_set");
  const uint64_t p = ctx.p();
  std::vector<uint64_t> out;
  for (uint64_t x = 1; x < p; ++x) {
    if (ctx.legendre_of(x) == 1 && ctx.legendre_of(ctx.add(x, mv)) == 1) out.push_back(x);
  }
  return out;
}

std::optional<uint64_t> a_m_size_closed(const PrimeContext& ctx, uint64_t m) {
  const uint64_t mv = require_nonzero(ctx, m, "a_m_size_closed");
  const int64_t num = static_cast<int64_t>(ctx.p()) - 3 - 2 * ctx.legendre_of(mv);
  if (num < 0 || num % 4 != 0) return std::nullopt;
  return static_cast<uint64_t>(num / 4);
}

int64_t quartic_sum_over_am(const PrimeContext& ctx, uint64_t m) {
  const uint64_t mv = require_nonzero(ctx, m, "quartic_sum_over_am");
  const uint64_t p = ctx.p();
  int64_t sum = 0;
  for (uint64_t x = 1; x < p; ++x) {
    const uint64_t xm = ctx.add(x, mv);
    if (ctx.legendre_of(x) == 1 && ctx.legendre_of(xm) == 1) sum += ctx.chi4_of(ctx.mul(x, xm));
  }
  return sum;
}

int64_t quartic_sum_closed(const PrimeContext& ctx, uint64_t m) {
  require_mod8(ctx, "quartic_sum_closed");
  const uint64_t mv = require_nonzero(ctx, m, "quartic_sum_closed");
  return (-1 + ctx.a() * ctx.legendre_of(mv)) / 2;
}

uint64_t quartic_count_in_am(const PrimeContext& ctx, uint64_t m) {
  const uint64_t mv = require_nonzero(ctx, m, "quartic_count_in_am");
  const uint64_t p = ctx.p();
  uint64_t cnt = 0;
  for (uint64_t x = 1; x < p; ++x) {
    if (ctx.chi4_of(x) == 1 && ctx.legendre_of(ctx.add(x, mv)) == 1) ++cnt;
  }
  return cnt;
}

std::optional<uint64_t> quartic_count_closed(const PrimeContext& ctx, uint64_t m) {
  require_mod8(ctx, "quartic_count_closed");
  const int64_t p = static_cast<int64_t>(ctx.p());
  const int64_t a = ctx.a();
  const int64_t b4 = 4 * static_cast<int64_t>(ctx.b());
  int64_t num;
  switch (ctx.quartic_class_of(m)) {
    case QuarticClass::I: num = p - 1 + b4; break;
    case QuarticClass::MinusI: num = p - 1 - b4; break;
    case QuarticClass::One: num = p - 7 + 2 * a; break;
    case QuarticClass::MinusOne: num = p - 3 - 2 * a; break;
    default: return std::nullopt;
  }
  if (num < 0 || num % 8 != 0) return std::nullopt;
  return static_cast<uint64_t>(num / 8);
}

RmRecord rm_record(const PrimeContext& ctx, uint64_t m, RmStrategy strategy) {
  const uint64_t mv = require_nonzero(ctx, m, "rm_record");
  const uint64_t p = ctx.p();
  RmRecord rec;
  rec.p = p;
  rec.m = mv;
  if (mv == p - 1) return rec;  // L_{p-1} has an empty x range

  const bool use_bits = strategy == RmStrategy::Bitset ||
                        (strategy == RmStrategy::Auto && p >= kRmBitsetThreshold);
  const uint64_t hi = p - 1 - mv;
  if (use_bits) {
    const auto& qr = ctx.qr_bits();
    const auto& q4 = ctx.q4_bits();
    const uint64_t c44 = shifted_and_count(q4, q4, mv, 1, hi);
    const uint64_t c4r = shifted_and_count(q4, qr, mv, 1, hi);
    const uint64_t cr4 = shifted_and_count(qr, q4, mv, 1, hi);
    const uint64_t crr = shifted_and_count(qr, qr, mv, 1, hi);
    rec.l_size = crr;
    rec.r_pp = c44;
    rec.r_pm = c4r - c44;
    rec.r_mp = cr4 - c44;
    rec.r_mm = crr - c4r - cr4 + c44;
    return rec;
  }
  for (uint64_t x = 1; x <= hi; ++x) {
    if (ctx.legendre_of(x) != 1 || ctx.legendre_of(x + mv) != 1) continue;
    ++rec.l_size;
    const bool px = ctx.chi4_of(x) == 1;
    const bool py = ctx.chi4_of(x + mv) == 1;
    if (px && py) ++rec.r_pp;
    else if (px) ++rec.r_pm;
    else if (py) ++rec.r_mp;
    else ++rec.r_mm;
  }
  return rec;
}

RmIdentityReport rm_identities(const PrimeContext& ctx, uint64_t m, RmStrategy strategy) {
  require_mod8(ctx, "rm_identities");
  const uint64_t mv = require_nonzero(ctx, m, "rm_identities");
  const uint64_t p = ctx.p();
  RmIdentityReport rep;
  rep.rec = rm_record(ctx, mv, strategy);
  rep.rec_comp = rm_record(ctx, p - mv, strategy);

  // Direct loops, independent of the counting strategy above.
  for (uint64_t x = 1; x + mv <= p - 1; ++x) {
    if (ctx.legendre_of(x) != 1 || ctx.legendre_of(x + mv) != 1) continue;
    rep.chi_pair_sum += ctx.chi4_of(ctx.mul(x, x + mv));
    if (ctx.chi4_of(x) == 1) ++rep.quartic_in_l;
  }
  for (uint64_t x = 1; x < p; ++x) {
    if (ctx.legendre_of(x) == 1 && ctx.legendre_of(ctx.add(x, mv)) == 1) ++rep.a_m_size;
  }

  const RmRecord& r = rep.rec;
  rep.reflection = r.r_pm == r.r_mp;
  rep.partition = r.r_pp + r.r_mm + r.r_pm + r.r_mp == r.l_size;
  rep.chi_sum = static_cast<int64_t>(r.r_pp + r.r_mm) - static_cast<int64_t>(r.r_pm + r.r_mp) ==
                rep.chi_pair_sum;
  rep.quartic_row = r.r_pp + r.r_pm == rep.quartic_in_l;
  rep.eq31 = static_cast<int64_t>(4 * r.r_pp) ==
             static_cast<int64_t>(4 * rep.quartic_in_l) - static_cast<int64_t>(r.l_size) +
                 rep.chi_pair_sum;
  rep.pair_sum = r.l_size + rep.rec_comp.l_size == rep.a_m_size;
  return rep;
}

uint64_t epsilon_rm_sum(const PrimeContext& ctx, RmStrategy strategy) {
  require_mod8(ctx, "epsilon_rm_sum");
  const uint64_t p = ctx.p();
  uint64_t total = 0;
  for (uint64_t m = 1; 2 * m < p; ++m) total += rm_record(ctx, p - m, strategy).r_pp;
  return total;
}

}  // namespace quartic::counts
