#include "quartic/scan.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <random>
#include <set>
#include <stdexcept>
#include <thread>
#include <tuple>

#include "quartic/arith.hpp"
#include "quartic/counts.hpp"
#include "quartic/cyclo.hpp"
#include "quartic/jacobsthal.hpp"
#include "quartic/perm.hpp"

namespace quartic::scan {

namespace {

constexpr uint64_t kTagM = 0x6d;
constexpr uint64_t kTagT = 0x74;

CongruenceFilter congruence_of(ClassFilter f) {
  switch (f) {
    case ClassFilter::OneMod4: return {1, 4};
    case ClassFilter::OneMod8: return {1, 8};
    case ClassFilter::NineMod16: return {9, 16};
    case ClassFilter::OneMod16: return {1, 16};
  }
  throw std::logic_error("congruence_of: unreachable");
}

// Distinct ascending values from [1, hi], deterministic in (seed, p, tag).
std::vector<uint64_t> sample_values(uint64_t hi, std::size_t want, uint64_t seed,
                                    uint64_t p, uint64_t tag) {
  std::vector<uint64_t> out;
  if (hi == 0 || want == 0) return out;
  if (want >= hi || want >= hi / 2) {
    out.resize(hi);
    for (uint64_t v = 1; v <= hi; ++v) out[v - 1] = v;
    if (want < out.size()) out.resize(want);  // still deterministic: a prefix
    return out;
  }
  std::mt19937_64 eng(seed ^ (p * 0x9e3779b97f4a7c15ull) ^ (tag * 0xbf58476d1ce4e5b9ull));
  std::uniform_int_distribution<uint64_t> dist(1, hi);
  std::set<uint64_t> picked;
  while (picked.size() < want) picked.insert(dist(eng));
  out.assign(picked.begin(), picked.end());
  return out;
}

std::string sgn_str(int s) { return s > 0 ? "+1" : "-1"; }

std::string ratio_str(uint64_t k, uint64_t n) {
  return std::to_string(k) + "/" + std::to_string(n);
}

struct PrimeOutcome {
  std::vector<report::Record> records;
  std::vector<std::pair<std::string, Tally>> tallies;  // first-use order
};

enum class Field { M, T };

PrimeOutcome run_prime(uint64_t p, const ScanConfig& cfg,
                       const std::vector<std::string>& active) {
  PrimeOutcome out;
  PrimeContext ctx(p);

  auto on = [&](const char* name) {
    for (const auto& info : check_registry()) {
      if (info.name != name) continue;
      if (p % info.gate_mod != info.gate_rem) return false;
      return std::find(active.begin(), active.end(), info.name) != active.end();
    }
    throw std::logic_error(std::string("run_prime: unregistered check ") + name);
  };

  auto tally = [&](std::string key, bool ok) {
    for (auto& [k, t] : out.tallies) {
      if (k == key) {
        ++t.cases;
        t.passes += ok ? 1 : 0;
        return;
      }
    }
    out.tallies.emplace_back(std::move(key), Tally{1, ok ? 1ull : 0ull});
  };

  auto rec = [&](const char* check, const char* kase, std::optional<uint64_t> g,
                 std::optional<uint64_t> t, std::optional<uint64_t> m,
                 std::string expected, std::string actual, bool ok) {
    out.records.push_back(report::Record{p, check, kase, g, t, m,
                                         std::move(expected), std::move(actual), ok});
  };

  // Counted single comparison; always recorded. expected = the formula or
  // derived-route value, actual = the direct enumeration.
  auto one = [&](const char* check, const char* kase, std::optional<uint64_t> g,
                 std::string expected, std::string actual, bool ok) {
    tally(std::string(check) + "." + kase, ok);
    rec(check, kase, g, std::nullopt, std::nullopt, std::move(expected),
        std::move(actual), ok);
  };

  // Sweep over t or m values: every comparison is tallied, failures are
  // recorded individually, and one summary line closes the sweep.
  auto sweep = [&](const char* check, const char* kase, Field field,
                   const std::vector<uint64_t>& vals, auto&& fn) {
    const std::string key = std::string(check) + "." + kase;
    uint64_t passed = 0;
    for (uint64_t v : vals) {
      auto [expected, actual, ok] = fn(v);
      tally(key, ok);
      passed += ok ? 1 : 0;
      if (!ok)
        rec(check, kase, std::nullopt,
            field == Field::T ? std::optional<uint64_t>(v) : std::nullopt,
            field == Field::M ? std::optional<uint64_t>(v) : std::nullopt,
            std::move(expected), std::move(actual), false);
    }
    rec(check, kase, std::nullopt, std::nullopt, std::nullopt,
        ratio_str(vals.size(), vals.size()), ratio_str(passed, vals.size()),
        passed == vals.size());
  };

  const bool exhaust = cfg.exhaustive || p <= cfg.sample_threshold;
  const std::size_t want = exhaust ? UINT64_MAX : cfg.sample_count;

  std::vector<uint64_t> ms;
  if (on("jacobsthal") || on("am_size") || on("am_quartic_sum") ||
      on("am_quartic_count") || on("rm_identities"))
    ms = sample_values(p - 1, want, cfg.seed, p, kTagM);

  // Shared per-prime state for the mod-8 checks: the N_p histogram feeds
  // pair_counts, the w_product histogram route, and d_p inside sign_params.
  std::optional<std::vector<uint64_t>> hist;
  std::optional<counts::SignParams> sp;
  if (on("pair_counts") || on("omega_products") || on("w_product") ||
      on("rm_identities") || on("rho_sign") || on("tau_sign") || on("pairing") ||
      on("balance") || on("g_independence")) {
    hist = counts::n_histogram(ctx);
    sp = counts::sign_params(ctx, std::nullopt, &*hist);
  }

  if (on("jacobsthal")) {
    sweep("jacobsthal", "phi2_closed", Field::M, ms, [&](uint64_t m) {
      int64_t closed = jacobsthal::phi2_closed(ctx, m);
      int64_t brute = jacobsthal::phi_k(ctx, m, 2);
      return std::tuple(std::to_string(closed), std::to_string(brute), closed == brute);
    });
    for (uint32_t k : {1u, 2u}) {
      const char* kase = k == 1 ? "doubling_k1" : "doubling_k2";
      sweep("jacobsthal", kase, Field::M, ms, [&](uint64_t m) {
        int64_t split = jacobsthal::psi_k(ctx, m, k) + jacobsthal::phi_k(ctx, m, k);
        int64_t direct = jacobsthal::psi_k(ctx, m, 2 * k);
        return std::tuple(std::to_string(split), std::to_string(direct), split == direct);
      });
    }
  }

  if (on("pair_counts")) {
    std::vector<uint64_t> ts = sample_values((p - 1) / 2, want, cfg.seed, p, kTagT);
    const auto& h = *hist;
    sweep("pair_counts", "sum_closed", Field::T, ts, [&](uint64_t t) {
      uint64_t direct = h[t] + h[p - t];
      auto closed = counts::n_sum_closed(ctx, t);
      std::string e = closed ? std::to_string(*closed) : std::string("undefined");
      return std::tuple(e, std::to_string(direct), closed && *closed == direct);
    });
    auto [d_loop, l_loop] = counts::lambda_and_d(ctx);
    auto [d_hist, l_hist] = counts::lambda_and_d_from_histogram(ctx, h);
    one("pair_counts", "d_histogram", std::nullopt,
        "d=" + std::to_string(d_hist) + ",lambda=" + std::to_string(l_hist),
        "d=" + std::to_string(d_loop) + ",lambda=" + std::to_string(l_loop),
        d_loop == d_hist && l_loop == l_hist);
  }

  if (on("omega_products")) {
    auto osp = counts::omega_square_products(ctx);
    auto cmp = [&](const char* kase, const Residue& expect, const Residue& prod) {
      one("omega_products", kase, std::nullopt, std::to_string(expect.value),
          std::to_string(prod.value), expect == prod);
    };
    cmp("omega_i_sq", osp.expect_i_sq, osp.prod_i_sq);
    cmp("omega_one_sq", osp.expect_one_sq, osp.prod_one_sq);
    cmp("omega_minus_one_sq", osp.expect_minus_one_sq, osp.prod_minus_one_sq);
    uint64_t a_sq = ctx.mul(sp->a_product, sp->a_product);
    uint64_t a_want = (p + 7) / 8 % 2 ? p - 1 : 1;
    one("omega_products", "a_square", std::nullopt, std::to_string(a_want),
        std::to_string(a_sq), a_sq == a_want);
    uint64_t b_sq = ctx.mul(sp->b_product, sp->b_product);
    uint64_t b_want = (p - 1) / 8 % 2 ? p - 1 : 1;
    one("omega_products", "b_square", std::nullopt, std::to_string(b_want),
        std::to_string(b_sq), b_sq == b_want);
  }

  // w_product is O(n^2) and feeds three checks; compute it at most once.
  std::optional<Residue> w_cache;
  auto get_w = [&]() -> const Residue& {
    if (!w_cache) w_cache = perm::w_product(ctx);
    return *w_cache;
  };

  if (on("w_product")) {
    const Residue& w = get_w();
    Residue wc = perm::w_closed(ctx, *sp);
    one("w_product", "closed_form", std::nullopt, std::to_string(wc.value),
        std::to_string(w.value), wc == w);
    Residue wh = perm::w_histogram_route(ctx, *hist);
    one("w_product", "histogram_route", std::nullopt, std::to_string(wh.value),
        std::to_string(w.value), wh == w);
  }

  if (on("am_size")) {
    sweep("am_size", "size_closed", Field::M, ms, [&](uint64_t m) {
      uint64_t direct = counts::a_m_set(ctx, m).size();
      auto closed = counts::a_m_size_closed(ctx, m);
      std::string e = closed ? std::to_string(*closed) : std::string("undefined");
      return std::tuple(e, std::to_string(direct), closed && *closed == direct);
    });
  }

  if (on("am_quartic_sum")) {
    sweep("am_quartic_sum", "sum_closed", Field::M, ms, [&](uint64_t m) {
      int64_t closed = counts::quartic_sum_closed(ctx, m);
      int64_t direct = counts::quartic_sum_over_am(ctx, m);
      return std::tuple(std::to_string(closed), std::to_string(direct), closed == direct);
    });
  }

  if (on("am_quartic_count")) {
    sweep("am_quartic_count", "count_closed", Field::M, ms, [&](uint64_t m) {
      uint64_t direct = counts::quartic_count_in_am(ctx, m);
      auto closed = counts::quartic_count_closed(ctx, m);
      std::string e = closed ? std::to_string(*closed) : std::string("undefined");
      return std::tuple(e, std::to_string(direct), closed && *closed == direct);
    });
  }

  if (on("rm_identities")) {
    sweep("rm_identities", "identities", Field::M, ms, [&](uint64_t m) {
      auto rep = counts::rm_identities(ctx, m);
      std::string bad;
      auto mark = [&](bool ok, const char* name) {
        if (ok) return;
        if (!bad.empty()) bad += ',';
        bad += name;
      };
      mark(rep.reflection, "reflection");
      mark(rep.partition, "partition");
      mark(rep.chi_sum, "chi_sum");
      mark(rep.quartic_row, "quartic_row");
      mark(rep.eq31, "count_identity");
      mark(rep.pair_sum, "pair_sum");
      bool ok = rep.all();
      return std::tuple(std::string("ok"), ok ? std::string("ok") : bad, ok);
    });
    uint64_t via_rm = counts::epsilon_rm_sum(ctx);
    one("rm_identities", "epsilon_sum", std::nullopt, std::to_string(via_rm),
        std::to_string(sp->epsilon_count), via_rm == sp->epsilon_count);
  }

  if (on("rho_sign")) {
    int direct = perm::sgn_rho_direct(ctx);
    int formula = perm::rho_parity_formula(*sp);
    one("rho_sign", "parity_formula", std::nullopt, sgn_str(formula),
        sgn_str(direct), formula == direct);
    Residue s = perm::s_product(ctx);
    int ratio = perm::rho_ratio_sign(s, get_w());
    one("rho_sign", "ratio_route", std::nullopt, sgn_str(ratio), sgn_str(direct),
        ratio == direct);
    Residue srm = perm::s_rm_route(ctx);
    one("rho_sign", "s_rm_route", std::nullopt, std::to_string(srm.value),
        std::to_string(s.value), srm == s);
  }

  if (on("tau_sign")) {
    std::vector<uint64_t> roots =
        cfg.roots_mode == RootsMode::All
            ? ctx.primitive_roots()
            : std::vector<uint64_t>{ctx.min_primitive_root()};
    int direct_front = 0;
    for (uint64_t g : roots) {
      auto tp = perm::tau_prediction(ctx, g, *sp);
      if (g == roots.front()) direct_front = tp.direct;
      bool ok_r = tp.recomposed == tp.direct;
      tally("tau_sign.recomposed", ok_r);
      rec("tau_sign", "recomposed", g, std::nullopt, std::nullopt,
          sgn_str(tp.recomposed), sgn_str(tp.direct), ok_r);
      bool ok_e = tp.exponent_formula == tp.direct;
      tally("tau_sign.exponent_formula", ok_e);
      rec("tau_sign", "exponent_formula", g, std::nullopt, std::nullopt,
          sgn_str(tp.exponent_formula), sgn_str(tp.direct), ok_e);
    }
    // O(n^2) modular-ratio route, designated root only.
    int ratio = perm::tau_ratio_sign(ctx, roots.front(), get_w());
    one("tau_sign", "ratio_route", roots.front(), sgn_str(ratio),
        sgn_str(direct_front), ratio == direct_front);
  }

  if (on("pairing") || on("balance") || on("g_independence")) {
    const auto signs = perm::all_root_tau_signs(ctx);
    if (on("pairing")) {
      bool ok = perm::tau_pairing_check(ctx, signs);
      one("pairing", "inverse_pairs", std::nullopt, "true", ok ? "true" : "false", ok);
    }
    if (on("balance")) {
      bool ok = perm::tau_balance_check(signs);
      uint64_t plus = 0;
      for (const auto& [g, s] : signs) plus += s > 0 ? 1 : 0;
      one("balance", "sign_split", std::nullopt,
          ratio_str(signs.size() / 2, signs.size()) + " positive",
          ratio_str(plus, signs.size()) + " positive", ok);
    }
    if (on("g_independence")) {
      bool ok = perm::g_independence_check(signs);
      std::string actual =
          ok ? "uniform(" + sgn_str(signs.front().second) + ")" : "mixed";
      one("g_independence", "all_roots", std::nullopt, "uniform", std::move(actual), ok);
    }
  }

  if (on("cyclo_denominator")) {
    std::vector<uint64_t> roots =
        (cfg.roots_mode == RootsMode::All || p <= cfg.sample_threshold)
            ? ctx.primitive_roots()
            : std::vector<uint64_t>{ctx.min_primitive_root()};
    const bool per_root = roots.size() == 1 || cfg.per_root_records;
    uint64_t gp_pass = 0, ff_pass = 0;
    for (uint64_t g : roots) {
      Residue d = cyclo::denominator_product(ctx, g);
      Residue gp = cyclo::g_poly_value(ctx, g);
      Residue ff = cyclo::denominator_floor_form(ctx, g);
      bool ok_g = d == gp;
      tally("cyclo_denominator.g_poly", ok_g);
      gp_pass += ok_g ? 1 : 0;
      if (per_root || !ok_g)
        rec("cyclo_denominator", "g_poly", g, std::nullopt, std::nullopt,
            std::to_string(gp.value), std::to_string(d.value), ok_g);
      bool ok_f = d == ff;
      tally("cyclo_denominator.floor_form", ok_f);
      ff_pass += ok_f ? 1 : 0;
      // floor_form disagreements are expected data; only per-root mode
      // records them individually.
      if (per_root)
        rec("cyclo_denominator", "floor_form", g, std::nullopt, std::nullopt,
            std::to_string(ff.value), std::to_string(d.value), ok_f);
    }
    if (!per_root) {
      rec("cyclo_denominator", "g_poly", std::nullopt, std::nullopt, std::nullopt,
          ratio_str(roots.size(), roots.size()), ratio_str(gp_pass, roots.size()),
          gp_pass == roots.size());
      rec("cyclo_denominator", "floor_form", std::nullopt, std::nullopt, std::nullopt,
          ratio_str(roots.size(), roots.size()), ratio_str(ff_pass, roots.size()),
          ff_pass == roots.size());
    }
  }

  return out;
}

}  // namespace

const char* to_string(ClassFilter f) noexcept {
  switch (f) {
    case ClassFilter::OneMod4: return "1mod4";
    case ClassFilter::OneMod8: return "1mod8";
    case ClassFilter::NineMod16: return "9mod16";
    case ClassFilter::OneMod16: return "1mod16";
  }
  return "?";
}

std::optional<ClassFilter> parse_class_filter(const std::string& s) {
  if (s == "all" || s == "1mod4") return ClassFilter::OneMod4;
  if (s == "1mod8") return ClassFilter::OneMod8;
  if (s == "9mod16") return ClassFilter::NineMod16;
  if (s == "1mod16") return ClassFilter::OneMod16;
  return std::nullopt;
}

const std::vector<CheckInfo>& check_registry() {
  static const std::vector<CheckInfo> reg = {
      {"jacobsthal", "phi_2 closed form and the psi doubling identity", 4, 1},
      {"pair_counts", "N(t) + N(p-t) closed form; d_p histogram route", 8, 1},
      {"omega_products", "squared Omega-class products and A^2, B^2 congruences", 8, 1},
      {"w_product", "squared-difference product vs closed form and histogram route", 8, 1},
      {"am_size", "#A_m closed form", 4, 1},
      {"am_quartic_sum", "sum of chi4(x^2 + mx) over A_m vs closed form", 8, 1},
      {"am_quartic_count", "#{x in A_m : chi4(x) = 1} vs the class-of-m table", 8, 1},
      {"rm_identities", "L_m / r_m counting identities and the epsilon sum", 8, 1},
      {"rho_sign", "sorting-permutation sign: parity formula and product routes", 8, 1},
      {"tau_sign", "power-listing permutation sign: recomposed, ratio, exponent formula", 8, 1},
      {"pairing", "tau(g) * tau(g^{-1}) = -1 over all primitive roots", 16, 1},
      {"balance", "equal +1 / -1 split of tau over primitive roots", 16, 1},
      {"g_independence", "tau sign identical at every primitive root", 16, 9},
      {"cyclo_denominator", "power-listing difference product vs closed value", 8, 1},
  };
  return reg;
}

bool is_known_check(const std::string& name) {
  for (const auto& info : check_registry())
    if (info.name == name) return true;
  return false;
}

const std::vector<std::string>& reported_tally_keys() {
  static const std::vector<std::string> keys = {
      "tau_sign.exponent_formula",
      "cyclo_denominator.floor_form",
  };
  return keys;
}

bool is_reported_tally(const std::string& key) {
  const auto& keys = reported_tally_keys();
  return std::find(keys.begin(), keys.end(), key) != keys.end();
}

bool ScanResult::all_passed() const {
  for (const auto& [key, tally] : tallies) {
    if (is_reported_tally(key)) continue;
    if (tally.passes != tally.cases) return false;
  }
  return true;
}

unsigned resolve_workers(unsigned requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("QUARTIC_WORKERS")) {
    char* end = nullptr;
    unsigned long v = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0' && v > 0 && v <= 4096)
      return static_cast<unsigned>(v);
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw ? hw : 1;
}

ScanResult run_scan(const ScanConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  if (cfg.min_p > cfg.max_p)
    throw std::invalid_argument("run_scan: min_p > max_p");

  std::vector<std::string> active;
  if (cfg.checks.empty()) {
    for (const auto& info : check_registry()) active.push_back(info.name);
  } else {
    for (const auto& name : cfg.checks) {
      if (!is_known_check(name))
        throw std::invalid_argument("run_scan: unknown check '" + name + "'");
      if (std::find(active.begin(), active.end(), name) == active.end())
        active.push_back(name);
    }
  }

  const std::vector<uint64_t> primes =
      primes_in_range(cfg.min_p, cfg.max_p, congruence_of(cfg.filter));

  std::vector<PrimeOutcome> slots(primes.size());
  std::atomic<std::size_t> next{0};
  std::mutex err_mu;
  std::exception_ptr err;

  auto body = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
      if (i >= primes.size()) return;
      try {
        slots[i] = run_prime(primes[i], cfg, active);
      } catch (...) {
        std::lock_guard<std::mutex> lock(err_mu);
        if (!err) err = std::current_exception();
        return;
      }
    }
  };

  const unsigned workers = std::min<std::size_t>(
      resolve_workers(cfg.workers), std::max<std::size_t>(primes.size(), 1));
  if (workers <= 1) {
    body();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned i = 0; i < workers; ++i) pool.emplace_back(body);
    for (auto& th : pool) th.join();
  }
  if (err) std::rethrow_exception(err);

  ScanResult res;
  for (auto& slot : slots) {
    res.records.insert(res.records.end(),
                       std::make_move_iterator(slot.records.begin()),
                       std::make_move_iterator(slot.records.end()));
    for (auto& [key, t] : slot.tallies) {
      auto& dst = res.tallies[key];
      dst.cases += t.cases;
      dst.passes += t.passes;
    }
  }
  res.primes_scanned = primes.size();
  res.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return res;
}

}  // namespace quartic::scan
