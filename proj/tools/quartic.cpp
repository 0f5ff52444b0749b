// Command-line front end: single-prime inspection commands plus the range
// scanner. Exit codes: 0 clean, 1 at least one asserted check failed,
// 2 usage or domain error.

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "quartic/arith.hpp"
#include "quartic/counts.hpp"
#include "quartic/cyclo.hpp"
#include "quartic/jacobsthal.hpp"
#include "quartic/perm.hpp"
#include "quartic/report.hpp"
#include "quartic/scan.hpp"

namespace {

using namespace quartic;

const char* sgn(int s) { return s > 0 ? "+1" : "-1"; }

void print_prime_header(const PrimeContext& ctx) {
  std::printf("p = %llu = (%lld)^2 + 4*%llu^2   a = %lld  b = %llu   p mod 16 = %llu   chi4(2) = %+d\n",
              (unsigned long long)ctx.p(), (long long)ctx.a(), (unsigned long long)ctx.b(),
              (long long)ctx.a(), (unsigned long long)ctx.b(),
              (unsigned long long)ctx.residue_class_16(), ctx.chi4_of(2));
}

// Per-tally summary table shared by `verify` and `scan`.
void print_tallies(const scan::ScanResult& res) {
  for (const auto& [key, t] : res.tallies) {
    bool reported = scan::is_reported_tally(key);
    bool clean = t.passes == t.cases;
    const char* mark = reported ? "info" : (clean ? " ok " : "FAIL");
    std::printf("  [%s] %-36s %llu/%llu%s\n", mark, key.c_str(),
                (unsigned long long)t.passes, (unsigned long long)t.cases,
                reported ? "  (reported only)" : "");
  }
}

void print_failures(const scan::ScanResult& res, std::size_t cap) {
  std::vector<const report::Record*> failing;
  for (const auto& r : res.records) {
    if (r.pass || scan::is_reported_tally(r.check + "." + r.case_label)) continue;
    failing.push_back(&r);
  }
  if (failing.empty()) {
    std::printf("discrepancies: none\n");
    return;
  }
  std::printf("discrepancies (%zu):\n", failing.size());
  for (std::size_t i = 0; i < failing.size() && i < cap; ++i) {
    const auto& r = *failing[i];
    std::string where;
    if (r.g) where += " g=" + std::to_string(*r.g);
    if (r.t) where += " t=" + std::to_string(*r.t);
    if (r.m) where += " m=" + std::to_string(*r.m);
    std::printf("  p=%llu %s.%s%s: expected %s, got %s\n", (unsigned long long)r.p,
                r.check.c_str(), r.case_label.c_str(), where.c_str(),
                r.expected.c_str(), r.actual.c_str());
  }
  if (failing.size() > cap) std::printf("  ... and %zu more\n", failing.size() - cap);
}

int cmd_verify(uint64_t p, bool all_roots, bool exhaustive,
               const std::vector<std::string>& checks, uint64_t seed) {
  if (!is_prime(p) || p % 4 != 1) {
    std::fprintf(stderr, "verify: p must be a prime = 1 (mod 4)\n");
    return 2;
  }
  PrimeContext ctx(p);
  print_prime_header(ctx);
  scan::ScanConfig cfg;
  cfg.min_p = cfg.max_p = p;
  cfg.filter = scan::ClassFilter::OneMod4;
  cfg.checks = checks;
  cfg.roots_mode = all_roots ? scan::RootsMode::All : scan::RootsMode::First;
  cfg.exhaustive = exhaustive;
  cfg.seed = seed;
  auto res = scan::run_scan(cfg);
  print_tallies(res);
  print_failures(res, 20);
  std::printf("%s (%.2fs)\n", res.all_passed() ? "all checks passed" : "FAILURES PRESENT",
              res.elapsed_seconds);
  return res.all_passed() ? 0 : 1;
}

int cmd_scan(const scan::ScanConfig& cfg, const std::string& out_path,
             const std::string& format) {
  auto res = scan::run_scan(cfg);
  std::printf("scanned %llu primes in [%llu, %llu] (%s), %u workers, %.1fs\n",
              (unsigned long long)res.primes_scanned, (unsigned long long)cfg.min_p,
              (unsigned long long)cfg.max_p, scan::to_string(cfg.filter),
              scan::resolve_workers(cfg.workers), res.elapsed_seconds);
  print_tallies(res);
  print_failures(res, 10);
  if (!out_path.empty()) {
    if (format == "csv")
      report::write_csv(out_path, res.records);
    else
      report::write_jsonl(out_path, res.records);
    std::printf("wrote %zu records to %s\n", res.records.size(), out_path.c_str());
  }
  return res.all_passed() ? 0 : 1;
}

int cmd_jacobsthal(uint64_t p, uint64_t m, uint32_t k) {
  PrimeContext ctx(p);
  print_prime_header(ctx);
  auto ev = jacobsthal::evaluate(ctx, m, k);
  std::printf("phi_%u(%llu) = %lld\n", k, (unsigned long long)ev.m, (long long)ev.phi);
  std::printf("psi_%u(%llu) = %lld\n", k, (unsigned long long)ev.m, (long long)ev.psi);
  if (k == 2) {
    std::printf("phi_2 closed form (class %s) = %lld\n",
                to_string(ctx.quartic_class_of(m)),
                (long long)jacobsthal::phi2_closed(ctx, m));
  }
  int64_t lhs = jacobsthal::psi_k(ctx, m, 2 * k);
  std::printf("doubling: psi_%u = %lld, psi_%u + phi_%u = %lld  [%s]\n", 2 * k,
              (long long)lhs, k, k, (long long)(ev.psi + ev.phi),
              lhs == ev.psi + ev.phi ? "ok" : "MISMATCH");
  return 0;
}

int cmd_counts(uint64_t p, std::optional<uint64_t> t, std::optional<uint64_t> m) {
  PrimeContext ctx(p);
  print_prime_header(ctx);
  if (!t && !m) {
    auto sp = counts::sign_params(ctx);
    std::printf("d_p = %llu  lambda = %d  epsilon = %llu (parity %d)\n",
                (unsigned long long)sp.d_p, sp.lambda,
                (unsigned long long)sp.epsilon_count, sp.epsilon_parity);
    std::printf("A_p = %llu  B_p = %llu", (unsigned long long)sp.a_product,
                (unsigned long long)sp.b_product);
    if (sp.beta) std::printf("  beta = %d  gamma = %d", *sp.beta, *sp.gamma);
    std::printf("\n");
    auto osp = counts::omega_square_products(ctx);
    std::printf("omega squared products: i %llu/%llu  one %llu/%llu  minus_one %llu/%llu  [%s]\n",
                (unsigned long long)osp.prod_i_sq.value, (unsigned long long)osp.expect_i_sq.value,
                (unsigned long long)osp.prod_one_sq.value, (unsigned long long)osp.expect_one_sq.value,
                (unsigned long long)osp.prod_minus_one_sq.value,
                (unsigned long long)osp.expect_minus_one_sq.value,
                osp.all_match() ? "ok" : "MISMATCH");
    return 0;
  }
  if (t) {
    uint64_t tv = *t % p;
    uint64_t n_t = counts::n_count(ctx, tv);
    uint64_t n_ct = counts::n_count(ctx, p - tv);
    auto closed = counts::n_sum_closed(ctx, tv);
    std::printf("N(%llu) = %llu  N(p-%llu) = %llu  sum = %llu  closed = %s  [%s]\n",
                (unsigned long long)tv, (unsigned long long)n_t, (unsigned long long)tv,
                (unsigned long long)n_ct, (unsigned long long)(n_t + n_ct),
                closed ? std::to_string(*closed).c_str() : "undefined",
                closed && *closed == n_t + n_ct ? "ok" : "MISMATCH");
    auto ps = counts::proof_sums(ctx, tv);
    auto pe = counts::proof_sums_expected(ctx, tv);
    std::printf("proof sums s1..s4: %lld %lld %lld %lld  expected: %lld %lld %lld %lld\n",
                (long long)ps.s1, (long long)ps.s2, (long long)ps.s3, (long long)ps.s4,
                (long long)pe.s1, (long long)pe.s2, (long long)pe.s3, (long long)pe.s4);
  }
  if (m) {
    uint64_t size = counts::a_m_set(ctx, *m).size();
    auto size_c = counts::a_m_size_closed(ctx, *m);
    std::printf("#A_%llu = %llu  closed = %s\n", (unsigned long long)*m,
                (unsigned long long)size,
                size_c ? std::to_string(*size_c).c_str() : "undefined");
    std::printf("sum chi4(x^2+mx) = %lld  closed = %lld\n",
                (long long)counts::quartic_sum_over_am(ctx, *m),
                (long long)counts::quartic_sum_closed(ctx, *m));
    auto cnt_c = counts::quartic_count_closed(ctx, *m);
    std::printf("#{chi4 = 1 in A_m} = %llu  closed = %s\n",
                (unsigned long long)counts::quartic_count_in_am(ctx, *m),
                cnt_c ? std::to_string(*cnt_c).c_str() : "undefined");
    auto rep = counts::rm_identities(ctx, *m);
    std::printf("L_%llu: size %llu  r++ %llu  r-- %llu  r+- %llu  r-+ %llu  identities [%s]\n",
                (unsigned long long)*m, (unsigned long long)rep.rec.l_size,
                (unsigned long long)rep.rec.r_pp, (unsigned long long)rep.rec.r_mm,
                (unsigned long long)rep.rec.r_pm, (unsigned long long)rep.rec.r_mp,
                rep.all() ? "ok" : "MISMATCH");
  }
  return 0;
}

int cmd_perm(uint64_t p, std::optional<uint64_t> root, bool all_roots, bool print_seq) {
  PrimeContext ctx(p);
  print_prime_header(ctx);
  auto sp = counts::sign_params(ctx);
  Residue w = perm::w_product(ctx);
  Residue wc = perm::w_closed(ctx, sp);
  Residue s = perm::s_product(ctx);
  std::printf("W = %llu (closed %llu)  S = %llu\n", (unsigned long long)w.value,
              (unsigned long long)wc.value, (unsigned long long)s.value);
  int rho = perm::sgn_rho_direct(ctx);
  std::printf("sgn(rho) = %s  parity formula %s  ratio %s\n", sgn(rho),
              sgn(perm::rho_parity_formula(sp)), sgn(perm::rho_ratio_sign(s, w)));
  auto show_root = [&](uint64_t g) {
    auto tp = perm::tau_prediction(ctx, g, sp);
    std::printf("g = %-6llu tau = %s  recomposed = %s  exponent formula = %s%s\n",
                (unsigned long long)g, sgn(tp.direct), sgn(tp.recomposed),
                sgn(tp.exponent_formula),
                tp.exponent_formula == tp.direct ? "" : "  (formula disagrees)");
  };
  if (all_roots) {
    for (const auto& [g, sign] : perm::all_root_tau_signs(ctx)) {
      (void)sign;
      show_root(g);
    }
    if (ctx.residue_class_16() == 1)
      std::printf("pairing: %s  balance: %s\n",
                  perm::tau_pairing_check(ctx) ? "ok" : "MISMATCH",
                  perm::tau_balance_check(ctx) ? "ok" : "MISMATCH");
    if (ctx.residue_class_16() == 9)
      std::printf("g-independence: %s\n",
                  perm::g_independence_check(ctx) ? "ok" : "MISMATCH");
  } else {
    show_root(root.value_or(ctx.min_primitive_root()));
  }
  if (print_seq) {
    uint64_t g = root.value_or(ctx.min_primitive_root());
    auto seq = perm::build_sequences(ctx, g);
    auto dump = [](const char* name, const std::vector<uint64_t>& v) {
      std::printf("%s:", name);
      for (uint64_t x : v) std::printf(" %llu", (unsigned long long)x);
      std::printf("\n");
    };
    dump("squares", seq.squares);
    dump("powers ", seq.powers);
    dump("sorted ", seq.sorted);
  }
  return 0;
}

int cmd_cyclo(std::optional<uint64_t> n, std::optional<uint64_t> p,
              std::optional<uint64_t> root) {
  if (n) {
    auto cf = cyclo::p_closed(*n);
    std::printf("n = %llu: phase %s, magnitude n^(n/2) (log %.6f), squared sign %+d\n",
                (unsigned long long)*n, cyclo::to_string(cf.phase), cf.log_magnitude(),
                cyclo::phase_squared_sign(cf.phase));
    if (*n >= 2 && *n <= cyclo::kNumericCap) {
      auto num = cyclo::p_eval_numeric(*n, 4);
      std::printf("numeric (k = 4): phase (%.9f, %.9f), log magnitude %.9f\n",
                  num.unit.real(), num.unit.imag(), num.log_magnitude);
    }
    return 0;
  }
  PrimeContext ctx(*p);
  print_prime_header(ctx);
  uint64_t g = root.value_or(ctx.min_primitive_root());
  Residue d = cyclo::denominator_product(ctx, g);
  Residue gp = cyclo::g_poly_value(ctx, g);
  Residue ff = cyclo::denominator_floor_form(ctx, g);
  std::printf("g = %llu: difference product %llu, closed value %llu [%s], floor form %llu [%s]\n",
              (unsigned long long)g, (unsigned long long)d.value,
              (unsigned long long)gp.value, d == gp ? "ok" : "MISMATCH",
              (unsigned long long)ff.value,
              d == ff ? "ok" : "disagrees (reported only)");
  if (*p <= cyclo::kSplitCheckCap)
    std::printf("cyclotomic split check: %s\n",
                cyclo::cyclotomic_split_check(*p) ? "ok" : "MISMATCH");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Verification of closed forms for quartic-residue counts, character\n"
               "sums, and residue-listing permutation signs over primes p = 1 (mod 8)."};
  app.require_subcommand(1);

  // verify
  auto* verify = app.add_subcommand("verify", "run every applicable check against one prime");
  uint64_t v_prime = 0;
  bool v_all_roots = false, v_exhaustive = false;
  std::vector<std::string> v_checks;
  uint64_t v_seed = scan::kDefaultSeed;
  verify->add_option("--prime", v_prime, "prime = 1 (mod 4)")->required();
  verify->add_flag("--all-roots", v_all_roots, "cover every primitive root");
  verify->add_flag("--exhaustive", v_exhaustive, "enumerate every t and m");
  verify->add_option("--checks", v_checks, "subset of checks (comma separated)")->delimiter(',');
  verify->add_option("--seed", v_seed, "sampling seed");

  // scan
  auto* sc = app.add_subcommand("scan", "run checks over a range of primes");
  scan::ScanConfig cfg;
  std::string filter_name = "1mod8", out_path, format = "jsonl";
  bool s_all_roots = false;
  sc->add_option("--min", cfg.min_p, "lower bound (default 17)");
  sc->add_option("--max", cfg.max_p, "upper bound, inclusive (default 10000)");
  sc->add_option("--filter", filter_name, "prime class: 1mod8, 9mod16, 1mod16, all")
      ->check(CLI::IsMember({"1mod8", "9mod16", "1mod16", "1mod4", "all"}));
  sc->add_option("--checks", cfg.checks, "subset of checks (comma separated)")->delimiter(',');
  sc->add_option("--workers", cfg.workers, "worker threads (default: QUARTIC_WORKERS or hardware)");
  sc->add_option("--out", out_path, "write records to this path");
  sc->add_option("--format", format, "jsonl (default) or csv")
      ->check(CLI::IsMember({"jsonl", "csv"}));
  sc->add_option("--seed", cfg.seed, "sampling seed");
  sc->add_flag("--exhaustive", cfg.exhaustive, "enumerate every t and m");
  sc->add_flag("--all-roots", s_all_roots, "cover every primitive root");
  sc->add_flag("--per-root-records", cfg.per_root_records, "one record per root");
  sc->add_option("--sample-threshold", cfg.sample_threshold,
                 "full enumeration for p <= this (default 2000)");
  sc->add_option("--sample-count", cfg.sample_count, "samples per prime above it (default 128)");

  // jacobsthal
  auto* jac = app.add_subcommand("jacobsthal", "evaluate phi_k and psi_k at one (p, m)");
  uint64_t j_prime = 0, j_m = 1;
  uint32_t j_k = 2;
  jac->add_option("--prime", j_prime, "prime = 1 (mod 4)")->required();
  jac->add_option("--m", j_m, "shift m (default 1)");
  jac->add_option("--k", j_k, "exponent k (default 2)");

  // counts
  auto* cnt = app.add_subcommand("counts", "pair counts and section sets for one prime");
  uint64_t c_prime = 0;
  std::optional<uint64_t> c_t, c_m;
  cnt->add_option("--prime", c_prime, "prime = 1 (mod 8)")->required();
  cnt->add_option("--t", c_t, "inspect N(t), N(p-t) and the proof sums");
  cnt->add_option("--m", c_m, "inspect A_m, L_m and the r_m family");

  // perm
  auto* pm = app.add_subcommand("perm", "listing permutation signs for one prime");
  uint64_t p_prime = 0;
  std::optional<uint64_t> p_root;
  bool p_all_roots = false, p_print_seq = false;
  pm->add_option("--prime", p_prime, "prime = 1 (mod 8)")->required();
  pm->add_option("--root", p_root, "primitive root (default: smallest)");
  pm->add_flag("--all-roots", p_all_roots, "every primitive root");
  pm->add_flag("--print-sequences", p_print_seq, "dump the three listings");

  // cyclo
  auto* cy = app.add_subcommand("cyclo", "root-of-unity difference products");
  std::optional<uint64_t> y_n, y_prime, y_root;
  cy->add_option("--n", y_n, "closed form and numeric product for this n");
  cy->add_option("--prime", y_prime, "prime = 1 (mod 8): mod-p difference product");
  cy->add_option("--root", y_root, "primitive root (default: smallest)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*verify) return cmd_verify(v_prime, v_all_roots, v_exhaustive, v_checks, v_seed);
    if (*sc) {
      cfg.filter = *scan::parse_class_filter(filter_name);
      cfg.roots_mode = s_all_roots ? scan::RootsMode::All : scan::RootsMode::First;
      return cmd_scan(cfg, out_path, format);
    }
    if (*jac) return cmd_jacobsthal(j_prime, j_m, j_k);
    if (*cnt) return cmd_counts(c_prime, c_t, c_m);
    if (*pm) return cmd_perm(p_prime, p_root, p_all_roots, p_print_seq);
    if (*cy) {
      if (y_n.has_value() == y_prime.has_value()) {
        std::fprintf(stderr, "cyclo: pass exactly one of --n or --prime\n");
        return 2;
      }
      return cmd_cyclo(y_n, y_prime, y_root);
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}
