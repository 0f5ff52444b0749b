// End-to-end acceptance gate. Runs the full verification matrix — five scan
// passes plus a handful of direct loops — and prints one verdict line per
// criterion. Exit status is the number of failed criteria, so ctest fails
// iff something regressed. Reported-only quantities (the explicit exponent
// formula, the floor-form display) are printed as [info] rates, never
// asserted.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include "quartic/arith.hpp"
#include "quartic/counts.hpp"
#include "quartic/cyclo.hpp"
#include "quartic/perm.hpp"
#include "quartic/report.hpp"
#include "quartic/scan.hpp"

using namespace quartic;

namespace {

constexpr double kNumericTol = 1e-9;       // numeric product vs closed form
constexpr double kSweepBudget = 60.0;      // seconds, low-range closed-form sweep
constexpr double kFullScanBudget = 300.0;  // seconds per full-range pass

int g_failures = 0;

void verdict(int idx, bool ok, const std::string& text) {
  std::printf("[%s] %2d %s\n", ok ? "PASS" : "FAIL", idx, text.c_str());
  if (!ok) ++g_failures;
}

void info(const std::string& text) { std::printf("[info]    %s\n", text.c_str()); }

scan::Tally tally(const scan::ScanResult& res, const std::string& key) {
  const auto it = res.tallies.find(key);
  return it == res.tallies.end() ? scan::Tally{} : it->second;
}

// A tally is clean when it saw exactly the expected number of cases and
// every one of them passed.
bool clean(const scan::ScanResult& res, const std::string& key, uint64_t want_cases) {
  const auto t = tally(res, key);
  return t.cases == want_cases && t.passes == t.cases;
}

std::string ratio(const scan::ScanResult& res, const std::string& key) {
  const auto t = tally(res, key);
  return std::to_string(t.passes) + "/" + std::to_string(t.cases);
}

std::string secs(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f s", s);
  return buf;
}

}  // namespace

int main() {
  // ---- scan passes ----------------------------------------------------
  scan::ScanConfig base;  // [17, 10000], p = 1 (mod 8), threshold 2000, 128 samples
  base.workers = 8;

  std::printf("full-range pass 1/2...\n");
  const auto full_a = scan::run_scan(base);
  std::printf("full-range pass 2/2 (determinism witness)...\n");
  const auto full_b = scan::run_scan(base);

  scan::ScanConfig jac = base;
  jac.max_p = 1999;
  jac.filter = scan::ClassFilter::OneMod4;
  jac.checks = {"jacobsthal"};
  const auto jac_res = scan::run_scan(jac);

  scan::ScanConfig pb = base;
  pb.max_p = 5000;
  pb.filter = scan::ClassFilter::OneMod16;
  pb.checks = {"pairing", "balance"};
  const auto pair_res = scan::run_scan(pb);

  scan::ScanConfig tau16 = pb;
  tau16.checks = {"tau_sign"};
  tau16.roots_mode = scan::RootsMode::All;
  const auto tau16_res = scan::run_scan(tau16);

  scan::ScanConfig tau9 = base;
  tau9.filter = scan::ClassFilter::NineMod16;
  tau9.checks = {"tau_sign"};
  const auto tau9_res = scan::run_scan(tau9);

  // ---- expected case counts, straight from the sieve -------------------
  const auto primes8 = primes_in_range(17, base.max_p, CongruenceFilter{1, 8});
  uint64_t m_cases = 0;       // one per swept m
  uint64_t t_cases = 0;       // one per swept t
  uint64_t root_cases = 0;    // denominator check: all roots low, one above
  uint64_t nine16 = 0;
  for (const uint64_t p : primes8) {
    if (p <= base.sample_threshold) {
      m_cases += p - 1;
      t_cases += (p - 1) / 2;
      root_cases += euler_phi(p - 1);
    } else {
      m_cases += base.sample_count;
      t_cases += base.sample_count;
      root_cases += 1;
    }
    if (p % 16 == 9) ++nine16;
  }

  const auto primes4_low = primes_in_range(17, jac.max_p, CongruenceFilter{1, 4});
  uint64_t jac_m = 0;
  for (const uint64_t p : primes4_low) jac_m += p - 1;

  const auto primes16 = primes_in_range(17, pb.max_p, CongruenceFilter{1, 16});
  uint64_t root16_cases = 0;
  for (const uint64_t p : primes16) root16_cases += euler_phi(p - 1);

  // ---- 1, 2: low-range Jacobsthal sweep --------------------------------
  verdict(1,
          clean(jac_res, "jacobsthal.phi2_closed", jac_m) &&
              jac_res.elapsed_seconds < kSweepBudget,
          "phi_2 brute force equals its closed form for every m, every p = 1 (mod 4) in "
          "[17, 2000)  (" + std::to_string(primes4_low.size()) + " primes, " +
              ratio(jac_res, "jacobsthal.phi2_closed") + ", " +
              secs(jac_res.elapsed_seconds) + ")");
  verdict(2,
          clean(jac_res, "jacobsthal.doubling_k1", jac_m) &&
              clean(jac_res, "jacobsthal.doubling_k2", jac_m),
          "psi_2k = psi_k + phi_k for k in {1, 2}, same range  (" +
              ratio(jac_res, "jacobsthal.doubling_k1") + " and " +
              ratio(jac_res, "jacobsthal.doubling_k2") + ")");

  // ---- 3: pair-count closed form ---------------------------------------
  verdict(3, clean(full_a, "pair_counts.sum_closed", t_cases),
          "N(t) + N(p-t) equals its closed form: every t below 2000, 128 sampled t up to "
          "10^4  (" + ratio(full_a, "pair_counts.sum_closed") + ")");

  // ---- 4: squared Omega products and the A^2 / B^2 congruences ----------
  {
    bool ok = true;
    for (const char* key : {"omega_products.omega_i_sq", "omega_products.omega_one_sq",
                            "omega_products.omega_minus_one_sq", "omega_products.a_square",
                            "omega_products.b_square"})
      ok = ok && clean(full_a, key, primes8.size());
    verdict(4, ok,
            "squared Omega-class products and the A^2, B^2 congruences, all p = 1 (mod 8) "
            "up to 10^4  (5 x " + ratio(full_a, "omega_products.a_square") + ")");
  }

  // ---- 5: w closed form, with class coverage ----------------------------
  {
    uint64_t bucket[2][2] = {{0, 0}, {0, 0}};  // [p mod 16 == 9][chi4(2) == +1]
    for (const uint64_t p : primes8) bucket[p % 16 == 9][decompose(p).second % 4 == 0]++;
    const uint64_t least =
        std::min(std::min(bucket[0][0], bucket[0][1]), std::min(bucket[1][0], bucket[1][1]));
    verdict(5,
            clean(full_a, "w_product.closed_form", primes8.size()) &&
                clean(full_a, "w_product.histogram_route", primes8.size()) && least >= 50,
            "difference product W_p equals its closed form on both routes; every "
            "(class mod 16, chi4(2)) cell hit >= 50 times  (" +
                ratio(full_a, "w_product.closed_form") + ", thinnest cell " +
                std::to_string(least) + ")");
  }

  // ---- 6: root-of-unity product, exact and numeric ----------------------
  {
    bool ok = true;
    for (uint64_t n = 1; n <= cyclo::kNumericCap; ++n) {
      const auto cf = cyclo::p_closed(n);
      if (cyclo::phase_squared_sign(cf.phase) != cyclo::expected_square_sign(n)) ok = false;
      const auto num = cyclo::p_eval_numeric(n, 1);
      if (std::abs(num.unit - cyclo::phase_value(cf.phase)) > kNumericTol) ok = false;
      if (std::abs(num.log_magnitude - cf.log_magnitude()) >
          kNumericTol * std::max(1.0, cf.log_magnitude()))
        ok = false;
    }
    verdict(6, ok,
            "P(zeta) closed form: squared-sign identity and the literal complex product "
            "agree within 1e-9 for n <= 64");
  }

  // ---- 7: reduced closed form of the denominator product ----------------
  verdict(7, clean(full_a, "cyclo_denominator.g_poly", root_cases),
          "prod (g^4j - g^4i) equals the reduced closed form at every root below 2000 and "
          "the designated root above  (" + ratio(full_a, "cyclo_denominator.g_poly") + ")");

  // ---- 8: cyclotomic splitting -----------------------------------------
  {
    bool ok = true;
    uint64_t count = 0;
    for (const uint64_t p : primes_in_range(2, cyclo::kSplitCheckCap)) {
      ok = ok && cyclo::cyclotomic_split_check(p);
      ++count;
    }
    verdict(8, ok,
            "Phi_{p-1} mod p splits into linear factors exactly at the primitive roots, "
            "all p <= 500  (" + std::to_string(count) + " primes)");
  }

  // ---- 9: rho sign parity formula ---------------------------------------
  {
    PrimeContext ctx17(17);
    const auto sp17 = counts::sign_params(ctx17);
    const bool anchor = sp17.lambda == 1 && sp17.epsilon_count == 4 &&
                        perm::sgn_rho_direct(ctx17) == -1 &&
                        perm::rho_parity_formula(sp17) == -1;
    verdict(9,
            clean(full_a, "rho_sign.parity_formula", primes8.size()) && anchor,
            "sorting sign rho = (-1)^(lambda + epsilon) for all p = 1 (mod 8) up to 10^4; "
            "at p = 17 both sides are -1 with lambda = 1, epsilon = 4  (" +
                ratio(full_a, "rho_sign.parity_formula") + ")");
  }

  // ---- 10: root-independence for p = 9 (mod 16) --------------------------
  verdict(10, clean(full_a, "g_independence.all_roots", nine16),
          "sgn(tau(g)) is the same at every primitive root when p = 9 (mod 16), up to 10^4  "
          "(" + ratio(full_a, "g_independence.all_roots") + ")");
  info("explicit exponent formula vs direct sign, p = 9 (mod 16) designated roots: " +
       ratio(tau9_res, "tau_sign.exponent_formula") + " (reported, not asserted)");

  // ---- 11: inverse pairing and sign balance for p = 1 (mod 16) -----------
  verdict(11,
          clean(pair_res, "pairing.inverse_pairs", primes16.size()) &&
              clean(pair_res, "balance.sign_split", primes16.size()),
          "p = 1 (mod 16) up to 5000: tau flips sign between g and g^{-1}, and the roots "
          "split evenly by sign  (" + std::to_string(primes16.size()) + " primes)");

  // ---- 12: recomposed prediction at every root ----------------------------
  {
    bool triple_recomposed = false, triple_exponent = false;
    for (const auto& r : tau16_res.records) {
      if (r.p != 17 || r.g != uint64_t{3} || r.check != "tau_sign") continue;
      if (r.case_label == "recomposed")
        triple_recomposed = r.expected == "+1" && r.actual == "+1" && r.pass;
      if (r.case_label == "exponent_formula")
        triple_exponent = r.expected == "-1" && r.actual == "+1" && !r.pass;
    }
    verdict(12,
            clean(tau16_res, "tau_sign.recomposed", root16_cases) && triple_recomposed &&
                triple_exponent,
            "recomposed prediction (product congruence / root-power denominator) matches "
            "the direct sign at every (p, g), p = 1 (mod 16) up to 5000; the p = 17, g = 3 "
            "disagreement of the explicit formula is on record  (" +
                ratio(tau16_res, "tau_sign.recomposed") + ")");
    info("explicit exponent formula vs direct sign, p = 1 (mod 16) all roots: " +
         ratio(tau16_res, "tau_sign.exponent_formula") + " (reported, not asserted)");
  }

  // ---- 13: section-3 counting identities ---------------------------------
  {
    const bool ok = clean(full_a, "am_size.size_closed", m_cases) &&
                    clean(full_a, "am_quartic_sum.sum_closed", m_cases) &&
                    clean(full_a, "am_quartic_count.count_closed", m_cases) &&
                    clean(full_a, "rm_identities.identities", m_cases) &&
                    clean(full_a, "rm_identities.epsilon_sum", primes8.size());
    verdict(13, ok,
            "A_m size, quartic sum and count, the r_m identity family, and the epsilon sum: "
            "every m below 2000, 128 sampled m up to 10^4  (" +
                ratio(full_a, "rm_identities.identities") + " identities)");
  }

  // ---- 14: runtime budget and byte-level determinism ----------------------
  {
    std::string stream_a, stream_b;
    stream_a.reserve(full_a.records.size() * 96);
    stream_b.reserve(full_b.records.size() * 96);
    for (const auto& r : full_a.records) {
      stream_a += report::to_json_line(r);
      stream_a += '\n';
    }
    for (const auto& r : full_b.records) {
      stream_b += report::to_json_line(r);
      stream_b += '\n';
    }
    verdict(14,
            full_a.all_passed() && full_b.all_passed() &&
                full_a.elapsed_seconds < kFullScanBudget &&
                full_b.elapsed_seconds < kFullScanBudget && stream_a == stream_b,
            "full default scan is clean twice within budget and the two JSONL streams are "
            "byte-identical  (" + secs(full_a.elapsed_seconds) + " and " +
                secs(full_b.elapsed_seconds) + ", " +
                std::to_string(full_a.records.size()) + " records)");
    info("floor-form display vs direct denominator across the full scan: " +
         ratio(full_a, "cyclo_denominator.floor_form") + " (reported, not asserted)");
  }

  if (g_failures == 0)
    std::printf("acceptance: all 14 criteria passed\n");
  else
    std::printf("acceptance: %d of 14 criteria FAILED\n", g_failures);
  return g_failures;
}
