#pragma once

// Scan orchestration: run a configurable set of checks over every prime in a
// congruence class and range, in parallel, and emit a deterministic stream
// of report::Records plus per-case tallies.
//
// Determinism contract: for a fixed config (including seed) two runs produce
// byte-identical record streams. Work is sharded per prime; workers fill
// pre-sized slots that are merged in prime order, and all sampling is seeded
// from (seed, p, tag) only.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "quartic/report.hpp"

namespace quartic::scan {

// Which primes to visit. PrimeContext needs p = 1 (mod 4), so OneMod4 is the
// widest class; checks still gate themselves further (see CheckInfo).
enum class ClassFilter { OneMod4, OneMod8, NineMod16, OneMod16 };

const char* to_string(ClassFilter f) noexcept;
// Accepts "all", "1mod4", "1mod8", "9mod16", "1mod16".
std::optional<ClassFilter> parse_class_filter(const std::string& s);

// Root coverage for root-indexed checks. First = smallest primitive root
// only; All = every primitive root, with one tau record per root.
enum class RootsMode { First, All };

inline constexpr uint64_t kDefaultSeed = 0x9e3779b97f4a7c15ull;

struct ScanConfig {
  uint64_t min_p = 17;
  uint64_t max_p = 10000;  // inclusive
  ClassFilter filter = ClassFilter::OneMod8;
  std::vector<std::string> checks;  // registry names; empty = every check
  unsigned workers = 0;             // 0 = resolve_workers(0)
  RootsMode roots_mode = RootsMode::First;
  bool exhaustive = false;  // enumerate every t and m regardless of p
  // Full t/m enumeration (and, for cyclo_denominator, full root coverage)
  // for p <= sample_threshold; above it, sample_count deterministic samples.
  uint64_t sample_threshold = 2000;
  std::size_t sample_count = 128;
  uint64_t seed = kDefaultSeed;
  // Emit one record per root even where a multi-root sweep would normally
  // collapse to a per-prime summary line.
  bool per_root_records = false;
};

struct CheckInfo {
  std::string name;
  std::string summary;
  // The check runs on p iff p % gate_mod == gate_rem (on top of the scan's
  // own class filter).
  uint64_t gate_mod = 8;
  uint64_t gate_rem = 1;
};

// Fixed registration order; per-prime record order follows it.
const std::vector<CheckInfo>& check_registry();
bool is_known_check(const std::string& name);

// Tally keys ("check.case") whose disagreements are data to report, not
// failures: they never count against all_passed().
const std::vector<std::string>& reported_tally_keys();
bool is_reported_tally(const std::string& key);

struct Tally {
  uint64_t cases = 0;
  uint64_t passes = 0;
};

struct ScanResult {
  std::vector<report::Record> records;   // deterministic order
  std::map<std::string, Tally> tallies;  // key "check.case"
  uint64_t primes_scanned = 0;
  double elapsed_seconds = 0.0;  // wall clock; never serialized

  // True iff every non-reported tally is clean.
  bool all_passed() const;
};

// requested > 0 wins; else the QUARTIC_WORKERS environment variable; else
// std::thread::hardware_concurrency(). Never returns 0.
unsigned resolve_workers(unsigned requested);

// Throws std::invalid_argument on unknown check names or min_p > max_p.
// Worker exceptions propagate after all threads are joined.
ScanResult run_scan(const ScanConfig& cfg);

}  // namespace quartic::scan
