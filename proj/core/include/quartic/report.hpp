#pragma once

// Flat record type for verification outcomes, plus JSONL/CSV serialization.
//
// A Record is one comparison: a prime, a check name, a case label, optional
// sub-identifiers (root g, shift t, parameter m), and expected/actual values
// rendered as strings so that signs, residues and counts all fit one schema.
// JSONL is the canonical interchange format and round-trips; CSV is a
// write-only projection for spreadsheets.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace quartic::report {

struct Record {
  uint64_t p = 0;
  std::string check;       // registry name, e.g. "w_product"
  std::string case_label;  // sub-case within the check, e.g. "closed_form"
  std::optional<uint64_t> g;
  std::optional<uint64_t> t;
  std::optional<uint64_t> m;
  std::string expected;
  std::string actual;
  bool pass = false;

  friend bool operator==(const Record&, const Record&) = default;
};

// One line of JSON, no trailing newline. Keys appear in the fixed order
// p, check, case, g, t, m, expected, actual, pass; absent optionals are
// omitted entirely (not emitted as null).
std::string to_json_line(const Record& rec);

// Inverse of to_json_line. Throws std::invalid_argument on malformed input
// or missing required keys.
Record from_json_line(const std::string& line);

// Whole-file helpers. write_jsonl truncates; read_jsonl skips blank lines.
// Both throw std::runtime_error on I/O failure.
void write_jsonl(const std::string& path, const std::vector<Record>& recs);
std::vector<Record> read_jsonl(const std::string& path);

// CSV projection with header row; empty cells where an optional is absent.
void write_csv(const std::string& path, const std::vector<Record>& recs);

// Per-check aggregate. Failing records are retained up to a cap so that a
// large scan's summary stays small.
struct CheckSummary {
  std::string check;
  uint64_t cases = 0;
  uint64_t passes = 0;
  std::vector<Record> failures;  // first `cap` failing records
};

// Groups by check name, sorted lexicographically.
std::vector<CheckSummary> summarize(const std::vector<Record>& recs,
                                    std::size_t cap = 16);

}  // namespace quartic::report
