#include "quartic/report.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace quartic::report {

using ordered_json = nlohmann::ordered_json;

std::string to_json_line(const Record& rec) {
  ordered_json j;
  j["p"] = rec.p;
  j["check"] = rec.check;
  j["case"] = rec.case_label;
  if (rec.g) j["g"] = *rec.g;
  if (rec.t) j["t"] = *rec.t;
  if (rec.m) j["m"] = *rec.m;
  j["expected"] = rec.expected;
  j["actual"] = rec.actual;
  j["pass"] = rec.pass;
  return j.dump();
}

Record from_json_line(const std::string& line) {
  ordered_json j;
  try {
    j = ordered_json::parse(line);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("bad JSONL record: ") + e.what());
  }
  if (!j.is_object()) throw std::invalid_argument("JSONL record is not an object");
  Record rec;
  try {
    rec.p = j.at("p").get<uint64_t>();
    rec.check = j.at("check").get<std::string>();
    rec.case_label = j.at("case").get<std::string>();
    if (j.contains("g")) rec.g = j["g"].get<uint64_t>();
    if (j.contains("t")) rec.t = j["t"].get<uint64_t>();
    if (j.contains("m")) rec.m = j["m"].get<uint64_t>();
    rec.expected = j.at("expected").get<std::string>();
    rec.actual = j.at("actual").get<std::string>();
    rec.pass = j.at("pass").get<bool>();
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("bad JSONL record: ") + e.what());
  }
  return rec;
}

void write_jsonl(const std::string& path, const std::vector<Record>& recs) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  for (const auto& rec : recs) out << to_json_line(rec) << '\n';
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::vector<Record> read_jsonl(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  std::vector<Record> recs;
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    recs.push_back(from_json_line(line));
  }
  return recs;
}

namespace {

// RFC-4180 quoting; only applied when the cell needs it.
std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string csv_opt(const std::optional<uint64_t>& v) {
  return v ? std::to_string(*v) : std::string();
}

}  // namespace

void write_csv(const std::string& path, const std::vector<Record>& recs) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << "p,check,case,g,t,m,expected,actual,pass\n";
  for (const auto& rec : recs) {
    out << rec.p << ',' << csv_cell(rec.check) << ',' << csv_cell(rec.case_label)
        << ',' << csv_opt(rec.g) << ',' << csv_opt(rec.t) << ',' << csv_opt(rec.m)
        << ',' << csv_cell(rec.expected) << ',' << csv_cell(rec.actual) << ','
        << (rec.pass ? "true" : "false") << '\n';
  }
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::vector<CheckSummary> summarize(const std::vector<Record>& recs,
                                    std::size_t cap) {
  std::map<std::string, CheckSummary> by_check;
  for (const auto& rec : recs) {
    auto& s = by_check[rec.check];
    if (s.check.empty()) s.check = rec.check;
    ++s.cases;
    if (rec.pass) {
      ++s.passes;
    } else if (s.failures.size() < cap) {
      s.failures.push_back(rec);
    }
  }
  std::vector<CheckSummary> out;
  out.reserve(by_check.size());
  for (auto& [name, s] : by_check) out.push_back(std::move(s));
  return out;
}

}  // namespace quartic::report
