// Experiment manifests: a JSON file names the primes, the exponent
// families, caps, seed, and the output format/destination; running one
// produces a deterministic table of M values, bounds, and ratios.
#ifndef EXPSUM_MANIFEST_HPP
#define EXPSUM_MANIFEST_HPP

#include <json.hpp>

#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "expsum/families.hpp"
#include "expsum/io.hpp"

namespace expsum {

struct ExperimentManifest {
  std::vector<u64> primes;
  std::vector<FamilySpec> families;
  std::string format = "csv";  // csv | json
  std::string out_path;        // empty = stdout
  MaxCaps caps;
  u64 seed = 0;
  unsigned threads = 0;  // 0 = auto

  void validate() const {
    if (primes.empty()) throw std::invalid_argument("manifest: primes must be nonempty");
    if (families.empty()) throw std::invalid_argument("manifest: at least one family required");
    if (caps.max_cost == 0) throw std::invalid_argument("manifest: caps must be positive");
    if (format != "csv" && format != "json")
      throw std::invalid_argument("manifest: format must be csv or json");
    for (u64 p : primes)
      if (!is_prime(p)) throw std::invalid_argument("manifest: " + std::to_string(p) + " is not prime");
  }
};

inline FamilySpec parse_family(const nlohmann::json& j) {
  FamilySpec spec;
  const std::string type = j.at("type").get<std::string>();
  if (type == "fixed") {
    spec.kind = FamilySpec::Kind::fixed;
    spec.exponents = j.at("exponents").get<std::vector<u64>>();
  } else if (type == "divisors") {
    spec.kind = FamilySpec::Kind::divisors;
    spec.m = j.value("m", 1);
  } else if (type == "fixed_difference") {
    spec.kind = FamilySpec::Kind::fixed_difference;
    spec.difference = j.at("difference").get<u64>();
  } else if (type == "explicit") {
    spec.kind = FamilySpec::Kind::explicit_tuples;
    spec.tuples = j.at("tuples").get<std::vector<std::vector<u64>>>();
  } else {
    throw std::invalid_argument("manifest: unknown family type " + type);
  }
  spec.sample_count = j.value("sample", 0);
  return spec;
}

inline ExperimentManifest parse_manifest(const nlohmann::json& j) {
  ExperimentManifest m;
  const auto& jp = j.at("primes");
  if (jp.is_array()) {
    m.primes = jp.get<std::vector<u64>>();
  } else {
    const u64 lo = jp.at("min").get<u64>();
    const u64 hi = jp.at("max").get<u64>();
    u64 mod = 0, residue = 0;
    if (jp.contains("mod")) {
      mod = jp["mod"].at("modulus").get<u64>();
      residue = jp["mod"].at("residue").get<u64>();
    }
    for (u64 p : primes_in_range(lo, hi))
      if (mod == 0 || p % mod == residue) m.primes.push_back(p);
  }
  for (const auto& jf : j.at("families")) m.families.push_back(parse_family(jf));
  if (j.contains("output")) {
    m.format = j["output"].value("format", "csv");
    m.out_path = j["output"].value("path", "");
  }
  if (j.contains("caps")) m.caps.max_cost = j["caps"].value("max_cost", m.caps.max_cost);
  m.seed = j.value("seed", 0);
  m.threads = j.value("threads", 0);
  m.validate();
  return m;
}

inline ExperimentManifest load_manifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("manifest: cannot open " + path);
  nlohmann::json j;
  in >> j;
  return parse_manifest(j);
}

// Catalog order for wide-format emission; absent bounds leave empty cells.
inline const std::vector<std::string>& bound_column_order() {
  static const std::vector<std::string> names = {
      "trivial", "weil", "aku_gcd", "aku56", "sv45", "sv",
      "cp11",    "a65",  "cor22",   "thm21", "thm23"};
  return names;
}

inline std::string scan_rows_to_csv(const std::vector<ScanRow>& rows) {
  CsvWriter w;
  std::vector<std::string> cols = {"p",    "exponents",   "status", "m_full",
                                   "m_star", "evaluations", "reduced"};
  for (const auto& name : bound_column_order()) {
    cols.push_back(name);
    cols.push_back(name + "_case");
    cols.push_back(name + "_ratio");
  }
  w.header(cols);
  for (const auto& row : rows) {
    std::vector<std::string> cells = {std::to_string(row.p),
                                      join_u64(row.exponents, ";"),
                                      row.status,
                                      "",
                                      "",
                                      std::to_string(row.evaluations),
                                      row.reduced ? "1" : "0"};
    if (row.status.rfind("refused", 0) != 0) {
      cells[3] = format_double(row.m_full);
      cells[4] = format_double(row.m_star);
    }
    for (const auto& name : bound_column_order()) {
      const BoundRatio* found = nullptr;
      for (const auto& br : row.bounds)
        if (br.bound.name == name) { found = &br; break; }
      if (found && found->bound.applicable) {
        cells.push_back(format_double(*found->bound.value));
        cells.push_back(found->bound.case_id);
        cells.push_back(format_double(found->ratio));
      } else {
        cells.push_back("");
        cells.push_back(found ? found->bound.case_id : "");
        cells.push_back("");
      }
    }
    w.row(cells);
  }
  return w.str();
}

inline nlohmann::json scan_rows_to_json(const std::vector<ScanRow>& rows) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& row : rows) {
    nlohmann::json jr;
    jr["p"] = row.p;
    jr["exponents"] = row.exponents;
    jr["status"] = row.status;
    if (row.status.rfind("refused", 0) != 0) {
      jr["m_full"] = format_double(row.m_full);
      jr["m_star"] = format_double(row.m_star);
      jr["evaluations"] = row.evaluations;
      jr["reduced"] = row.reduced;
    }
    nlohmann::json jb = nlohmann::json::object();
    for (const auto& br : row.bounds) {
      nlohmann::json one;
      one["applicable"] = br.bound.applicable;
      one["asymptotic"] = br.bound.asymptotic;
      if (!br.bound.case_id.empty()) one["case"] = br.bound.case_id;
      if (br.bound.applicable) {
        one["value"] = format_double(*br.bound.value);
        one["ratio"] = format_double(br.ratio);
        one["exceeds_trivial"] = br.bound.exceeds_trivial;
      }
      jb[br.bound.name] = std::move(one);
    }
    jr["bounds"] = std::move(jb);
    out.push_back(std::move(jr));
  }
  return out;
}

inline std::vector<ScanRow> run_manifest(const ExperimentManifest& m) {
  std::vector<ScanRow> rows;
  for (const auto& family : m.families) {
    auto part = scan_family(family, m.primes, m.caps, m.threads, m.seed);
    for (auto& r : part) rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace expsum

#endif  // EXPSUM_MANIFEST_HPP
