#pragma once

#include <json.hpp>
#include <string>
#include <vector>

#include "ellva/truncation.hpp"

namespace ellva {

using Json = nlohmann::ordered_json;

inline constexpr const char* kToolVersion = "0.3.0";
inline constexpr int kReportSchema = 1;

// One verified property. `anchor` names the identity being measured so a
// report line can be reproduced without reading the driver source.
struct CheckRecord {
  std::string name;
  std::string anchor;
  double residual = 0.0;
  double threshold = 0.0;
  bool passed = false;
  int samples = 0;
  std::string note;

  static CheckRecord make(std::string name, std::string anchor, double residual, double threshold,
                          int samples, std::string note = {}) {
    CheckRecord r;
    r.name = std::move(name);
    r.anchor = std::move(anchor);
    r.residual = residual;
    r.threshold = threshold;
    r.passed = residual < threshold;
    r.samples = samples;
    r.note = std::move(note);
    return r;
  }
  static CheckRecord failure(std::string name, std::string anchor, std::string why) {
    CheckRecord r;
    r.name = std::move(name);
    r.anchor = std::move(anchor);
    r.residual = std::numeric_limits<double>::infinity();
    r.threshold = 0.0;
    r.passed = false;
    r.note = std::move(why);
    return r;
  }
};

struct VerificationReport {
  Json config;  // fully resolved run configuration, truncation included
  std::vector<CheckRecord> records;

  void add(CheckRecord r) { records.push_back(std::move(r)); }
  void merge(const VerificationReport& other) {
    records.insert(records.end(), other.records.begin(), other.records.end());
  }
  bool verdict() const;
  // Deterministic serialization: records sorted by name, doubles emitted by
  // nlohmann's shortest-roundtrip writer.
  Json to_json() const;
  std::string to_csv() const;
};

std::string format_double(double v);  // 17 significant digits

Json truncation_json(const Truncation& t);

}  // namespace ellva
