#include "ellva/report.hpp"

#include <algorithm>
#include <cstdio>

namespace ellva {

bool VerificationReport::verdict() const {
  return std::all_of(records.begin(), records.end(),
                     [](const CheckRecord& r) { return r.passed; });
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

Json truncation_json(const Truncation& t) {
  return Json{{"product_order", t.product_order},
              {"series_order", t.series_order},
              {"target_tol", t.target_tol}};
}

Json VerificationReport::to_json() const {
  std::vector<CheckRecord> sorted = records;
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const CheckRecord& a, const CheckRecord& b) { return a.name < b.name; });
  Json checks = Json::array();
  for (const CheckRecord& r : sorted) {
    Json j{{"name", r.name},
           {"anchor", r.anchor},
           {"residual", r.residual},
           {"threshold", r.threshold},
           {"pass", r.passed},
           {"samples", r.samples}};
    if (!r.note.empty()) j["note"] = r.note;
    checks.push_back(std::move(j));
  }
  return Json{{"schema", kReportSchema},
              {"tool", "ellva"},
              {"version", kToolVersion},
              {"config", config},
              {"checks", std::move(checks)},
              {"verdict", verdict() ? "PASS" : "FAIL"}};
}

std::string VerificationReport::to_csv() const {
  std::vector<CheckRecord> sorted = records;
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const CheckRecord& a, const CheckRecord& b) { return a.name < b.name; });
  std::string out = "name,anchor,residual,threshold,pass,samples\n";
  for (const CheckRecord& r : sorted) {
    out += r.name + ",\"" + r.anchor + "\"," + format_double(r.residual) + "," +
           format_double(r.threshold) + "," + (r.passed ? "1" : "0") + "," +
           std::to_string(r.samples) + "\n";
  }
  return out;
}

}  // namespace ellva
