#include <algorithm>
#include <limits>
#include <tuple>

#include <json.hpp>

#include "qpg/verify.hpp"

namespace qpg::verify {

void CheckReport::finalize() {
  std::stable_sort(cases.begin(), cases.end(), [](const CaseResult& a, const CaseResult& b) {
    return std::tie(a.label, a.q, a.x) < std::tie(b.label, b.q, b.x);
  });
  passed = std::all_of(cases.begin(), cases.end(), [](const CaseResult& c) { return c.pass; });
  worst_margin = cases.empty() ? 0.0 : std::numeric_limits<double>::infinity();
  for (const CaseResult& c : cases) worst_margin = std::min(worst_margin, c.margin);
}

CheckReport merge_reports(std::string suite_name, double q, std::vector<CheckReport> parts) {
  CheckReport out;
  out.suite_name = std::move(suite_name);
  out.q = q;
  for (CheckReport& part : parts) {
    if (part.k_max) out.k_max = part.k_max;
    std::move(part.cases.begin(), part.cases.end(), std::back_inserter(out.cases));
  }
  out.finalize();
  return out;
}

std::string to_json(const CheckReport& report, int indent) {
  nlohmann::ordered_json cases = nlohmann::ordered_json::array();
  for (const CaseResult& c : report.cases) {
    cases.push_back({{"label", c.label},
                     {"q", c.q},
                     {"x", c.x},
                     {"margin", c.margin},
                     {"err_budget", c.err_budget},
                     {"pass", c.pass}});
  }
  nlohmann::ordered_json j;
  j["suite"] = report.suite_name;
  j["q"] = report.q;
  j["k_max"] = report.k_max ? nlohmann::ordered_json(*report.k_max) : nlohmann::ordered_json();
  j["cases"] = std::move(cases);
  j["worst_margin"] = report.worst_margin;
  j["passed"] = report.passed;
  return j.dump(indent);
}

}  // namespace qpg::verify
