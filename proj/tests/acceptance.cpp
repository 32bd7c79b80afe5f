// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.
// Usage: acceptance <path-to-qpg>

#include <sys/wait.h>
#include <unistd.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "oracles.hpp"
#include "qpg/cli.hpp"

namespace {

using namespace qpg;
using namespace qpg::verify;

const std::vector<double> kQGrid{0.2, 0.5, 0.9, 1.5, 2.0, 5.0};

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Collects the first few reasons a criterion failed.
class Tally {
 public:
  void check(bool ok, const std::string& why) {
    ++checks_;
    if (ok) return;
    ++failures_;
    if (failures_ <= 3) notes_ += (notes_.empty() ? "" : "; ") + why;
  }
  void report(const CheckReport& r, const std::string& prefix = "") {
    for (const CaseResult& c : r.cases) {
      if (!prefix.empty() && c.label.rfind(prefix, 0) != 0) continue;
      std::ostringstream why;
      why << c.label << " q=" << c.q << " x=" << c.x << " margin=" << c.margin;
      check(c.pass, why.str());
      if (c.pass) worst_ = std::min(worst_, c.margin);
    }
  }
  Outcome outcome() const {
    std::ostringstream s;
    s << checks_ << " checks";
    if (failures_ == 0 && std::isfinite(worst_)) s << ", worst margin " << worst_;
    if (failures_ > 0) s << ", " << failures_ << " failed: " << notes_;
    return {failures_ == 0, s.str()};
  }

 private:
  int checks_ = 0;
  int failures_ = 0;
  double worst_ = INFINITY;
  std::string notes_;
};

Outcome identities() {
  Tally t;
  for (double q : kQGrid) {
    const CheckReport r = check_identities(classify(q), GridSpec{});
    for (const char* prefix : {"identity/loggamma_reflection", "identity/transport_",
                               "identity/difference_k"}) {
      t.report(r, prefix);
    }
  }
  return t.outcome();
}

Outcome complete_monotonicity() {
  Tally t;
  for (double q : kQGrid) {
    const CheckReport r = check_cm_theorem1(classify(q), GridSpec{}, CMOrder(4));
    for (int n = 0; n <= 4; ++n) t.report(r, "cm/n=" + std::to_string(n));
    for (const CaseResult& c : r.cases) {
      if (c.label != "cm/n=0") continue;
      std::ostringstream why;
      why << "n=0 q=" << q << " x=" << c.x << " margin " << c.margin << " <= 10x budget";
      t.check(c.margin > 10.0 * c.err_budget, why.str());
    }
  }
  return t.outcome();
}

Outcome proof_oracle() {
  Tally t;
  for (double q : {1.01, 1.5, 2.0, 10.0}) {
    const CheckReport r = check_proof(classify(q));
    t.report(r, "proof/simplify_ineq");
    t.report(r, "proof/double_sum");
    for (int i = 3; i <= 20; ++i) {
      const double residual = theorems::antisymmetry_sum(i, q);
      t.check(std::abs(residual) < 1e-10,
              "antisymmetry q=" + std::to_string(q) + " i=" + std::to_string(i));
    }
  }
  return t.outcome();
}

Outcome monotonicity() {
  Tally t;
  for (double q : kQGrid) {
    const QParam p = classify(q);
    const std::vector<MonotoneFn> fns =
        q > 1.0 ? std::vector{MonotoneFn::Phi, MonotoneFn::Varphi}
                : std::vector{MonotoneFn::PhiSub, MonotoneFn::Theta};
    for (MonotoneFn fn : fns) t.report(check_monotone(fn, p, GridSpec{}));
    t.report(check_identities(p, GridSpec{}), "identity/exp_phi");
  }
  return t.outcome();
}

Outcome sandwich() {
  Tally t;
  for (double q : kQGrid) {
    const CheckReport r = check_sandwich(classify(q), GridSpec{});
    t.report(r);
    for (const char* probe : {"sandwich/sharp_lower", "sandwich/sharp_upper"}) {
      bool found = false;
      for (const CaseResult& c : r.cases) found = found || c.label == probe;
      t.check(found, std::string(probe) + " missing");
    }
  }
  return t.outcome();
}

Outcome classical_limit() {
  Tally t;
  const double gamma = static_cast<double>(oracle::euler_gamma());
  for (double q : {0.999, 1.001}) {
    for (double x : GridSpec{0.5, 10.0, 64, Spacing::Logarithmic}.points()) {
      const double diff = std::abs(q_digamma(classify(q), x).value - digamma_classical(x).value);
      t.check(diff < 0.01, "psi_q q=" + std::to_string(q) + " x=" + std::to_string(x));
    }
  }

  const QParam one = classify(1.0);
  const GridSpec batir_grid{0.01, 50.0, 400, Spacing::Logarithmic};
  t.report(check_monotone(MonotoneFn::Batir, one, batir_grid));
  for (double x : batir_grid.points()) {
    const double v = theorems::batir_function(x).value;
    t.check(v > -gamma - 1e-9 && v < 1e-9, "batir range x=" + std::to_string(x));
  }
  t.check(std::abs(theorems::batir_function(0.01).value + gamma) < 0.02, "batir(0.01) vs -gamma");
  t.check(std::abs(theorems::batir_function(50.0).value) < 0.02, "batir(50) vs 0");

  t.report(check_monotone(MonotoneFn::Remark2, one, GridSpec{}));
  for (double x : GridSpec{}.points()) {
    t.check(theorems::remark2_value(one, x).value < 1.0, "remark2 < 1 x=" + std::to_string(x));
  }
  return t.outcome();
}

Outcome oracle_agreement() {
  Tally t;
  SeriesPolicy tight;
  tight.rel_tol = 1e-17;
  auto spot = [&](const std::string& label, double q, const ScalarFn& lower,
                  const std::function<Certified(double)>& analytic) {
    for (double x : spot_points()) {
      const double fd = richardson_difference(lower, x, 1, default_step(1, x));
      const CaseResult c = fd_case(label, q, x, fd, analytic(x));
      std::ostringstream why;
      why << label << " q=" << q << " x=" << x << " margin=" << c.margin;
      t.check(c.pass, why.str());
    }
  };

  for (double q : kQGrid) {
    const QParam p = classify(q);
    for (int m = 1; m <= DerivOrder::kMax; ++m) {
      spot(
          "psi_q^(" + std::to_string(m) + ")", q,
          [&](double x) { return q_polygamma(p, DerivOrder(m - 1), x, tight).value; },
          [&](double x) { return q_polygamma(p, DerivOrder(m), x); });
    }
    // Theorem 1 derivative paths, checked inside the suite itself.
    t.report(check_cm_theorem1(p, GridSpec{0.5, 8.0, 2}, CMOrder(4)), "cm/fd");
  }
  for (int m = 1; m <= DerivOrder::kMax; ++m) {
    spot(
        "psi^(" + std::to_string(m) + ")", 1.0,
        [&](double x) {
          return m == 1 ? digamma_classical(x).value
                        : polygamma_classical(DerivOrder(m - 1), x).value;
        },
        [&](double x) { return polygamma_classical(DerivOrder(m), x); });
  }

  const double gamma = static_cast<double>(oracle::euler_gamma());
  t.check(std::abs(digamma_classical(1.0).value + gamma) < 1e-12, "digamma_classical(1)");
  return t.outcome();
}

// Runs the qpg binary through the shell, capturing stdout and stderr.
struct Process {
  int code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

Process spawn(const std::string& exe, const std::string& args) {
  const auto dir = std::filesystem::temp_directory_path();
  const auto out = dir / ("qpg_acceptance_" + std::to_string(::getpid()) + ".out");
  const auto err = dir / ("qpg_acceptance_" + std::to_string(::getpid()) + ".err");
  const std::string cmd =
      "'" + exe + "' " + args + " >'" + out.string() + "' 2>'" + err.string() + "'";
  const int status = std::system(cmd.c_str());
  Process p;
  p.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  p.out = slurp(out);
  p.err = slurp(err);
  std::filesystem::remove(out);
  std::filesystem::remove(err);
  return p;
}

bool matches_report_schema(const nlohmann::json& j) {
  static const std::set<std::string> kTop{"suite", "q", "k_max", "cases", "worst_margin", "passed"};
  static const std::set<std::string> kCase{"label", "q", "x", "margin", "err_budget", "pass"};
  if (!j.is_object() || j.size() != kTop.size()) return false;
  for (const auto& [k, v] : j.items()) {
    if (!kTop.count(k)) return false;
  }
  if (!j["suite"].is_string() || !j["q"].is_number() || !j["worst_margin"].is_number() ||
      !j["passed"].is_boolean() || !j["cases"].is_array()) {
    return false;
  }
  if (!j["k_max"].is_null() && !j["k_max"].is_number_integer()) return false;
  for (const auto& c : j["cases"]) {
    if (!c.is_object() || c.size() != kCase.size()) return false;
    for (const auto& [k, v] : c.items()) {
      if (!kCase.count(k)) return false;
    }
    if (!c["label"].is_string() || !c["q"].is_number() || !c["x"].is_number() ||
        !c["margin"].is_number() || !c["err_budget"].is_number() || !c["pass"].is_boolean()) {
      return false;
    }
  }
  return true;
}

bool one_line_diagnostic(const Process& p) {
  return p.out.empty() && !p.err.empty() && p.err.find('\n') == p.err.size() - 1;
}

Outcome cli_contract(const std::string& exe) {
  Tally t;
  if (exe.empty() || !std::filesystem::exists(exe)) {
    t.check(false, "qpg binary not found: '" + exe + "'");
    return t.outcome();
  }

  for (const char* q : {"2", "0.5"}) {
    const Process ok = spawn(exe, std::string("verify --suite all --q ") + q);
    t.check(ok.code == 0, std::string("verify all q=") + q + " exit " + std::to_string(ok.code));
    try {
      const nlohmann::json j = nlohmann::json::parse(ok.out);
      t.check(matches_report_schema(j), "report schema");
      t.check(j["suite"] == "all" && j["passed"] == true, "merged report");
    } catch (const nlohmann::json::exception& e) {
      t.check(false, std::string("json: ") + e.what());
    }
  }
  const Process proof = spawn(exe, "verify --suite proof --q 2");
  try {
    t.check(matches_report_schema(nlohmann::json::parse(proof.out)), "proof report schema");
  } catch (const nlohmann::json::exception& e) {
    t.check(false, std::string("json: ") + e.what());
  }

  const Process failing = spawn(exe, "verify --suite cm --q 2 --max-terms 3");
  t.check(failing.code == 1, "impossible tolerance exit " + std::to_string(failing.code));

  const std::vector<std::string> usage{"",
                                       "table --fn phi_sub --q 2",
                                       "eval --fn digamma --q -1 --x 1",
                                       "eval --fn digamma --q 2 --x 0",
                                       "eval --fn nope --q 2 --x 1",
                                       "verify --suite cm --q 1",
                                       "verify --suite cm --q 2 --k-max 9"};
  for (const std::string& args : usage) {
    const Process p = spawn(exe, args);
    t.check(p.code == 2 && one_line_diagnostic(p),
            "'" + args + "' exit " + std::to_string(p.code));
  }

  const Process b = spawn(exe, "bounds --q 0.5 --x 1");
  t.check(b.code == 0 && b.out.find("lower margin") != std::string::npos, "bounds");

  for (const char* fn : {"digamma", "polygamma", "theorem1", "phi_sub", "loggamma"}) {
    const std::string q = std::string(fn) == "theorem1" ? "2" : "0.5";
    const Process tab = spawn(exe, std::string("table --fn ") + fn + " --m 2 --q " + q +
                                       " --xmin 0.05 --xmax 30 --n 64 --log");
    t.check(tab.code == 0, std::string("table ") + fn);
    std::istringstream in(tab.out);
    std::string line;
    std::getline(in, line);
    t.check(line == qpg::cli::kCsvHeader, "csv header");
    int rows = 0;
    while (std::getline(in, line)) {
      ++rows;
      const qpg::cli::Row r = qpg::cli::parse_csv_row(line);
      const Certified again =
          qpg::cli::evaluate(*qpg::cli::parse_fn(fn), classify(r.q), 2, r.x);
      t.check(r.value == again.value && r.err_bound == again.err_bound &&
                  r.terms == again.terms_used,
              std::string("round trip ") + fn + " x=" + std::to_string(r.x));
    }
    t.check(rows == 64, std::string("row count ") + fn);
  }
  return t.outcome();
}

}  // namespace

int main(int argc, char** argv) {
  const std::string exe = argc > 1 ? argv[1] : "";
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {"identity suite", identities},
      {"Theorem 1 positivity and CM pattern", complete_monotonicity},
      {"proof-inequality oracle", proof_oracle},
      {"Theorem 2 monotonicity", monotonicity},
      {"sandwich and sharpness", sandwich},
      {"classical limit", classical_limit},
      {"oracle agreement", oracle_agreement},
      {"CLI contract", [&] { return cli_contract(exe); }},
  };

  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].run();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::printf("%s %zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].name,
                o.detail.c_str());
  }
  return failed == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
