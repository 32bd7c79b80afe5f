#include "qpg/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <array>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

namespace qpg::cli {
namespace {

using theorems::Theorem2Kind;

constexpr std::array<std::pair<FnId, std::string_view>, 10> kFnNames{{
    {FnId::LogGamma, "loggamma"},
    {FnId::Digamma, "digamma"},
    {FnId::Polygamma, "polygamma"},
    {FnId::Theorem1, "theorem1"},
    {FnId::Phi, "phi"},
    {FnId::Varphi, "varphi"},
    {FnId::PhiSub, "phi_sub"},
    {FnId::Theta, "theta"},
    {FnId::Remark2, "remark2"},
    {FnId::Batir, "batir"},
}};

struct Options {
  std::string fn;
  int m = 1;
  double q = 0.0;
  double x = 0.0;
  verify::GridSpec grid;
  bool log = false;
  SeriesPolicy policy;
  std::string format;
  std::string suite = "all";
  int k_max = verify::CMOrder::kMax;
  std::string out_path;
};

// Usage problems found after CLI11 has accepted the arguments.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string one_line(std::string s) {
  for (char& c : s) {
    if (c == '\n' || c == '\r') c = ' ';
  }
  while (!s.empty() && s.back() == ' ') s.pop_back();
  return s;
}

FnId require_fn(const std::string& name) {
  const std::optional<FnId> fn = parse_fn(name);
  if (!fn) throw UsageError("unknown function '" + name + "'");
  return *fn;
}

SeriesPolicy policy_of(const Options& o) {
  o.policy.validate();
  return o.policy;
}

nlohmann::ordered_json row_json(const Row& r) {
  return {{"q", r.q}, {"x", r.x}, {"value", r.value}, {"err_bound", r.err_bound},
          {"terms", r.terms}};
}

void emit_rows(std::ostream& os, const Options& o, FnId fn, const std::vector<Row>& rows) {
  if (o.format == "json") {
    nlohmann::ordered_json j;
    j["fn"] = std::string(to_string(fn));
    j["m"] = fn == FnId::Polygamma ? nlohmann::ordered_json(o.m) : nlohmann::ordered_json();
    j["rows"] = nlohmann::ordered_json::array();
    for (const Row& r : rows) j["rows"].push_back(row_json(r));
    os << j.dump(2) << '\n';
  } else if (o.format == "plain") {
    for (const Row& r : rows) {
      os << to_string(fn) << "(q=" << fmt17(r.q) << ", x=" << fmt17(r.x)
         << ") = " << fmt17(r.value) << " +/- " << fmt17(r.err_bound) << "  [" << r.terms
         << " terms]\n";
    }
  } else {
    os << kCsvHeader << '\n';
    for (const Row& r : rows) os << format_csv_row(r) << '\n';
  }
}

Row evaluate_row(FnId fn, const QParam& p, const Options& o, const SeriesPolicy& policy,
                 double x) {
  const Certified c = evaluate(fn, p, o.m, x, policy);
  return {p.q(), x, c.value, c.err_bound, c.terms_used};
}

int do_eval(const Options& o, std::ostream& os) {
  const FnId fn = require_fn(o.fn);
  const QParam p = classify(o.q);
  emit_rows(os, o, fn, {evaluate_row(fn, p, o, policy_of(o), o.x)});
  return kExitOk;
}

verify::GridSpec grid_of(const Options& o, verify::Spacing spacing) {
  verify::GridSpec g = o.grid;
  g.spacing = spacing;
  g.validate();
  return g;
}

int do_table(const Options& o, std::ostream& os) {
  const FnId fn = require_fn(o.fn);
  const QParam p = classify(o.q);
  const SeriesPolicy policy = policy_of(o);
  const verify::GridSpec grid =
      grid_of(o, o.log ? verify::Spacing::Logarithmic : verify::Spacing::Linear);
  std::vector<Row> rows;
  for (double x : grid.points()) rows.push_back(evaluate_row(fn, p, o, policy, x));
  emit_rows(os, o, fn, rows);
  return kExitOk;
}

verify::CheckReport run_suite(const std::string& suite, const QParam& p,
                              const verify::GridSpec& grid, verify::CMOrder order,
                              const SeriesPolicy& policy) {
  if (suite == "cm") return verify::check_cm_theorem1(p, grid, order, policy);
  if (suite == "sandwich") return verify::check_sandwich(p, grid, policy);
  if (suite == "identities") return verify::check_identities(p, grid, policy);
  if (suite == "proof") return verify::check_proof(p, policy);
  if (suite == "monotone") {
    std::vector<verify::CheckReport> parts;
    for (verify::MonotoneFn fn : verify::monotone_functions_for(p)) {
      parts.push_back(verify::check_monotone(fn, p, grid, policy));
    }
    return verify::merge_reports("monotone", p.q(), std::move(parts));
  }
  std::vector<verify::CheckReport> parts;
  for (const char* s : {"cm", "monotone", "sandwich", "identities", "proof"}) {
    parts.push_back(run_suite(s, p, grid, order, policy));
  }
  return verify::merge_reports("all", p.q(), std::move(parts));
}

int do_verify(const Options& o, std::ostream& os) {
  const QParam p = classify(o.q);
  const SeriesPolicy policy = policy_of(o);
  const verify::GridSpec grid = grid_of(o, verify::Spacing::Logarithmic);
  const verify::CheckReport report = run_suite(o.suite, p, grid, verify::CMOrder(o.k_max), policy);

  if (o.format == "csv") {
    os << "label,q,x,margin,err_budget,pass\n";
    for (const verify::CaseResult& c : report.cases) {
      os << c.label << ',' << fmt17(c.q) << ',' << fmt17(c.x) << ',' << fmt17(c.margin) << ','
         << fmt17(c.err_budget) << ',' << (c.pass ? "true" : "false") << '\n';
    }
  } else if (o.format == "plain") {
    std::size_t failed = 0;
    for (const verify::CaseResult& c : report.cases) {
      if (c.pass) continue;
      ++failed;
      os << "FAIL " << c.label << " q=" << fmt17(c.q) << " x=" << fmt17(c.x)
         << " margin=" << fmt17(c.margin) << " budget=" << fmt17(c.err_budget) << '\n';
    }
    os << "suite " << report.suite_name << " q=" << fmt17(report.q);
    if (report.k_max) os << " k_max=" << *report.k_max;
    os << ": " << report.cases.size() << " cases, " << failed << " failed, worst margin "
       << fmt17(report.worst_margin) << '\n';
  } else {
    os << verify::to_json(report) << '\n';
  }
  return report.passed ? kExitOk : kExitFailedCase;
}

int do_bounds(const Options& o, std::ostream& os) {
  const QParam p = classify(o.q);
  const SeriesPolicy policy = policy_of(o);
  const theorems::BoundsPair b = theorems::digamma_bounds(p, o.x, policy);
  const Certified psi = q_digamma(p, o.x, policy);
  const theorems::SandwichGaps g = theorems::sandwich_gaps(p, o.x, policy);

  if (o.format == "csv") {
    os << "q,x,lower,value,upper,lower_margin,upper_margin\n"
       << fmt17(p.q()) << ',' << fmt17(o.x) << ',' << fmt17(b.lower) << ',' << fmt17(psi.value)
       << ',' << fmt17(b.upper) << ',' << fmt17(g.lower_gap) << ',' << fmt17(g.upper_gap) << '\n';
  } else if (o.format == "json") {
    nlohmann::ordered_json j{{"q", p.q()},         {"x", o.x},
                             {"lower", b.lower},   {"value", psi.value},
                             {"upper", b.upper},   {"lower_margin", g.lower_gap},
                             {"upper_margin", g.upper_gap}};
    os << j.dump(2) << '\n';
  } else {
    os << "q            = " << fmt17(p.q()) << '\n'
       << "x            = " << fmt17(o.x) << '\n'
       << "lower        = " << fmt17(b.lower) << '\n'
       << "psi_q(x)     = " << fmt17(psi.value) << '\n'
       << "upper        = " << fmt17(b.upper) << '\n'
       << "lower margin = " << fmt17(g.lower_gap) << '\n'
       << "upper margin = " << fmt17(g.upper_gap) << '\n';
  }
  return kExitOk;
}

void add_policy_options(CLI::App* sub, Options& o) {
  sub->add_option("--q", o.q, "Base q > 0")->required();
  sub->add_option("--rel-tol", o.policy.rel_tol, "Relative tolerance of the series");
  sub->add_option("--max-terms", o.policy.max_terms, "Series term cap");
  sub->add_option("--out", o.out_path, "Write output to this file");
}

void add_grid_options(CLI::App* sub, Options& o) {
  sub->add_option("--xmin", o.grid.x_min, "Grid start");
  sub->add_option("--xmax", o.grid.x_max, "Grid end");
  sub->add_option("--n", o.grid.n_points, "Number of grid points");
}

CLI::Option* add_format(CLI::App* sub, Options& o) {
  return sub->add_option("--format", o.format, "Output format")
      ->check(CLI::IsMember({"csv", "json", "plain"}));
}

void add_fn_options(CLI::App* sub, Options& o) {
  std::vector<std::string> names;
  for (const auto& [id, name] : kFnNames) names.emplace_back(name);
  sub->add_option("--fn", o.fn, "Function to evaluate")->required()->check(CLI::IsMember(names));
  sub->add_option("--m", o.m, "Derivative order for polygamma (0-6)");
}

}  // namespace

std::string_view to_string(FnId fn) noexcept {
  for (const auto& [id, name] : kFnNames) {
    if (id == fn) return name;
  }
  return "unknown";
}

std::optional<FnId> parse_fn(std::string_view name) noexcept {
  for (const auto& [id, n] : kFnNames) {
    if (n == name) return id;
  }
  return std::nullopt;
}

Certified evaluate(FnId fn, const QParam& p, int m, double x, const SeriesPolicy& policy) {
  switch (fn) {
    case FnId::LogGamma: return log_q_gamma(p, x, policy);
    case FnId::Digamma: return q_digamma(p, x, policy);
    case FnId::Polygamma: return q_polygamma(p, DerivOrder(m), x, policy);
    case FnId::Theorem1:
      return p.branch() == Branch::Classical ? theorems::theorem1_classical(x)
                                             : theorems::theorem1_value(p, x, policy);
    case FnId::Phi: return theorems::theorem2_value(Theorem2Kind::PhiSuper, p, x, policy);
    case FnId::Varphi: return theorems::theorem2_value(Theorem2Kind::VarphiSuper, p, x, policy);
    case FnId::PhiSub: return theorems::theorem2_value(Theorem2Kind::PhiSub, p, x, policy);
    case FnId::Theta: return theorems::theorem2_value(Theorem2Kind::ThetaSub, p, x, policy);
    case FnId::Remark2: return theorems::remark2_value(p, x, policy);
    case FnId::Batir: return theorems::batir_function(x);
  }
  throw Error(Errc::DomainError, "unknown function");
}

std::string format_csv_row(const Row& row) {
  return fmt17(row.q) + ',' + fmt17(row.x) + ',' + fmt17(row.value) + ',' + fmt17(row.err_bound) +
         ',' + std::to_string(row.terms);
}

Row parse_csv_row(std::string_view line) {
  std::array<std::string_view, 5> fields;
  std::size_t start = 0;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    const std::size_t end = i + 1 < fields.size() ? line.find(',', start) : line.size();
    if (end == std::string_view::npos) throw Error(Errc::DomainError, "too few CSV fields");
    fields[i] = line.substr(start, end - start);
    start = end + 1;
  }
  auto parse = [](std::string_view f, auto& v) {
    const auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), v);
    if (ec != std::errc() || ptr != f.data() + f.size()) {
      throw Error(Errc::DomainError, "malformed CSV field '" + std::string(f) + "'");
    }
  };
  Row r;
  parse(fields[0], r.q);
  parse(fields[1], r.x);
  parse(fields[2], r.value);
  parse(fields[3], r.err_bound);
  parse(fields[4], r.terms);
  return r;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Certified q-gamma and q-polygamma evaluation", "qpg"};
  app.require_subcommand(1, 1);

  CLI::App* eval = app.add_subcommand("eval", "Evaluate one function at one point");
  add_fn_options(eval, o);
  add_policy_options(eval, o);
  eval->add_option("--x", o.x, "Argument x > 0")->required();
  add_format(eval, o);

  CLI::App* table = app.add_subcommand("table", "Tabulate a function on a grid");
  add_fn_options(table, o);
  add_policy_options(table, o);
  add_grid_options(table, o);
  table->add_flag("--log", o.log, "Logarithmic grid spacing");
  add_format(table, o);

  CLI::App* ver = app.add_subcommand("verify", "Run property-verification suites");
  add_policy_options(ver, o);
  add_grid_options(ver, o);
  ver->add_flag("--log", o.log, "Logarithmic grid spacing (always used by verify)");
  ver->add_option("--suite", o.suite, "Suite to run")
      ->check(CLI::IsMember({"cm", "monotone", "sandwich", "identities", "proof", "all"}));
  ver->add_option("--k-max", o.k_max, "Highest derivative order of the sign-pattern check");
  add_format(ver, o);

  CLI::App* bounds = app.add_subcommand("bounds", "Print the double inequality for psi_q");
  add_policy_options(bounds, o);
  bounds->add_option("--x", o.x, "Argument x > 0")->required();
  add_format(bounds, o);

  std::vector<const char*> argv{"qpg"};
  for (const std::string& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << (app.get_subcommands().empty() ? app.help() : app.get_subcommands().front()->help());
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "qpg: " << one_line(e.what()) << '\n';
    return kExitUsage;
  }

  if (o.format.empty()) o.format = ver->parsed() ? "json" : (bounds->parsed() ? "plain" : "csv");

  std::ostringstream buffer;
  int code = kExitOk;
  try {
    if (eval->parsed()) code = do_eval(o, buffer);
    else if (table->parsed()) code = do_table(o, buffer);
    else if (ver->parsed()) code = do_verify(o, buffer);
    else code = do_bounds(o, buffer);
  } catch (const std::exception& e) {
    err << "qpg: " << one_line(e.what()) << '\n';
    return kExitUsage;
  }

  if (o.out_path.empty()) {
    out << buffer.str();
  } else {
    std::ofstream file(o.out_path, std::ios::binary);
    file << buffer.str();
    if (!file) {
      err << "qpg: cannot write '" << o.out_path << "'\n";
      return kExitUsage;
    }
  }
  return code;
}

}  // namespace qpg::cli
