#ifndef QPG_CLI_HPP
#define QPG_CLI_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qpg/verify.hpp"

namespace qpg::cli {

/// Exit codes of the qpg command.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailedCase = 1;
inline constexpr int kExitUsage = 2;

enum class FnId { LogGamma, Digamma, Polygamma, Theorem1, Phi, Varphi, PhiSub, Theta, Remark2, Batir };

std::string_view to_string(FnId fn) noexcept;
std::optional<FnId> parse_fn(std::string_view name) noexcept;

/// One evaluation; m is only read by Polygamma. Theorem1 at q = 1 and Batir
/// use the classical formulas.
Certified evaluate(FnId fn, const QParam& p, int m, double x, const SeriesPolicy& policy = {});

struct Row {
  double q = 0.0;
  double x = 0.0;
  double value = 0.0;
  double err_bound = 0.0;
  std::int64_t terms = 0;
};

inline constexpr std::string_view kCsvHeader = "q,x,value,err_bound,terms";

/// `q,x,value,err_bound,terms` with every real printed to 17 significant digits.
std::string format_csv_row(const Row& row);

/// Parses the output of format_csv_row (and tables with the header line
/// skipped by the caller). Throws Error(DomainError) on malformed input.
Row parse_csv_row(std::string_view line);

/// Runs the qpg command line. args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qpg::cli

#endif  // QPG_CLI_HPP
