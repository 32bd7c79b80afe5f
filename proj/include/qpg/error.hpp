#ifndef QPG_ERROR_HPP
#define QPG_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace qpg {

enum class Errc {
  NonPositiveQ,
  DomainError,
  ToleranceNotMet,
  OrderTooLarge,
  ClassicalBranch,
  BranchMismatch,
  LogDomain,
};

std::string_view to_string(Errc code) noexcept;

// Every failure in the library is reported through this type; the code is
// what callers (and the CLI exit-code mapping) switch on.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace qpg

#endif  // QPG_ERROR_HPP
