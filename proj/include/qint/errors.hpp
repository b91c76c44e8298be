#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace qint {

/// Engine fault carrying a stable machine-readable code alongside the message.
/// Codes in use: AlgebraMismatch, DomainMismatch, ArityMismatch, BadWeights,
/// OutOfDomain, NotAligned, BudgetExceeded, CutoffTooSmall, InvalidRelation,
/// NonTerminating, NotClosed, AssociativityFailure, InvalidInput.
class Error : public std::runtime_error {
public:
  Error(std::string code, const std::string& what)
      : std::runtime_error(code + ": " + what), code_(std::move(code)) {}

  const std::string& code() const noexcept { return code_; }

private:
  std::string code_;
};

[[noreturn]] inline void fail(const std::string& code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace qint
