#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ilab {

enum class ErrorKind {
  DivisionByZero,
  FieldMismatch,
  DegreeMismatch,
  BadDegree,
  DegreeBudgetExceeded,
  NotASubset,
  NotASubgroup,
  NotAPGroup,
  NotASubgroupOfProduct,
  InvariantViolation,
  Unsupported,
  NotCoprime,
  BadRange,
  SideConditionViolated,
  BudgetExceeded,
  ScopeExceeded,
  AssumptionFails,
  ParseError,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& detail);
  ErrorKind kind() const noexcept { return kind_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorKind kind_;
  std::string detail_;
};

}  // namespace ilab
