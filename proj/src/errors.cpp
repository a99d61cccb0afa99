#include "ilab/errors.hpp"

namespace ilab {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::FieldMismatch: return "FieldMismatch";
    case ErrorKind::DegreeMismatch: return "DegreeMismatch";
    case ErrorKind::BadDegree: return "BadDegree";
    case ErrorKind::DegreeBudgetExceeded: return "DegreeBudgetExceeded";
    case ErrorKind::NotASubset: return "NotASubset";
    case ErrorKind::NotASubgroup: return "NotASubgroup";
    case ErrorKind::NotAPGroup: return "NotAPGroup";
    case ErrorKind::NotASubgroupOfProduct: return "NotASubgroupOfProduct";
    case ErrorKind::InvariantViolation: return "InvariantViolation";
    case ErrorKind::Unsupported: return "Unsupported";
    case ErrorKind::NotCoprime: return "NotCoprime";
    case ErrorKind::BadRange: return "BadRange";
    case ErrorKind::SideConditionViolated: return "SideConditionViolated";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::ScopeExceeded: return "ScopeExceeded";
    case ErrorKind::AssumptionFails: return "AssumptionFails";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& detail)
    : std::runtime_error(std::string(to_string(kind)) + ": " + detail),
      kind_(kind),
      detail_(detail) {}

}  // namespace ilab
