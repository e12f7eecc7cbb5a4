#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ecg {

/// Failure categories shared by every module. The CLI maps these onto
/// exit codes (input errors -> 2, numerical errors -> 3).
enum class ErrorKind {
  Domain,              // argument outside the operation's domain
  UnsupportedModel,    // operation not defined for this model tag
  InvalidParams,       // PressureParams / config invariant violated
  Accuracy,            // iteration budget exhausted before tolerance
  Bracket,             // root bracket without sign change
  NoRootInRange,       // bracket expansion ran off the representable range
  Degenerate,          // e.g. shock speed between equal densities
  NumericalLimit,      // density floor reached while solving
  Internal,            // a proven-impossible branch was taken
  Absent,              // requested feature not present in a solution
  NotDeltaCase,        // limit target requested for non-delta data
  Precondition,        // caller-side precondition (regions, thresholds)
  Schedule,            // sweep schedule invalid for the data
  DomainTooSmall,      // waves would reach the grid boundary
  Positivity,          // negative density after a finite-volume update
  UnsupportedComparison,
  Input,               // malformed problem file or flags
};

constexpr std::string_view to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::Domain: return "domain";
    case ErrorKind::UnsupportedModel: return "unsupported-model";
    case ErrorKind::InvalidParams: return "invalid-params";
    case ErrorKind::Accuracy: return "accuracy";
    case ErrorKind::Bracket: return "bracket";
    case ErrorKind::NoRootInRange: return "no-root-in-range";
    case ErrorKind::Degenerate: return "degenerate";
    case ErrorKind::NumericalLimit: return "numerical-limit";
    case ErrorKind::Internal: return "internal";
    case ErrorKind::Absent: return "absent";
    case ErrorKind::NotDeltaCase: return "not-a-delta-case";
    case ErrorKind::Precondition: return "precondition";
    case ErrorKind::Schedule: return "schedule";
    case ErrorKind::DomainTooSmall: return "domain-too-small";
    case ErrorKind::Positivity: return "positivity";
    case ErrorKind::UnsupportedComparison: return "unsupported-comparison";
    case ErrorKind::Input: return "input";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Thrown when an iterative kernel runs out of budget. Carries the best
/// estimate so callers can decide whether it is usable anyway.
class AccuracyError : public Error {
 public:
  AccuracyError(const std::string& what, double best, double lo, double hi)
      : Error(ErrorKind::Accuracy, what), best_(best), lo_(lo), hi_(hi) {}

  double best_estimate() const noexcept { return best_; }
  double bracket_lo() const noexcept { return lo_; }
  double bracket_hi() const noexcept { return hi_; }

 private:
  double best_, lo_, hi_;
};

inline bool is_input_error(ErrorKind k) {
  switch (k) {
    case ErrorKind::InvalidParams:
    case ErrorKind::Precondition:
    case ErrorKind::Schedule:
    case ErrorKind::Input:
    case ErrorKind::NotDeltaCase:
    case ErrorKind::UnsupportedModel:
    case ErrorKind::Domain:
      return true;
    default:
      return false;
  }
}

}  // namespace ecg
