#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace lfom {

enum class ErrorCode {
  Domain,
  NumericalGuard,
  ProbeTooClose,
  DegenerateGeometry,
  NotEnclosed,
  NonConvergence,
  Schema,
};

std::string_view to_string(ErrorCode code);

/// Base of every error thrown by the library. `code()` is stable and is what
/// the CLI and the HTTP service report in machine-readable diagnostics.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class DomainError : public Error {
 public:
  explicit DomainError(const std::string& message)
      : Error(ErrorCode::Domain, message) {}
};

class NumericalGuardError : public Error {
 public:
  explicit NumericalGuardError(const std::string& message)
      : Error(ErrorCode::NumericalGuard, message) {}
};

class ProbeTooClose : public Error {
 public:
  ProbeTooClose(const std::string& message, std::string wall_id,
                double distance)
      : Error(ErrorCode::ProbeTooClose, message),
        wall_id_(std::move(wall_id)),
        distance_(distance) {}

  const std::string& wall_id() const noexcept { return wall_id_; }
  double distance() const noexcept { return distance_; }

 private:
  std::string wall_id_;
  double distance_;
};

class DegenerateGeometry : public Error {
 public:
  explicit DegenerateGeometry(const std::string& message)
      : Error(ErrorCode::DegenerateGeometry, message) {}
};

/// Azimuth interval [begin, end) in radians, global frame, 0 <= begin < end <= 2π.
struct AngleInterval {
  double begin = 0.0;
  double end = 0.0;

  double width() const noexcept { return end - begin; }
};

/// Raised when some azimuths from the probe hit no wall. The uncovered
/// directions are carried along so callers can point at the gap.
class NotEnclosed : public Error {
 public:
  NotEnclosed(const std::string& message, std::vector<AngleInterval> gaps)
      : Error(ErrorCode::NotEnclosed, message), gaps_(std::move(gaps)) {}

  const std::vector<AngleInterval>& gaps() const noexcept { return gaps_; }

 private:
  std::vector<AngleInterval> gaps_;
};

class NonConvergence : public Error {
 public:
  explicit NonConvergence(const std::string& message)
      : Error(ErrorCode::NonConvergence, message) {}
};

/// Document-level validation failure. `field` is a JSON-pointer-like path,
/// `line`/`column` are 1-based and 0 when unknown.
class SchemaError : public Error {
 public:
  SchemaError(const std::string& message, std::string field, int line = 0,
              int column = 0)
      : Error(ErrorCode::Schema, message),
        field_(std::move(field)),
        line_(line),
        column_(column) {}

  const std::string& field() const noexcept { return field_; }
  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  std::string field_;
  int line_;
  int column_;
};

}  // namespace lfom
