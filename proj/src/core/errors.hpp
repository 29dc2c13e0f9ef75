#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace loglab {

// Error taxonomy shared by the core and the C API layer; each kind maps onto
// exactly one status code at the library boundary.
enum class ErrorKind {
  invalid_argument,
  domain,
  singular_operator,
  no_convergence,
  step_size,
  mean_sign,
  insufficient_data,
};

class LabError : public std::runtime_error {
public:
  LabError(ErrorKind kind, std::string msg)
      : std::runtime_error(std::move(msg)), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

private:
  ErrorKind kind_;
};

struct InvalidArgumentError : LabError {
  explicit InvalidArgumentError(std::string msg)
      : LabError(ErrorKind::invalid_argument, std::move(msg)) {}
};

struct DomainError : LabError {
  explicit DomainError(std::string msg)
      : LabError(ErrorKind::domain, std::move(msg)) {}
};

struct SingularOperatorError : LabError {
  SingularOperatorError(std::string msg, double pivot, std::size_t index)
      : LabError(ErrorKind::singular_operator, std::move(msg)),
        pivot(pivot), index(index) {}
  double pivot;
  std::size_t index;
};

struct ConvergenceError : LabError {
  ConvergenceError(std::string msg, double last_residual, double mu)
      : LabError(ErrorKind::no_convergence, std::move(msg)),
        last_residual(last_residual), mu(mu) {}
  double last_residual;
  double mu;
};

struct StepSizeError : LabError {
  explicit StepSizeError(std::string msg)
      : LabError(ErrorKind::step_size, std::move(msg)) {}
};

struct MeanSignError : LabError {
  explicit MeanSignError(std::string msg)
      : LabError(ErrorKind::mean_sign, std::move(msg)) {}
};

struct InsufficientDataError : LabError {
  explicit InsufficientDataError(std::string msg)
      : LabError(ErrorKind::insufficient_data, std::move(msg)) {}
};

}  // namespace loglab
