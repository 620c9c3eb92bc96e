#pragma once

#include <stdexcept>
#include <string>

namespace cqes {

// Invalid numeric input (non-finite coordinates, bad parameters).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// The integrator produced a non-finite state.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An analysis was asked for something the trajectory cannot supply,
// e.g. tunneling statistics from fewer than three crossings.
class AnalysisError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UnsupportedOrderError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace cqes
