#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace rotamp {

// Argument outside the domain of a function (non-positive SNR, pole region, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// An iterative solver ran out of iterations. Keeps the iterates it produced.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, std::vector<double> trajectory)
      : std::runtime_error(what), trajectory_(std::move(trajectory)) {}
  const std::vector<double>& trajectory() const noexcept { return trajectory_; }

 private:
  std::vector<double> trajectory_;
};

// An iteration left the region where its parameters are defined, or blew up.
class DivergenceError : public std::runtime_error {
 public:
  DivergenceError(const std::string& what, int iteration)
      : std::runtime_error(what), iteration_(iteration) {}
  int iteration() const noexcept { return iteration_; }

 private:
  int iteration_;
};

// Exact enumeration would exceed the configured configuration budget.
class BudgetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or inconsistent experiment configuration.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace rotamp
