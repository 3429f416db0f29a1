#pragma once

#include <stdexcept>
#include <string>

namespace nullflow {

// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A metric lost positive definiteness (or was never positive definite).
class SingularMetricError : public Error {
 public:
  SingularMetricError(int node, double eigenvalue)
      : Error("metric is not positive definite at node " + std::to_string(node) +
              " (smallest eigenvalue " + std::to_string(eigenvalue) + ")"),
        node_(node),
        eigenvalue_(eigenvalue) {}

  int node() const noexcept { return node_; }
  double eigenvalue() const noexcept { return eigenvalue_; }

 private:
  int node_;
  double eigenvalue_;
};

// Invalid configuration or scenario parameters.
class ConfigError : public Error {
 public:
  using Error::Error;
};

class GridMismatchError : public Error {
 public:
  GridMismatchError() : Error("fields live on different grids") {}
  explicit GridMismatchError(const std::string& what) : Error(what) {}
};

// Explicit time step exceeds the stability limit of the stiffest node.
class CflViolation : public Error {
 public:
  CflViolation(double dt, double limit, int node)
      : Error("time step " + std::to_string(dt) + " exceeds stability limit " +
              std::to_string(limit) + " at node " + std::to_string(node)),
        dt_(dt),
        limit_(limit),
        node_(node) {}

  double dt() const noexcept { return dt_; }
  double limit() const noexcept { return limit_; }
  int node() const noexcept { return node_; }

 private:
  double dt_;
  double limit_;
  int node_;
};

// A field value violates a domain requirement (positivity, upper bound, finiteness).
class DomainError : public Error {
 public:
  DomainError(const std::string& what, int node, int sample = -1)
      : Error(what + " at node " + std::to_string(node) +
              (sample >= 0 ? " (sample " + std::to_string(sample) + ")" : std::string{})),
        node_(node),
        sample_(sample) {}

  int node() const noexcept { return node_; }
  int sample() const noexcept { return sample_; }

 private:
  int node_;
  int sample_;
};

}  // namespace nullflow
