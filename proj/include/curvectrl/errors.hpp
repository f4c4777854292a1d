#ifndef CURVECTRL_ERRORS_HPP
#define CURVECTRL_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace curvectrl {

// Point-location / evaluation outside the computational domain.
class PointOutsideDomain : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A source curve left the admissible interior region.
class CurveOutsideDomain : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Iterative linear solver failed to meet its residual contract.
class SolverFailure : public std::runtime_error {
 public:
  SolverFailure(const std::string& what, double residual, int iterations)
      : std::runtime_error(what), residual_(residual), iterations_(iterations) {}
  double residual() const { return residual_; }
  int iterations() const { return iterations_; }

 private:
  double residual_;
  int iterations_;
};

// Configuration file / expression syntax problems.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace curvectrl

#endif
