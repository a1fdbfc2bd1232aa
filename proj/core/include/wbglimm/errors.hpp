#pragma once

#include <stdexcept>
#include <string>

namespace wbglimm {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the domain of the operation (ρ ≤ 0, r ≤ 0, ...).
class DomainError : public Error {
public:
  using Error::Error;
};

/// An iterative solver failed to reach its tolerance.
class ConvergenceError : public Error {
public:
  ConvergenceError(const std::string& what, int iterations, double residual)
      : Error(what + " (iterations=" + std::to_string(iterations) +
              ", residual=" + std::to_string(residual) + ")"),
        iterations_(iterations), residual_(residual) {}

  int iterations() const noexcept { return iterations_; }
  double residual() const noexcept { return residual_; }

private:
  int iterations_;
  double residual_;
};

/// A steady state was evaluated beyond its sonic point.
class SonicError : public DomainError {
public:
  SonicError(const std::string& what, double radius, double sonic_radius)
      : DomainError(what + " (r=" + std::to_string(radius) +
                    ", sonic radius=" + std::to_string(sonic_radius) + ")"),
        radius_(radius), sonic_radius_(sonic_radius) {}

  double radius() const noexcept { return radius_; }
  double sonic_radius() const noexcept { return sonic_radius_; }

private:
  double radius_;
  double sonic_radius_;
};

/// Failure while building or evaluating a generalized Riemann problem.
class GrpError : public Error {
public:
  GrpError(const std::string& what, double radius)
      : Error(what + " (r=" + std::to_string(radius) + ")"), radius_(radius) {}

  double radius() const noexcept { return radius_; }

private:
  double radius_;
};

/// Failure while resolving a triple Riemann problem.
class TripleError : public Error {
public:
  TripleError(const std::string& what, double achieved_time)
      : Error(what + " (achieved t=" + std::to_string(achieved_time) + ")"),
        achieved_time_(achieved_time) {}

  double achieved_time() const noexcept { return achieved_time_; }

private:
  double achieved_time_;
};

}  // namespace wbglimm
