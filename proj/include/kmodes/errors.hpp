#pragma once

#include <stdexcept>
#include <string>

namespace kmodes {

/// Base class for every failure raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A caller-supplied value violates a documented precondition.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// lngamma evaluated at a nonpositive integer.
class PoleError : public Error {
 public:
  using Error::Error;
};

/// ₂F₁ with c at a nonpositive integer (non-polynomial case), or a closed
/// form whose basis function does not exist for the given parameters.
class DegenerateParameterError : public Error {
 public:
  using Error::Error;
};

class NonConvergenceError : public Error {
 public:
  using Error::Error;
};

/// ₂F₁ at z = 1 with Re(c − a − b) ≤ 0.
class DivergenceError : public Error {
 public:
  using Error::Error;
};

/// Evaluation inside the exclusion radius of a singular time/position.
class SingularityError : public Error {
 public:
  SingularityError(const std::string& what, double where)
      : Error(what), where_(where) {}
  double where() const noexcept { return where_; }

 private:
  double where_;
};

/// Evaluation outside the domain where a formula is stated.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Division by a vanishing value (e.g. a node of the bosonic mode).
class ZeroDivisionError : public Error {
 public:
  using Error::Error;
};

/// Integrator failure; carries the last time successfully reached.
class NumericalFailure : public Error {
 public:
  NumericalFailure(const std::string& what, double last_good_time)
      : Error(what), last_good_time_(last_good_time) {}
  double last_good_time() const noexcept { return last_good_time_; }

 private:
  double last_good_time_;
};

/// An evaluation error re-raised with the grid point it occurred at.
class GridPointError : public Error {
 public:
  GridPointError(const std::string& what, double t) : Error(what), t_(t) {}
  double t() const noexcept { return t_; }

 private:
  double t_;
};

}  // namespace kmodes
