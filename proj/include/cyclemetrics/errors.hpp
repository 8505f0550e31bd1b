#pragma once

#include <stdexcept>
#include <string>

namespace cyclemetrics {

/// Argument outside the mathematical domain of a function or density.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Evaluation beyond the range covered by a tabulated function.
class OutOfRangeError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// A tabulated function could not be built to its accuracy target.
class ConstructionError : public std::runtime_error {
 public:
  ConstructionError(const std::string& what, double achieved)
      : std::runtime_error(what), achieved_(achieved) {}
  double achieved_residual() const noexcept { return achieved_; }

 private:
  double achieved_;
};

/// Closed-form formula requested outside the region where it is asserted.
class ValidityError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace cyclemetrics
