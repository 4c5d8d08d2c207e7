#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dequad {

// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An integrand sample came back NaN or Inf.
class NonFiniteSample : public Error {
 public:
  NonFiniteSample(double t, double x)
      : Error("non-finite integrand sample at t=" + std::to_string(t) +
              " (x=" + std::to_string(x) + ")"),
        t_(t), x_(x) {}

  double t() const noexcept { return t_; }
  double x() const noexcept { return x_; }

 private:
  double t_;
  double x_;
};

// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Elimination hit a pivot below the relative threshold.
class SingularSystem : public Error {
 public:
  SingularSystem(std::size_t column, double pivot)
      : Error("singular system: pivot " + std::to_string(pivot) +
              " in column " + std::to_string(column)),
        column_(column) {}

  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t column_;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace dequad
