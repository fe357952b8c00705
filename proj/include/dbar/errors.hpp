#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace dbar {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Invalid argument or precondition violation (bad exponent, index, size mismatch).
class InvalidArgument : public Error {
public:
  using Error::Error;
};

/// Domain construction or point-location failure.
class GeometryError : public Error {
public:
  using Error::Error;
};

/// Malformed input data (CSV, expressions, config).
class DataError : public Error {
public:
  using Error::Error;
};

/// Raised when a data compatibility condition fails (Neumann mean, Robin phase).
class CompatibilityError : public Error {
public:
  CompatibilityError(std::string what, std::complex<double> integral, double margin)
      : Error(std::move(what)), integral_(integral), margin_(margin) {}

  /// The boundary integral that was tested (∫g dσ or ∫b dσ).
  std::complex<double> integral() const noexcept { return integral_; }
  /// Neumann: |∫g dσ|; Robin: |exp(i∫b dσ) - 1|.
  double margin() const noexcept { return margin_; }

private:
  std::complex<double> integral_;
  double margin_;
};

}  // namespace dbar
