#ifndef BGEV_ERRORS_HPP
#define BGEV_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace bgev {

/// Invalid user-facing parameters (grid, config file, CLI). Exit code 1.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Non-finite input or intermediate value in a numerical routine.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The solution left the finite/bounded regime during time stepping. Exit code 2.
class BlowupError : public NumericalError {
 public:
  BlowupError(const std::string& what, double t) : NumericalError(what), time_(t) {}
  double time() const { return time_; }

 private:
  double time_;
};

/// A factorially weighted series did not reach its tail tolerance by the cap.
class TruncationError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Argument outside the mathematical domain of a formula (e.g. negative norm value).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Too few usable Fourier modes for a decay fit.
class InsufficientBandError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Snapshot / CSV / config file I/O failure or corrupted file. Exit code 3.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace bgev

#endif  // BGEV_ERRORS_HPP
