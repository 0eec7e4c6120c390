#pragma once

#include <stdexcept>
#include <string>

namespace coxlim {

// Malformed input: bad datum file, wrong vector length, invalid arguments.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public InputError {
 public:
  ParseError(int line, const std::string& what)
      : InputError("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

// A precondition on the mathematical object failed (isotropic reflection
// vector, vector in V0, disconnected subset where a connected one is needed).
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A computation ran into one of its configured caps before finishing.
class BudgetExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Eigenvalues too close to zero on both sides to decide a sign.
class DegenerateSpectrum : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace coxlim
