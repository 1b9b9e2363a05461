#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace vlab {

// Parse-time failure; `offset` is the byte position in the input string.
class SyntaxError : public std::runtime_error {
 public:
  SyntaxError(std::string msg, std::size_t offset)
      : std::runtime_error(std::move(msg)), offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

// Particle or axis index outside the declared range.
class IndexError : public std::runtime_error {
 public:
  IndexError(std::string msg, std::size_t offset = 0)
      : std::runtime_error(std::move(msg)), offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

// Rewriting produced more intermediate monomials than the configured cap.
class ExpressionBlowup : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

class DimsError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Operand mixes Position and Momentum factors where a single kind is required.
class MixedKindError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Trajectory left the representable range (overflow, NaN, or a singular-core hit).
class NonFiniteState : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

class GridTooCoarse : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

class ConvergenceFailure : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

class UnknownObservable : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

class ConfigError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace vlab
