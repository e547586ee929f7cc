#pragma once

#include <stdexcept>
#include <string>

namespace malevich {

// Input fails a domain precondition (box, Hermiticity, trace, ...).
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Kraus set with sum V^dag V != identity.
class CompletenessError : public ValidationError {
 public:
  CompletenessError(const std::string& what, double residual)
      : ValidationError(what), residual_(residual) {}

  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

}  // namespace malevich
