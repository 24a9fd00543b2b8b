#pragma once

#include <stdexcept>
#include <string>

namespace dtop {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A search guard (enumeration size, node budget) was hit. Callers that report
// bounds catch this and degrade to "unknown".
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

// Raised when a constructive step fails to verify.
// Never caught internally.
class ConstructionFailure : public Error {
 public:
  using Error::Error;
};

}  // namespace dtop
