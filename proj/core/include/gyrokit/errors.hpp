#pragma once

#include <stdexcept>
#include <string>

namespace gyrokit {

/// Input violates a documented precondition or physical domain
/// (e.g. transmission outside [0,1], evaluation outside a data hull).
class DomainError : public std::runtime_error {
 public:
  explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

/// A numerical procedure failed to produce a trustworthy result
/// (singular matrix, bracket without sign change, non-convergence).
class NumericsError : public std::runtime_error {
 public:
  explicit NumericsError(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed external data or configuration (CSV/JSON ingestion).
class IngestError : public std::runtime_error {
 public:
  explicit IngestError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace gyrokit
