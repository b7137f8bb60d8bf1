#pragma once

#include <stdexcept>
#include <string>

namespace ngas {

// Exit-code classes used by the CLI: domain -> 3, convergence -> 4.
struct DomainError : std::domain_error {
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

// Raised when a requested phase (e.g. the broken-symmetry branch) has no admissible root.
struct PhaseError : DomainError {
  explicit PhaseError(const std::string& what) : DomainError(what) {}
};

struct ConvergenceError : std::runtime_error {
  explicit ConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace ngas
