#pragma once

#include <stdexcept>
#include <string>

namespace acka {

struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Requested state or matrix would exceed the dense-representation budget.
struct CapacityError : Error {
  using Error::Error;
};

/// Operand dimensions do not match (qubit counts, amplitude lengths).
struct ShapeError : Error {
  using Error::Error;
};

/// A declarative model is self-inconsistent (partition, adversary spec, view request).
struct ModelError : Error {
  using Error::Error;
};

/// An internal precondition that callers must establish was violated.
struct ContractViolation : Error {
  using Error::Error;
};

/// Bad CLI flag or config-file input.
struct ConfigError : Error {
  using Error::Error;
};

/// A party failed to announce in its scheduled slot; the run stops.
struct ProtocolAbort : Error {
  using Error::Error;
};

}  // namespace acka
