#pragma once

#include <stdexcept>
#include <string>

namespace bd {

// Base for all domain errors thrown by the library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Model construction / parameter validation failed.
struct ConfigError final : Error {
  using Error::Error;
};

// z coincides with the saturation concentration z_s (critical case excluded).
struct CriticalZ final : Error {
  using Error::Error;
};

// An operation requires a hypothesis the model provably violates.
struct HypothesisViolation final : Error {
  using Error::Error;
};

// Index outside the domain of the requested coefficient or intensity.
struct InvalidIndex final : Error {
  using Error::Error;
};

// Tabulated model queried beyond its table with tail rule "error".
struct IndexBeyondTable final : Error {
  using Error::Error;
};

// Supercritical-only quantity requested for a subcritical model.
struct SubcriticalRegime final : Error {
  using Error::Error;
};
// Subcritical-only quantity requested for a supercritical model.
struct SubcriticalRequired final : Error {
  using Error::Error;
};

// b_i/a_i not strictly decreasing where a crossing search requires it.
struct NonMonotone final : Error {
  using Error::Error;
};

// z <= z_s: no finite critical cluster size exists.
struct NoNucleus final : Error {
  using Error::Error;
};

// Truncation or schedule limits exhausted without meeting the tolerance.
struct NoConvergence final : Error {
  using Error::Error;
};

// Dense oracle requested beyond its configured size cap.
struct ScaleExceeded final : Error {
  using Error::Error;
};

// ODE truncation boundary holds non-negligible mass.
struct TruncationDominates final : Error {
  using Error::Error;
};

// Event loop exhausted its configured budget before reaching t_end.
struct EventBudgetExceeded final : Error {
  using Error::Error;
};

// Conditioned ensemble ended with fewer survivors than the configured minimum.
struct TooFewSurvivors final : Error {
  using Error::Error;
};

// Fleming-Viot resampling had no live replica to copy from.
struct AllExitedSimultaneously final : Error {
  using Error::Error;
};

// Statistics preconditions.
struct InsufficientSamples final : Error {
  using Error::Error;
};
struct CensoredSamplesPresent final : Error {
  using Error::Error;
};
struct WindowTooShort final : Error {
  using Error::Error;
};
struct IncompatibleSupports final : Error {
  using Error::Error;
};

}  // namespace bd
