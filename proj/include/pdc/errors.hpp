#pragma once

#include <stdexcept>
#include <string>

namespace pdc {

// Base class for every error thrown by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The adaptive series cutoff required more terms than the policy's hard cap
// allows; the squeezing is too strong for the requested tolerance.
class TruncationCapExceeded : public Error {
 public:
  using Error::Error;
};

// Conditioning on a heralding event of probability zero.
class DegenerateHerald : public Error {
 public:
  using Error::Error;
};

// The retained mode count is too small for the requested mode-decay parameter.
class ModeTailTooHeavy : public Error {
 public:
  using Error::Error;
};

// No squeezing amplitude satisfies the fidelity constraint.
class Infeasible : public Error {
 public:
  using Error::Error;
};

// A switched-source target probability that no source count can exceed.
class UnreachableTarget : public Error {
 public:
  using Error::Error;
};

// Brute-force enumeration would exceed the configured tuple budget.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

// Closed-form evaluation requested for a detector family without one.
class UnsupportedFamily : public Error {
 public:
  using Error::Error;
};

// Malformed configuration input (CLI / JSON config parsing).
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace pdc
