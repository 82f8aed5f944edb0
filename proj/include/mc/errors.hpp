#ifndef MC_ERRORS_HPP
#define MC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace mc {

// Invalid physical/protocol parameters or an assumption of the channel
// model that the given configuration violates.
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Quadrature or enumeration did not finish within its budget.
struct NumericalError : std::runtime_error {
  explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

// Input/output sequences with unequal length or bit composition.
struct CompositionError : std::runtime_error {
  explicit CompositionError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace mc

#endif
