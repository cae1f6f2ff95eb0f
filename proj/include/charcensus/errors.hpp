// Exception taxonomy shared across modules.  The CLI maps ValidationError to
// exit code 2 and ScaleGuardError to exit code 3.
#ifndef CHARCENSUS_ERRORS_HPP
#define CHARCENSUS_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace charcensus {

// Bad or out-of-contract input (reducible polynomial, wrong degree, malformed
// config, non-coprime Hensel factors, ...).
struct ValidationError : std::runtime_error {
    explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

// The requested computation is beyond the enumerable-scale guards; the message
// names the override path when one exists.
struct ScaleGuardError : std::runtime_error {
    explicit ScaleGuardError(const std::string& msg) : std::runtime_error(msg) {}
};

// An internal cross-check failed (e.g. a q-polynomial fit came out non-monic);
// signals a bug rather than bad input.
struct ConsistencyError : std::logic_error {
    explicit ConsistencyError(const std::string& msg) : std::logic_error(msg) {}
};

}  // namespace charcensus

#endif
