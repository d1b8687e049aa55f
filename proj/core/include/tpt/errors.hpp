/* Shared exception types.  Every refusal path in the library is an explicit
 * throw of one of these; callers translate them into exit codes / JSON. */
#pragma once

#include <stdexcept>
#include <string>

namespace tpt {

/// Working precision was insufficient to certify a decision.  Callers may
/// retry with more bits; the library never silently guesses instead.
class precision_error : public std::runtime_error {
public:
    explicit precision_error(const std::string& what) : std::runtime_error(what) {}
};

/// A structural precondition failed (improper parametrization, inadmissible
/// line, point not on curve, ...).  The message names the condition.
class invariant_error : public std::runtime_error {
public:
    explicit invariant_error(const std::string& what) : std::runtime_error(what) {}
};

/// A certified decision (root separation, cluster separation, tangent
/// distinctness) could not be reached at the requested precision.  This is
/// a refusal, not a falsification; retrying with more bits may succeed.
class PrecisionExhausted : public precision_error {
public:
    explicit PrecisionExhausted(const std::string& what) : precision_error(what) {}
};

} // namespace tpt
