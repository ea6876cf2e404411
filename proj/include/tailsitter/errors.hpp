#pragma once

#include <stdexcept>
#include <string>

namespace tailsitter {

/// Euler conversion requested too close to pitch = ±90°.
struct GimbalLock : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Iterative solver gave up, or the input lies outside its envelope.
struct NoConvergence : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

/// Attitude error close to 180°, where M_q is not invertible.
struct NearSingularAttitudeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Dynamic pressure too low for the ailerons to be useful.
struct LowAirspeedError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Composition of wrenches expressed in different frames.
struct FrameMismatch : std::logic_error {
    using std::logic_error::logic_error;
};

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

class ValidationError : public std::runtime_error {
public:
    ValidationError(std::string key, std::string reason)
        : std::runtime_error(key + ": " + reason), key_(std::move(key)), reason_(std::move(reason)) {}

    const std::string& key() const noexcept { return key_; }
    const std::string& reason() const noexcept { return reason_; }

private:
    std::string key_;
    std::string reason_;
};

}  // namespace tailsitter
