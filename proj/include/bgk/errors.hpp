#pragma once

#include <stdexcept>

namespace bgk {

/// Invalid problem or discretization parameters.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Point evaluation outside the spatial domain.
struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Moments with density or temperature below the admissibility floors.
struct InadmissibleState : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// The invariant matrix E E^T is singular (fewer than three velocities).
struct RankDeficiency : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Periodic sweep iteration did not reach tolerance within the cap.
struct IterationLimit : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A time step produced an unusable state; carries the step index in the message.
struct StepFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace bgk
