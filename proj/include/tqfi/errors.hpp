// errors.hpp — Typed failures, so callers can tell bad input from numerical trouble

#pragma once

#include <stdexcept>

namespace tqfi {

// Input-shaped problems: the data handed in violates a precondition.
struct NonHermitianInput : std::invalid_argument { using std::invalid_argument::invalid_argument; };
struct NotPSD            : std::invalid_argument { using std::invalid_argument::invalid_argument; };
struct TraceExceedsOne   : std::invalid_argument { using std::invalid_argument::invalid_argument; };
struct InvalidRank       : std::invalid_argument { using std::invalid_argument::invalid_argument; };
struct NotAProjector     : std::invalid_argument { using std::invalid_argument::invalid_argument; };

// The truncated closed form is only defined for m strictly below the rank;
// asking for m >= rank is a semantics error, not a numerical one.
struct TruncationNotStrict : std::invalid_argument { using std::invalid_argument::invalid_argument; };

// Runtime numerical trouble: the computation itself could not be trusted.
struct DeltaTooLarge : std::runtime_error { using std::runtime_error::runtime_error; };
struct NonConvergent : std::runtime_error { using std::runtime_error::runtime_error; };

} // namespace tqfi
