#pragma once

#include <stdexcept>
#include <string>

namespace povline {

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad input: grammar, domain violations, malformed files. CLI exit code 1.
struct validation_error : error {
    using error::error;
};

// Numerically meaningless result: zero spread, density floor, singular
// covariance, non-finite derivative, flagged variance. CLI exit code 2.
struct degenerate_error : error {
    using error::error;
};

}  // namespace povline
