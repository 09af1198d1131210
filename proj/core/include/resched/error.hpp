#pragma once

#include <stdexcept>
#include <string>

namespace resched {

// Base error for invalid inputs and contract violations.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Instance exceeds the configured desk-scale caps of the exact oracle.
struct CapExceeded : Error {
    using Error::Error;
};

} // namespace resched
