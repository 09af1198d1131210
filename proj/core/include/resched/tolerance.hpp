#pragma once

#include <algorithm>
#include <cmath>

namespace resched {

// Central comparison tolerances. All cost/time comparisons in the library go
// through these helpers so the slack budget is in one place.
struct Tolerance {
    double abs_eps = 1e-9;
    double rel_eps = 1e-9;

    bool close(double a, double b) const {
        return std::fabs(a - b) <= margin(a, b);
    }
    // a <= b up to tolerance
    bool leq(double a, double b) const { return a <= b + margin(a, b); }
    // a < b by more than the tolerance band
    bool strictly_less(double a, double b) const { return a < b - margin(a, b); }

    double margin(double a, double b) const {
        return std::max(abs_eps, rel_eps * std::max(std::fabs(a), std::fabs(b)));
    }
};

inline constexpr double kDefaultAbsEps = 1e-9;
inline constexpr double kDefaultRelEps = 1e-9;
// Grid identities (delta^M = alpha, eta_i * delta^j = eta_{i+j}) are checked
// at this tighter scale.
inline constexpr double kGridRelEps = 1e-12;

inline Tolerance default_tolerance() { return Tolerance{}; }

} // namespace resched
