#pragma once

namespace sdec {

// Relative tolerance used by every geometric predicate. Defaults to 1e-10 and
// can be overridden with the SIGNED_DEC_EPS environment variable (read once,
// on first use) or programmatically with set_eps().
double eps();
void set_eps(double value);

// Simplices whose k-volume falls below this fraction of (longest edge)^k / k!
// are treated as degenerate.
inline constexpr double kDegeneracyRatio = 1e-12;

} // namespace sdec
