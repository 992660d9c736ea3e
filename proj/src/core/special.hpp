#pragma once

namespace vex {

inline constexpr double kPi = 3.141592653589793238462643383279502884;

/// Gamma function, Lanczos approximation (g = 7, 9 terms) with reflection
/// for x < 1/2. Relative error below 1e-13 on (0, 20].
double gammaFn(double x);

/// Volume of the unit ball in R^n.
double unitBallVolume(int n);

}  // namespace vex
