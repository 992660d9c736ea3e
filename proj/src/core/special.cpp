#include "special.hpp"

#include <array>
#include <cmath>

#include "error.hpp"

namespace vex {

namespace {
constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczosCoeffs = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7,
};
}  // namespace

double gammaFn(double x) {
    if (!std::isfinite(x)) fail(ErrorCode::DomainError, "gamma of a non-finite argument");
    if (x <= 0.0 && x == std::floor(x)) fail(ErrorCode::DomainError, "gamma pole at a nonpositive integer");
    if (x < 0.5) return kPi / (std::sin(kPi * x) * gammaFn(1.0 - x));
    const double z = x - 1.0;
    double a = kLanczosCoeffs[0];
    const double t = z + kLanczosG + 0.5;
    for (std::size_t i = 1; i < kLanczosCoeffs.size(); ++i) a += kLanczosCoeffs[i] / (z + double(i));
    // t^(z+0.5) split in two factors so large x does not overflow early.
    const double half = std::pow(t, 0.5 * (z + 0.5));
    return std::sqrt(2.0 * kPi) * half * std::exp(-t) * half * a;
}

double unitBallVolume(int n) {
    return std::pow(kPi, 0.5 * n) / gammaFn(0.5 * n + 1.0);
}

}  // namespace vex
