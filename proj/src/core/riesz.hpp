#pragma once

#include <vector>

#include "convolution.hpp"
#include "grid.hpp"

namespace vex {

/// pi^{n/2} 2^alpha Gamma(alpha/2) / Gamma((n - alpha)/2), for 0 < alpha < n.
double gammaAlpha(double alpha, int n);

/// pi^{-alpha/2} Gamma(alpha/2).
double fourierConstant(double alpha);

/// Average of |z|^exponent over the grid cell centred at the origin,
/// exponent > -n. The cell minus its half-size copy is integrated by
/// Romberg-extrapolated midpoint sums on the 4^n dyadic subcells; the
/// scaling identity for the half-size copy closes the recursion.
double singularCellAverage(double exponent, const Grid& grid, double relTol = 1e-12);

struct RieszKernelSpec {
    double alpha;
    double gamma;
    double singularCellValue;

    RieszKernelSpec(double alpha, const Grid& grid);
    KernelTable table(const Grid& grid) const;
};

/// O(N^2) reference evaluator of the Riesz potential I_alpha f.
SampledField rieszDirect(const SampledField& f, double alpha);

/// Same finite sum as rieszDirect through a zero-padded DFT convolution.
SampledField rieszGridConv(const SampledField& f, double alpha);

/// Fourier multiplier (2 pi |k|)^{-alpha} on the zero-padded DFT, zero mode
/// dropped. Requires alpha < n/2.
SampledField rieszSpectral(const SampledField& f, double alpha);

/// The same multiplier with the grid taken as one period; a harness for
/// checking single Fourier modes.
SampledField rieszSpectralPeriodic(const SampledField& f, double alpha);

struct Lemma1Row {
    double alpha = 0.0;
    double l2Error = 0.0;         // ||I_alpha f - f||_2
    double l2NormRiesz = 0.0;     // ||I_alpha f||_2
    double innerProduct = 0.0;    // <I_alpha f, f>
    double spectralInner = 0.0;   // (2 pi)^{-alpha} int |f^(k)|^2 |k|^{-alpha} dk on the same DFT
    bool trendOk = true;          // all three columns moved toward their limits
};

struct ConvergenceReport {
    std::vector<Lemma1Row> rows;
    double fNorm = 0.0;           // ||f||_2
    bool errorDecreasing = true;  // strictly
    bool normTrend = true;        // | ||I f|| - ||f|| | nonincreasing
    bool innerTrend = true;       // | <I f, f> - ||f||^2 | nonincreasing
    double errorRatio = 0.0;      // last / first error, 0 when fewer than two rows

    bool verdict() const { return errorDecreasing && normTrend && innerTrend; }
};

/// Runs I_alpha f through the spectral path for each alpha of the schedule.
/// Every alpha must lie in (0, min(1/2, n/2)).
ConvergenceReport lemma1Experiment(const SampledField& f, const std::vector<double>& alphaSchedule);

}  // namespace vex
