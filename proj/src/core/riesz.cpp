#include "riesz.hpp"

#include <cmath>

#include "special.hpp"

namespace vex {

double gammaAlpha(double alpha, int n) {
    if (n < 1) fail(ErrorCode::DomainError, "dimension must be positive");
    if (!(alpha > 0.0 && alpha < double(n)))
        fail(ErrorCode::DomainError, "alpha must lie in (0, n), got " + formatDouble(alpha));
    return std::pow(kPi, 0.5 * n) * std::pow(2.0, alpha) * gammaFn(0.5 * alpha) / gammaFn(0.5 * (n - alpha));
}

double fourierConstant(double alpha) {
    if (!(alpha > 0.0)) fail(ErrorCode::DomainError, "alpha must be positive");
    return std::pow(kPi, -0.5 * alpha) * gammaFn(0.5 * alpha);
}

namespace {

// Midpoint sum of |z|^exponent over the 4^n - 2^n outer dyadic subcells of
// the cell, m points per subcell axis.
double outerShellSum(double exponent, const Grid& grid, std::size_t m) {
    const int n = grid.dim();
    std::array<double, kMaxDim> step{};
    for (int d = 0; d < n; ++d) step[d] = grid.spacing(d) / 4.0 / double(m);
    const std::size_t perAxis = 4 * m;
    std::size_t total = 1;
    for (int d = 0; d < n; ++d) total *= perAxis;
    std::vector<double> terms;
    terms.reserve(total);
    for (std::size_t i = 0; i < total; ++i) {
        std::size_t rest = i;
        bool central = true;
        double r2 = 0.0;
        for (int d = 0; d < n; ++d) {
            const std::size_t q = rest % perAxis;
            rest /= perAxis;
            const std::size_t sub = q / m;
            central = central && (sub == 1 || sub == 2);
            const double z = -0.5 * grid.spacing(d) + (double(q) + 0.5) * step[d];
            r2 += z * z;
        }
        if (central) continue;
        terms.push_back(std::pow(r2, 0.5 * exponent));
    }
    double w = 1.0;
    for (int d = 0; d < n; ++d) w *= step[d];
    return pairwiseSum(terms) * w;
}

}  // namespace

double singularCellAverage(double exponent, const Grid& grid, double relTol) {
    const int n = grid.dim();
    const double homogeneity = double(n) + exponent;
    if (!(homogeneity > 0.0)) fail(ErrorCode::DomainError, "cell average of |z|^e needs e > -n");
    const int maxLevel = n == 1 ? 14 : (n == 2 ? 8 : 5);
    std::vector<std::vector<double>> romberg;
    double best = 0.0;
    for (int k = 0; k <= maxLevel; ++k) {
        romberg.emplace_back(std::size_t(k + 1));
        romberg[k][0] = outerShellSum(exponent, grid, std::size_t(1) << k);
        double factor = 1.0;
        for (int j = 1; j <= k; ++j) {
            factor *= 4.0;
            romberg[k][j] = romberg[k][j - 1] + (romberg[k][j - 1] - romberg[k - 1][j - 1]) / (factor - 1.0);
        }
        best = romberg[k][k];
        if (k > 0 && std::abs(best - romberg[k - 1][k - 1]) <= relTol * std::abs(best)) break;
    }
    // The half-size inner cell carries 2^{-(n + exponent)} of the whole.
    const double whole = best / (1.0 - std::pow(2.0, -homogeneity));
    return whole / grid.cellVolume();
}

RieszKernelSpec::RieszKernelSpec(double alpha_, const Grid& grid)
    : alpha(alpha_), gamma(gammaAlpha(alpha_, grid.dim())),
      singularCellValue(singularCellAverage(alpha_ - grid.dim(), grid)) {}

KernelTable RieszKernelSpec::table(const Grid& grid) const {
    const int n = grid.dim();
    const double e = alpha - double(n);
    const double cell = singularCellValue;
    return KernelTable(grid, [n, e, cell](const Point& z, bool origin) {
        if (origin) return cell;
        double r2 = 0.0;
        for (int d = 0; d < n; ++d) r2 += z[d] * z[d];
        return std::pow(r2, 0.5 * e);
    });
}

namespace {

void checkRieszInput(const SampledField& f, double alpha) {
    const int n = f.grid().dim();
    if (!(alpha > 0.0 && alpha < double(n)))
        fail(ErrorCode::DomainError, "alpha must lie in (0, n), got " + formatDouble(alpha));
    requireCompactSupport(f, "Riesz potential input");
}

}  // namespace

SampledField rieszDirect(const SampledField& f, double alpha) {
    checkRieszInput(f, alpha);
    const RieszKernelSpec spec(alpha, f.grid());
    return (1.0 / spec.gamma) * convolveDirect(f, spec.table(f.grid()));
}

SampledField rieszGridConv(const SampledField& f, double alpha) {
    checkRieszInput(f, alpha);
    const RieszKernelSpec spec(alpha, f.grid());
    return (1.0 / spec.gamma) * convolveFFT(f, spec.table(f.grid()));
}

namespace {

double rieszMultiplier(const Point& k, int n, double alpha) {
    double k2 = 0.0;
    for (int d = 0; d < n; ++d) k2 += k[d] * k[d];
    if (k2 == 0.0) return 0.0;
    return std::pow(2.0 * kPi * std::sqrt(k2), -alpha);
}

void checkSpectralAlpha(int n, double alpha) {
    if (!(alpha > 0.0 && alpha < 0.5 * n))
        fail(ErrorCode::DomainError, "spectral Riesz path needs 0 < alpha < n/2, got " + formatDouble(alpha));
}

}  // namespace

SampledField rieszSpectral(const SampledField& f, double alpha) {
    const int n = f.grid().dim();
    checkSpectralAlpha(n, alpha);
    requireCompactSupport(f, "Riesz potential input");
    return applyPaddedMultiplier(f, [n, alpha](const Point& k) { return rieszMultiplier(k, n, alpha); });
}

SampledField rieszSpectralPeriodic(const SampledField& f, double alpha) {
    const int n = f.grid().dim();
    checkSpectralAlpha(n, alpha);
    return applyPeriodicMultiplier(f, [n, alpha](const Point& k) { return rieszMultiplier(k, n, alpha); });
}

ConvergenceReport lemma1Experiment(const SampledField& f, const std::vector<double>& alphaSchedule) {
    const Grid& g = f.grid();
    const int n = g.dim();
    const double upper = std::min(0.5, 0.5 * n);
    for (double a : alphaSchedule)
        if (!(a > 0.0 && a < upper))
            fail(ErrorCode::DomainError, "schedule entry " + formatDouble(a) + " outside (0, " +
                                             formatDouble(upper) + ")");
    requireCompactSupport(f, "lemma1Experiment input");

    ConvergenceReport report;
    report.fNorm = l2Norm(f);
    const double fNorm2 = innerProduct(f, f);

    // |f^(k)|^2 on the padded DFT, scaled to the continuous transform:
    // f^(k) ~ h^n F_m, dk = 1 / (prod padded * h^n).
    const PaddedSpectrum spec = paddedSpectrum(f);
    double paddedCount = 1.0;
    for (int d = 0; d < n; ++d) paddedCount *= double(spec.padded[d]);
    const double parsevalScale = g.cellVolume() / paddedCount;

    for (double alpha : alphaSchedule) {
        Lemma1Row row;
        row.alpha = alpha;
        const SampledField If = rieszSpectral(f, alpha);
        row.l2Error = l2Norm(If - f);
        row.l2NormRiesz = l2Norm(If);
        row.innerProduct = innerProduct(If, f);
        std::vector<double> terms(spec.bins.size());
        for (std::size_t b = 0; b < spec.bins.size(); ++b)
            terms[b] = spec.hermitianWeight(b) * std::norm(spec.bins[b]) *
                       rieszMultiplier(spec.frequency(b), n, alpha);
        row.spectralInner = pairwiseSum(terms) * parsevalScale;

        if (!report.rows.empty()) {
            const Lemma1Row& prev = report.rows.back();
            const bool errDown = row.l2Error < prev.l2Error || (row.l2Error == 0.0 && prev.l2Error == 0.0);
            const bool normDown =
                std::abs(row.l2NormRiesz - report.fNorm) <= std::abs(prev.l2NormRiesz - report.fNorm);
            const bool innerDown = std::abs(row.innerProduct - fNorm2) <= std::abs(prev.innerProduct - fNorm2);
            row.trendOk = errDown && normDown && innerDown;
            report.errorDecreasing = report.errorDecreasing && errDown;
            report.normTrend = report.normTrend && normDown;
            report.innerTrend = report.innerTrend && innerDown;
        }
        report.rows.push_back(row);
    }
    if (report.rows.size() >= 2 && report.rows.front().l2Error > 0.0)
        report.errorRatio = report.rows.back().l2Error / report.rows.front().l2Error;
    return report;
}

}  // namespace vex
