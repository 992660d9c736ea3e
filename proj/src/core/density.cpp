#include "density.hpp"

#include <cmath>
#include <limits>

#include "lebesgue.hpp"
#include "riesz.hpp"
#include "special.hpp"

namespace vex {

namespace {
double expTail(double x) { return x > 1.0 ? std::exp(-1.0 / (x - 1.0)) : 0.0; }
}  // namespace

double psi(double x) {
    const double a = expTail(x);
    if (a == 0.0) return 0.0;
    return a / (a + expTail(3.0 - x));
}

double cutoffRadial(double r, double lambda) {
    return psi(lambda * r) * (1.0 - psi(r / lambda));
}

double cutoffG(const Point& x, int dim, double lambda) {
    if (!(lambda > 1.0)) fail(ErrorCode::DomainError, "cutoff parameter lambda must exceed 1");
    double r2 = 0.0;
    for (int d = 0; d < dim; ++d) r2 += x[d] * x[d];
    return cutoffRadial(std::sqrt(r2), lambda);
}

DerivativeBoundWitness derivativeBoundCheck(double lambda, std::size_t probes) {
    if (!(lambda > 1.0)) fail(ErrorCode::DomainError, "cutoff parameter lambda must exceed 1");
    if (probes < 1000) fail(ErrorCode::InvalidArgument, "derivativeBoundCheck needs at least 1000 probes");
    DerivativeBoundWitness w;
    w.probes = probes;
    const double a = 1.0 / (2.0 * lambda), b = 4.0 * lambda;
    const double logSpan = std::log(b / a);
    for (std::size_t k = 0; k < probes; ++k) {
        const double r = a * std::exp(logSpan * (double(k) + 0.5) / double(probes));
        const double delta = 1e-6 * r;
        const double slope = std::abs(cutoffRadial(r + delta, lambda) - cutoffRadial(r - delta, lambda)) / (2.0 * delta);
        const double scaled = slope * r;
        if (scaled > w.c1) {
            w.c1 = scaled;
            w.argmaxRadius = r;
        }
        if (r - delta > 2.0 / lambda && r + delta < lambda) w.plateauMaxGradient = std::max(w.plateauMaxGradient, slope);
    }
    return w;
}

namespace {

void checkGradients(const std::vector<SampledField>& grads) {
    if (grads.empty()) fail(ErrorCode::InvalidArgument, "need one gradient field per axis");
    const Grid& g = grads.front().grid();
    if (grads.size() != std::size_t(g.dim()))
        fail(ErrorCode::InvalidArgument, "need exactly one gradient field per axis");
    for (const auto& df : grads) {
        requireSameGrid(g, df.grid(), "gradient fields");
        requireCompactSupport(df, "gradient field");
    }
}

double norm2(const Point& z, int n) {
    double r2 = 0.0;
    for (int d = 0; d < n; ++d) r2 += z[d] * z[d];
    return r2;
}

}  // namespace

KernelTable representationKernel(const Grid& grid, int axis) {
    const int n = grid.dim();
    return KernelTable(grid, [n, axis](const Point& z, bool origin) {
        // Odd in z_i: the symmetric cell contribution vanishes.
        if (origin) return 0.0;
        const double r = std::sqrt(norm2(z, n));
        return z[axis] / std::pow(r, n);
    });
}

SampledField representationTerm(const std::vector<SampledField>& grads, int axis) {
    checkGradients(grads);
    const Grid& g = grads.front().grid();
    if (axis < 0 || axis >= g.dim()) fail(ErrorCode::InvalidArgument, "axis out of range");
    return convolveFFT(grads[axis], representationKernel(g, axis));
}

SampledField integralRepresentation(const std::vector<SampledField>& grads) {
    checkGradients(grads);
    const Grid& g = grads.front().grid();
    const int n = g.dim();
    SampledField sum = SampledField::zeros(g);
    for (int i = 0; i < n; ++i) sum = sum + representationTerm(grads, i);
    return (1.0 / (n * unitBallVolume(n))) * sum;
}

KernelTable omegaKernel(const Grid& grid, double lambda, int axis) {
    if (!(lambda > 1.0)) fail(ErrorCode::DomainError, "lambda must exceed 1");
    const int n = grid.dim();
    if (axis < 0 || axis >= n) fail(ErrorCode::InvalidArgument, "axis out of range");
    const double s = 1.0 / (lambda * lambda);
    return KernelTable(grid, [n, axis, lambda, s](const Point& z, bool origin) {
        if (origin) return 0.0;
        const double r = std::sqrt(norm2(z, n));
        const double g = cutoffRadial(r, lambda);
        if (g == 0.0) return 0.0;
        return g * z[axis] * std::exp(s * std::log(r)) / std::pow(r, n);
    });
}

SampledField omegaLambda(const std::vector<SampledField>& grads, double lambda, int axis) {
    checkGradients(grads);
    const Grid& g = grads.front().grid();
    return convolveFFT(grads[std::size_t(axis)], omegaKernel(g, lambda, axis));
}

SampledField smoothApproximant(const std::vector<SampledField>& grads, double lambda) {
    checkGradients(grads);
    const Grid& g = grads.front().grid();
    const int n = g.dim();
    SampledField sum = SampledField::zeros(g);
    for (int i = 0; i < n; ++i) sum = sum + omegaLambda(grads, lambda, i);
    return (1.0 / (n * unitBallVolume(n))) * sum;
}

namespace {

void compare(DominationCheck& check, const SampledField& lhs, const SampledField& rhs) {
    for (std::size_t x = 0; x < lhs.size(); ++x) {
        const double l = std::abs(lhs[x]);
        if (l <= rhs[x]) {
            if (rhs[x] > 0.0 && l / rhs[x] > check.maxRatio) {
                check.maxRatio = l / rhs[x];
                check.worstNode = x;
            }
            continue;
        }
        const double ratio = rhs[x] > 0.0 ? l / rhs[x] : std::numeric_limits<double>::infinity();
        if (check.holds || ratio > check.maxRatio) {
            check.maxRatio = ratio;
            check.worstNode = x;
        }
        check.holds = false;
    }
}

}  // namespace

DominationCheck omegaDomination(const std::vector<SampledField>& grads, double lambda, int axis) {
    checkGradients(grads);
    const Grid& g = grads.front().grid();
    if (g.dim() < 2) fail(ErrorCode::DomainError, "I_1 needs n >= 2");
    const SampledField omega = omegaLambda(grads, lambda, axis);
    const SampledField bound = (2.0 * gammaAlpha(1.0, g.dim())) * rieszGridConv(abs(grads[std::size_t(axis)]), 1.0);
    DominationCheck check;
    compare(check, omega, bound);
    return check;
}

DominationCheck derivativeChain(const std::vector<SampledField>& grads, double lambda, int axis) {
    checkGradients(grads);
    if (!(lambda > 1.0)) fail(ErrorCode::DomainError, "lambda must exceed 1");
    const Grid& g = grads.front().grid();
    const int n = g.dim();
    const double s = 1.0 / (lambda * lambda);
    const double cell = singularCellAverage(s - n, g);
    const KernelTable weight(g, [n, s, cell](const Point& z, bool origin) {
        if (origin) return cell;
        const double r = std::sqrt(norm2(z, n));
        return std::exp(s * std::log(r)) / std::pow(r, n);
    });
    const SampledField bound = double(n + 3) * convolveFFT(abs(grads[std::size_t(axis)]), weight);
    const auto dOmega = gradient(omegaLambda(grads, lambda, axis));
    DominationCheck check;
    for (const auto& dj : dOmega) compare(check, dj, bound);
    return check;
}

std::vector<double> ApproximationReport::lambdaSchedule() const {
    std::vector<double> out;
    for (const auto& r : rows) out.push_back(r.lambda);
    return out;
}

ApproximationReport approximateBySmooth(const SampledField& f, const ExponentField& p,
                                        const std::vector<double>& lambdaSchedule) {
    requireSameGrid(f.grid(), p.grid(), "approximateBySmooth");
    if (p.pMinus() < 2.0)
        fail(ErrorCode::HypothesisViolation,
             "smooth approximation needs p_minus >= 2, got " + formatDouble(p.pMinus()));
    for (std::size_t k = 0; k < lambdaSchedule.size(); ++k) {
        if (!(lambdaSchedule[k] > 1.0)) fail(ErrorCode::DomainError, "every lambda must exceed 1");
        if (k > 0 && !(lambdaSchedule[k] > lambdaSchedule[k - 1]))
            fail(ErrorCode::DomainError, "lambda schedule must be strictly increasing");
    }
    requireCompactSupport(f, "approximation input");
    const auto grads = gradient(f);
    const int n = f.grid().dim();

    ApproximationReport report;
    for (double lambda : lambdaSchedule) {
        ApproximationRow row;
        row.lambda = lambda;
        const SampledField approx = smoothApproximant(grads, lambda);
        row.lpError = luxemburgNorm(approx - f, p).norm;
        row.sobolevError = row.lpError;
        const auto dApprox = gradient(approx);
        for (int j = 0; j < n; ++j) {
            const double e = luxemburgNorm(dApprox[std::size_t(j)] - grads[std::size_t(j)], p).norm;
            row.gradErrors.push_back(e);
            row.sobolevError += e;
        }
        if (!report.rows.empty() && row.sobolevError > (1.0 + kTrendSlack) * report.rows.back().sobolevError)
            report.verdict = false;
        report.rows.push_back(std::move(row));
    }
    return report;
}

const char* densityVerdictName(DensityVerdict v) {
    switch (v) {
        case DensityVerdict::DenseByDimension: return "DENSE_BY_DIMENSION";
        case DensityVerdict::DenseByRange: return "DENSE_BY_RANGE";
        case DensityVerdict::DenseByMaximal: return "DENSE_BY_MAXIMAL";
        case DensityVerdict::DenseByLogHolder: return "DENSE_BY_LOG_HOLDER";
        case DensityVerdict::Undecided: return "UNDECIDED";
    }
    return "UNDECIDED";
}

DensityDecision densityCondition(double pMinus, double pPlus, int n, const DensityHypotheses& hyp) {
    if (n < 1) fail(ErrorCode::DomainError, "dimension must be positive");
    if (!(pMinus > 1.0) || !(pMinus <= pPlus) || !std::isfinite(pPlus))
        fail(ErrorCode::DomainError, "need 1 < p_minus <= p_plus < infinity");
    const double dim = double(n);
    // Every route goes through smooth approximation, which needs p_minus >= 2.
    if (pMinus < 2.0)
        return {DensityVerdict::Undecided, "p_minus < 2: no sufficient condition applies"};
    if (pMinus >= dim) return {DensityVerdict::DenseByDimension, "p_minus >= n"};
    const double bound = dim * pMinus / (dim - pMinus);
    if (pPlus <= bound)
        return {DensityVerdict::DenseByRange, "2 <= p_minus < n and p_plus <= n p_minus / (n - p_minus) = " +
                                                  formatDouble(bound)};
    if (hyp.maximalLocallyBounded)
        return {DensityVerdict::DenseByMaximal, "p_minus >= 2 and the maximal operator is locally bounded"};
    if (hyp.logHolder)
        return {DensityVerdict::DenseByLogHolder, "p_minus >= 2 and p is locally log-Holder continuous"};
    return {DensityVerdict::Undecided, "p_plus exceeds n p_minus / (n - p_minus) = " + formatDouble(bound) +
                                           " and no regularity hypothesis was supplied"};
}

}  // namespace vex
