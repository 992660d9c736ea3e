#pragma once

#include <string>
#include <vector>

#include "convolution.hpp"
#include "grid.hpp"

namespace vex {

/// Smooth step: 0 for x <= 1, 1 for x >= 2, built from e^{-1/(x-1)}.
double psi(double x);

/// Radial profile of the cutoff g_lambda(x) = psi(lambda |x|) (1 - psi(|x| / lambda)).
double cutoffRadial(double r, double lambda);

/// g_lambda at a point of R^n (first `dim` coordinates of x).
double cutoffG(const Point& x, int dim, double lambda);

struct CutoffFamily {
    double lambda;
    double c1;  // sampled sup of |grad g_lambda(x)| * |x|
};

struct DerivativeBoundWitness {
    double c1 = 0.0;               // max over probes of |grad g| * |x|
    double argmaxRadius = 0.0;
    double plateauMaxGradient = 0.0;  // largest |grad g| seen strictly inside the plateau
    std::size_t probes = 0;
};

/// Samples |grad g_lambda| by central differences at `probes` log-spaced
/// radii in (1/(2 lambda), 4 lambda). Requires lambda > 1, probes >= 1000.
DerivativeBoundWitness derivativeBoundCheck(double lambda, std::size_t probes = 4000);

/// Kernel z_i / |z|^n with value 0 at z = 0.
KernelTable representationKernel(const Grid& grid, int axis);

/// (n omega_n)^{-1} sum_i (z_i / |z|^n) * D_i f, which reconstructs f.
SampledField integralRepresentation(const std::vector<SampledField>& gradFields);

/// Unscaled i-th term of the representation: (z_i / |z|^n) * D_i f.
SampledField representationTerm(const std::vector<SampledField>& gradFields, int axis);

/// Kernel g_lambda(y) y_i |y|^{1/lambda^2 - n}, with |y|^{1/lambda^2}
/// evaluated as exp(log|y| / lambda^2).
KernelTable omegaKernel(const Grid& grid, double lambda, int axis);

/// omega_lambda^i = omegaKernel * D_i f.
SampledField omegaLambda(const std::vector<SampledField>& gradFields, double lambda, int axis);

struct DominationCheck {
    bool holds = true;
    double maxRatio = 0.0;     // max over nodes of lhs / rhs
    std::size_t worstNode = 0;
};

/// |omega_lambda^i| <= 2 gamma(1) I_1(|D_i f|) at every node. Needs n >= 2.
DominationCheck omegaDomination(const std::vector<SampledField>& gradFields, double lambda, int axis);

/// |D_j omega_lambda^i| <= (n + 3) int |D_i f(x - y)| |y|^{1/lambda^2 - n} dy
/// at every node and for every j; D_j is the grid gradient.
DominationCheck derivativeChain(const std::vector<SampledField>& gradFields, double lambda, int axis);

struct ApproximationRow {
    double lambda = 0.0;
    double lpError = 0.0;
    std::vector<double> gradErrors;
    double sobolevError = 0.0;
};

struct ApproximationReport {
    std::vector<ApproximationRow> rows;
    bool verdict = true;  // Sobolev error nonincreasing within the slack

    std::vector<double> lambdaSchedule() const;
};

inline constexpr double kTrendSlack = 0.02;

/// Smooth approximant S_lambda = (n omega_n)^{-1} sum_i omega_lambda^i for
/// each lambda, with its L^p(.) and Sobolev distances to f.
/// Requires p_minus >= 2 (HypothesisViolation otherwise).
ApproximationReport approximateBySmooth(const SampledField& f, const ExponentField& p,
                                        const std::vector<double>& lambdaSchedule);

/// Same pipeline returning S_lambda itself.
SampledField smoothApproximant(const std::vector<SampledField>& gradFields, double lambda);

enum class DensityVerdict {
    DenseByDimension,
    DenseByRange,
    DenseByMaximal,
    DenseByLogHolder,
    Undecided,
};

const char* densityVerdictName(DensityVerdict v);

struct DensityHypotheses {
    bool maximalLocallyBounded = false;
    bool logHolder = false;
};

struct DensityDecision {
    DensityVerdict verdict;
    std::string reason;
};

/// Sufficient conditions for density of C_0^infinity in W^{1,p(.)}(R^n).
/// Never answers "not dense".
DensityDecision densityCondition(double pMinus, double pPlus, int n, const DensityHypotheses& hyp = {});

}  // namespace vex
