#pragma once

#include <utility>
#include <vector>

#include "grid.hpp"

namespace vex {

/// Nonnegative real or +infinity.
class ExtendedReal {
public:
    static ExtendedReal infinity() { return ExtendedReal(true, 0.0); }
    explicit ExtendedReal(double v) : ExtendedReal(false, v) {}

    bool isInfinite() const noexcept { return infinite_; }
    double value() const noexcept;

    friend bool operator<=(const ExtendedReal& a, const ExtendedReal& b) {
        if (b.infinite_) return true;
        return !a.infinite_ && a.v_ <= b.v_;
    }

private:
    ExtendedReal(bool inf, double v);
    bool infinite_;
    double v_;
};

struct NormResult {
    double norm = 0.0;
    double modularAtNorm = 0.0;
    int iterations = 0;
    std::pair<double, double> bracket{0.0, 0.0};
    /// Every (lambda, modular(f/lambda)) evaluation the solver made, in order.
    std::vector<std::pair<double, double>> trace;
};

struct LuxemburgOptions {
    double tolerance = 1e-10;
    int maxIterations = 200;
    int maxDoublings = 200;
};

/// sum_j |f_j|^{p_j} * cellVolume; infinite only when a power overflows.
ExtendedReal modular(const SampledField& f, const ExponentField& p);

/// modular(f / lambda, p) without materializing f / lambda.
ExtendedReal scaledModular(const SampledField& f, const ExponentField& p, double lambda);

/// Luxemburg norm by bisection on log(lambda) for the root of modular(f/lambda) = 1.
/// The bracket starts at max|f| and is widened by doubling or halving.
NormResult luxemburgNorm(const SampledField& f, const ExponentField& p, const LuxemburgOptions& opts = {});

/// ||f||_p + sum_i ||D_i f||_p with D_i the grid gradient.
double sobolevNorm(const SampledField& f, const ExponentField& p, const LuxemburgOptions& opts = {});

struct EmbeddingWitness {
    ExtendedReal modularP{0.0};
    ExtendedReal modularQ{0.0};
    ExtendedReal modularR{0.0};
    /// |f|^q <= |f|^p + |f|^r held at every node.
    bool nodewise = true;
    /// modular(f, q) <= modular(f, p) + modular(f, r).
    bool integrated = true;
    std::size_t firstFailingNode = 0;
};

/// Checks the pointwise inequality behind L^p cap L^r embedding into L^q for
/// p <= q <= r. Throws OrderViolation at the first node where the order fails.
EmbeddingWitness intersectionEmbeddingCheck(const SampledField& f, const ExponentField& p,
                                            const ExponentField& q, const ExponentField& r);

}  // namespace vex
