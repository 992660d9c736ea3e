#include "lebesgue.hpp"

#include <cmath>
#include <limits>

namespace vex {

ExtendedReal::ExtendedReal(bool inf, double v) : infinite_(inf), v_(v) {
    if (!inf && !(v >= 0.0 && std::isfinite(v)))
        fail(ErrorCode::InvalidArgument, "extended real must be a finite nonnegative value or +inf");
}

double ExtendedReal::value() const noexcept {
    return infinite_ ? std::numeric_limits<double>::infinity() : v_;
}

ExtendedReal modular(const SampledField& f, const ExponentField& p) {
    return scaledModular(f, p, 1.0);
}

ExtendedReal scaledModular(const SampledField& f, const ExponentField& p, double lambda) {
    requireSameGrid(f.grid(), p.grid(), "modular");
    if (!(lambda > 0.0)) fail(ErrorCode::InvalidArgument, "scale must be positive");
    // Division per node keeps the result monotone in lambda.
    std::vector<double> terms(f.size());
    for (std::size_t j = 0; j < terms.size(); ++j) {
        const double a = std::abs(f[j]) / lambda;
        const double t = std::pow(a, p[j]);
        if (std::isinf(t) || std::isinf(a)) return ExtendedReal::infinity();
        terms[j] = t;
    }
    const double s = pairwiseSum(terms) * f.grid().cellVolume();
    if (std::isinf(s)) return ExtendedReal::infinity();
    return ExtendedReal(s);
}

NormResult luxemburgNorm(const SampledField& f, const ExponentField& p, const LuxemburgOptions& opts) {
    requireSameGrid(f.grid(), p.grid(), "luxemburgNorm");
    NormResult result;
    const double top = f.maxAbs();
    if (top == 0.0) return result;

    auto eval = [&](double lambda) {
        const double rho = scaledModular(f, p, lambda).value();
        result.trace.emplace_back(lambda, rho);
        return rho;
    };
    auto accept = [&](double lambda, double rho) {
        result.norm = lambda;
        result.modularAtNorm = rho;
        return result;
    };

    // Invariant once bracketed: modular(f/lo) > 1 > modular(f/hi).
    double lo = top, hi = top;
    double rho = eval(top);
    if (std::abs(rho - 1.0) <= opts.tolerance) return accept(top, rho);
    int steps = 0;
    if (rho > 1.0) {
        while (rho > 1.0) {
            if (++steps > opts.maxDoublings)
                fail(ErrorCode::SolverFailure, "could not bracket the Luxemburg norm from above");
            lo = hi;
            hi *= 2.0;
            rho = eval(hi);
        }
        result.bracket = {lo, hi};
        if (std::abs(rho - 1.0) <= opts.tolerance) return accept(hi, rho);
    } else {
        while (rho < 1.0) {
            if (++steps > opts.maxDoublings)
                fail(ErrorCode::SolverFailure, "could not bracket the Luxemburg norm from below");
            hi = lo;
            lo *= 0.5;
            rho = eval(lo);
        }
        result.bracket = {lo, hi};
        if (std::abs(rho - 1.0) <= opts.tolerance) return accept(lo, rho);
    }

    for (int it = 1; it <= opts.maxIterations; ++it) {
        const double lambda = std::sqrt(lo) * std::sqrt(hi);
        rho = eval(lambda);
        result.iterations = it;
        if (std::abs(rho - 1.0) <= opts.tolerance) return accept(lambda, rho);
        if (lambda <= lo || lambda >= hi) break;
        (rho > 1.0 ? lo : hi) = lambda;
    }
    fail(ErrorCode::SolverFailure,
         "bisection stalled at modular " + formatDouble(rho) + " without reaching tolerance");
}

double sobolevNorm(const SampledField& f, const ExponentField& p, const LuxemburgOptions& opts) {
    requireSameGrid(f.grid(), p.grid(), "sobolevNorm");
    double total = luxemburgNorm(f, p, opts).norm;
    for (const auto& df : gradient(f)) total += luxemburgNorm(df, p, opts).norm;
    return total;
}

EmbeddingWitness intersectionEmbeddingCheck(const SampledField& f, const ExponentField& p,
                                            const ExponentField& q, const ExponentField& r) {
    requireSameGrid(f.grid(), p.grid(), "intersectionEmbeddingCheck");
    requireSameGrid(f.grid(), q.grid(), "intersectionEmbeddingCheck");
    requireSameGrid(f.grid(), r.grid(), "intersectionEmbeddingCheck");
    for (std::size_t j = 0; j < f.size(); ++j) {
        if (!(p[j] <= q[j] && q[j] <= r[j]))
            fail(ErrorCode::OrderViolation, "p <= q <= r fails at node " + std::to_string(j));
    }
    EmbeddingWitness w;
    for (std::size_t j = 0; j < f.size(); ++j) {
        const double a = std::abs(f[j]);
        const double lhs = std::pow(a, q[j]);
        const double rhs = std::pow(a, p[j]) + std::pow(a, r[j]);
        if (!(lhs <= rhs) && w.nodewise) {
            w.nodewise = false;
            w.firstFailingNode = j;
        }
    }
    w.modularP = modular(f, p);
    w.modularQ = modular(f, q);
    w.modularR = modular(f, r);
    const double bound = w.modularP.value() + w.modularR.value();
    w.integrated = std::isinf(bound) || w.modularQ <= ExtendedReal(bound);
    return w;
}

}  // namespace vex
