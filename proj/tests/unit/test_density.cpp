#include <cmath>
#include <random>

#include "density.hpp"
#include "doctest.h"
#include "lebesgue.hpp"
#include "oracles.hpp"
#include "special.hpp"

using namespace vex;

namespace {

SampledField radialBump(const Grid& g, double radius) {
    return oracle::sample(g, [&](const Point& x) {
        double r2 = 0.0;
        for (int d = 0; d < g.dim(); ++d) r2 += x[d] * x[d];
        return oracle::bump(std::sqrt(r2) / radius);
    });
}

SampledField tentProduct(const Grid& g) {
    return oracle::sample(g, [](const Point& x) {
        return std::max(0.0, 1.0 - std::abs(x[0]) / 2.0) * std::max(0.0, 1.0 - std::abs(x[1]) / 2.0);
    });
}

}  // namespace

TEST_CASE("psi examples and shape") {
    CHECK(psi(0.5) == 0.0);
    CHECK(psi(1.0) == 0.0);
    CHECK(psi(1.5) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(psi(2.0) == 1.0);
    CHECK(psi(2.5) == 1.0);
    double prev = 0.0;
    for (double x = 1.001; x < 2.0; x += 0.001) {
        const double v = psi(x);
        // Within about 0.03 of either end the small exponential drops below one ulp of the other.
        if (x > 1.05 && x < 1.95) {
            CHECK(v > 0.0);
            CHECK(v < 1.0);
        }
        CHECK(v >= 0.0);
        CHECK(v <= 1.0);
        CHECK(v >= prev);
        // Symmetry psi(x) + psi(3 - x) = 1.
        CHECK(v + psi(3.0 - x) == doctest::Approx(1.0).epsilon(1e-14));
        prev = v;
    }
}

TEST_CASE("cutoff examples") {
    const Point one{1, 0, 0}, inner{0.4, 0, 0}, mid{0.75, 0, 0};
    CHECK(cutoffG(one, 3, 2) == 1.0);
    CHECK(cutoffG(inner, 3, 2) == 0.0);
    CHECK(cutoffG(mid, 3, 2) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK_THROWS_AS(cutoffG(one, 3, 1.0), Error);
}

TEST_CASE("cutoff region values are exact") {
    std::mt19937_64 rng(43);
    for (double lambda : {2.0, 4.0, 8.0, 16.0}) {
        std::uniform_real_distribution<double> inner(0.0, 1.0 / lambda), plateau(2.0 / lambda, lambda),
            outer(2.0 * lambda, 10.0 * lambda);
        for (int k = 0; k < 10000; ++k) {
            CHECK(cutoffRadial(inner(rng), lambda) == 0.0);
            CHECK(cutoffRadial(plateau(rng), lambda) == 1.0);
            CHECK(cutoffRadial(outer(rng), lambda) == 0.0);
        }
    }
}

TEST_CASE("cutoff derivative bound is uniform in lambda") {
    std::vector<double> c1;
    for (double lambda : {2.0, 4.0, 8.0, 16.0}) {
        const auto w = derivativeBoundCheck(lambda);
        CHECK(w.plateauMaxGradient == 0.0);
        CHECK(std::isfinite(w.c1));
        c1.push_back(w.c1);
    }
    // u psi'(u) peaks near u = 1.5 where psi' = 2: the witness sits just above 3.
    CHECK(c1[0] == doctest::Approx(3.0734).epsilon(1e-3));
    for (double c : c1) CHECK(c / c1[0] <= 1.1);
    CHECK_THROWS_AS(derivativeBoundCheck(2.0, 999), Error);
    CHECK_THROWS_AS(derivativeBoundCheck(1.0), Error);
}

TEST_CASE("representation kernel is zero at the origin and odd") {
    const Grid g = oracle::square(-1, 1, 9);
    const auto k = representationKernel(g, 0);
    CHECK(k.at({0, 0, 0}) == 0.0);
    CHECK(k.at({2, 1, 0}) == doctest::Approx(-k.at({-2, 1, 0})));
}

TEST_CASE("integral representation reconstructs a smooth bump") {
    double prev = INFINITY;
    for (std::size_t n : {64, 128, 256}) {
        const Grid g = oracle::square(-4, 4, n);
        const auto f = radialBump(g, 2.0);
        const double err = oracle::relL2(integralRepresentation(gradient(f)), f);
        CHECK(err < prev);
        prev = err;
    }
    CHECK(prev <= 0.02);

    const Grid g3 = oracle::cube(-4, 4, 48);
    const auto f3 = radialBump(g3, 2.5);
    CHECK(oracle::relL2(integralRepresentation(gradient(f3)), f3) <= 0.05);
}

TEST_CASE("integral representation is linear and zero on zero") {
    const Grid g = oracle::square(-4, 4, 64);
    const auto f = radialBump(g, 2.0), h = tentProduct(g);
    const auto gf = gradient(f), gh = gradient(h);
    std::vector<SampledField> mix;
    for (int i = 0; i < 2; ++i) mix.push_back(2.0 * gf[i] + -0.5 * gh[i]);
    const auto lhs = integralRepresentation(mix);
    const auto rhs = 2.0 * integralRepresentation(gf) + -0.5 * integralRepresentation(gh);
    CHECK(oracle::relL2(lhs, rhs) <= 1e-12);
    CHECK(integralRepresentation(gradient(SampledField::zeros(g))).maxAbs() == 0.0);
}

TEST_CASE("omega kernel is compactly supported away from the origin") {
    const Grid g = oracle::square(-4, 4, 65);
    const double lambda = 2.0;
    const auto k = omegaKernel(g, lambda, 0);
    const double h = g.spacing(0);
    for (long a = -64; a <= 64; ++a)
        for (long b = -64; b <= 64; ++b) {
            const double r = std::hypot(a * h, b * h);
            if (r <= 1.0 / lambda || r >= 2.0 * lambda) CHECK(k.at({a, b, 0}) == 0.0);
        }
}

TEST_CASE("omega lambda: direct and transform paths agree") {
    const Grid g = oracle::square(-4, 4, 48);
    const auto grads = gradient(tentProduct(g));
    for (double lambda : {2.0, 4.0}) {
        const auto fast = omegaLambda(grads, lambda, 0);
        const auto slow = convolveDirect(grads[0], omegaKernel(g, lambda, 0));
        CHECK(oracle::relL2(fast, slow) <= 1e-10);
    }
    CHECK(omegaLambda(gradient(SampledField::zeros(g)), 2.0, 1).maxAbs() == 0.0);
}

TEST_CASE("omega lambda converges to the representation term") {
    const Grid g = oracle::square(-4, 4, 128);
    const auto f = tentProduct(g);
    const auto grads = gradient(f);
    const ExponentField p(oracle::sample(g, [](const Point& x) { return 2.5 + 0.4 * std::sin(x[0]); }));
    for (int i = 0; i < 2; ++i) {
        const auto target = representationTerm(grads, i);
        double prev = INFINITY;
        for (double lambda : {2.0, 4.0, 8.0}) {
            const double err = luxemburgNorm(omegaLambda(grads, lambda, i) - target, p).norm;
            CHECK(err < prev);
            prev = err;
        }
    }
}

TEST_CASE("omega domination and derivative chain hold nodewise") {
    const Grid g = oracle::square(-4, 4, 96);
    const auto grads = gradient(tentProduct(g));
    for (double lambda : {2.0, 4.0, 8.0})
        for (int i = 0; i < 2; ++i) CHECK(omegaDomination(grads, lambda, i).holds);
    for (int i = 0; i < 2; ++i) CHECK(derivativeChain(grads, 4.0, i).holds);
    CHECK_THROWS_AS(omegaDomination(gradient(SampledField::zeros(oracle::line(-4, 4, 64))), 2.0, 0), Error);
}

TEST_CASE("approximation by smooth functions") {
    const Grid g = oracle::square(-4, 4, 128);
    const auto f = tentProduct(g);
    const ExponentField p(oracle::sample(g, [](const Point& x) { return 2.5 + 0.4 * std::sin(x[0]); }));
    const auto rep = approximateBySmooth(f, p, {2, 4, 8});
    REQUIRE(rep.rows.size() == 3);
    CHECK(rep.verdict);
    for (const auto& r : rep.rows) {
        double sum = r.lpError;
        for (double e : r.gradErrors) sum += e;
        CHECK(r.sobolevError == doctest::Approx(sum).epsilon(1e-14));
    }
    CHECK(rep.lambdaSchedule() == std::vector<double>{2, 4, 8});

    const auto zero = approximateBySmooth(SampledField::zeros(g), p, {2, 4, 8});
    CHECK(zero.verdict);
    for (const auto& r : zero.rows) CHECK(r.sobolevError == 0.0);

    auto code = [&](auto&& fn) {
        try {
            fn();
        } catch (const Error& e) {
            return e.code();
        }
        return ErrorCode::InvalidArgument;
    };
    CHECK(code([&] { approximateBySmooth(f, ExponentField(oracle::constant(g, 1.5)), {2}); }) ==
          ErrorCode::HypothesisViolation);
    CHECK(code([&] { approximateBySmooth(f, p, {4, 2}); }) == ErrorCode::DomainError);
    CHECK(code([&] { approximateBySmooth(f, p, {1.0}); }) == ErrorCode::DomainError);
    CHECK(code([&] { approximateBySmooth(oracle::constant(g, 1.0), p, {2}); }) == ErrorCode::SupportViolation);
    CHECK(approximateBySmooth(f, p, {}).rows.empty());
}

TEST_CASE("density condition examples and boundary truth table") {
    using V = DensityVerdict;
    CHECK(densityCondition(2, 6, 3).verdict == V::DenseByRange);
    CHECK(densityCondition(2, 6.5, 3).verdict == V::Undecided);
    CHECK(densityCondition(2, 100, 2).verdict == V::DenseByDimension);

    // p_minus = n and just below.
    CHECK(densityCondition(3, 50, 3).verdict == V::DenseByDimension);
    // Just below n the critical exponent is enormous, so the range condition takes over.
    CHECK(densityCondition(std::nextafter(3.0, 0.0), 50, 3).verdict == V::DenseByRange);
    CHECK(densityCondition(2.9, 100, 3).verdict == V::Undecided);
    // p_plus at the critical exponent and just above (n = 3, p_minus = 2.5 gives 15).
    CHECK(densityCondition(2.5, 15, 3).verdict == V::DenseByRange);
    CHECK(densityCondition(2.5, std::nextafter(15.0, 100.0), 3).verdict == V::Undecided);
    // p_minus = 2 and just below.
    CHECK(densityCondition(2, 5, 3).verdict == V::DenseByRange);
    CHECK(densityCondition(std::nextafter(2.0, 0.0), 5, 3).verdict == V::Undecided);

    CHECK(densityCondition(2, 50, 3, {true, false}).verdict == V::DenseByMaximal);
    CHECK(densityCondition(2, 50, 3, {false, true}).verdict == V::DenseByLogHolder);
    CHECK(densityCondition(2, 50, 3, {true, true}).verdict == V::DenseByMaximal);
    CHECK(densityCondition(1.5, 50, 3, {true, true}).verdict == V::Undecided);

    CHECK_THROWS_AS(densityCondition(3, 2, 3), Error);
    CHECK_THROWS_AS(densityCondition(1, 2, 3), Error);
    CHECK_THROWS_AS(densityCondition(2, INFINITY, 3), Error);
    CHECK(std::string(densityVerdictName(V::DenseByRange)) == "DENSE_BY_RANGE");
}
