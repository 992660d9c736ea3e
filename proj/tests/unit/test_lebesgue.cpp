#include <cmath>
#include <random>

#include "doctest.h"
#include "lebesgue.hpp"
#include "oracles.hpp"

using namespace vex;

namespace {

ExponentField constP(const Grid& g, double p) { return ExponentField(oracle::constant(g, p)); }

std::vector<SampledField> corpus(std::mt19937_64& rng) {
    std::vector<SampledField> out;
    for (int k = 0; k < 50; ++k) out.push_back(oracle::randomSupported(oracle::line(-1, 1, 129), rng));
    for (int k = 0; k < 50; ++k) out.push_back(oracle::randomSupported(oracle::square(-1, 1, 33), rng));
    return out;
}

ExponentField smoothP(const Grid& g) {
    return ExponentField(oracle::sample(g, [&](const Point& x) {
        double s = 0.0;
        for (int d = 0; d < g.dim(); ++d) s += std::sin(2 * x[d]);
        return 2.5 + 0.4 * s / g.dim();
    }));
}

}  // namespace

TEST_CASE("modular examples") {
    const Grid g = oracle::line(0, 1, 1001);
    CHECK(modular(SampledField::zeros(g), constP(g, 2)).value() == 0.0);
    // Node sum: 4 * (k h).
    CHECK(modular(oracle::constant(g, 2), constP(g, 2)).value() == doctest::Approx(4.0 * 1001 * g.spacing(0)));

    double prev = INFINITY;
    for (std::size_t n : {1001, 10001, 100001}) {
        const Grid gn = oracle::line(0, 1, n);
        ExponentField p(oracle::sample(gn, [](const Point& x) { return 2.0 + x[0]; }));
        const double err = std::abs(modular(oracle::constant(gn, 2), p).value() - 4.0 / std::log(2.0));
        CHECK(err < prev);
        prev = err;
    }
    CHECK(prev < 1e-4);
}

TEST_CASE("modular overflows to infinity, never saturates") {
    const Grid g = oracle::line(0, 1, 11);
    const auto m = modular(oracle::constant(g, 1e200), constP(g, 3));
    CHECK(m.isInfinite());
    CHECK(std::isinf(m.value()));
    CHECK_THROWS_AS(modular(oracle::constant(g, 1), constP(oracle::line(0, 1, 12), 2)), Error);
}

TEST_CASE("luxemburg norm of zero is zero") {
    const Grid g = oracle::line(0, 1, 11);
    CHECK(luxemburgNorm(SampledField::zeros(g), constP(g, 3)).norm == 0.0);
}

TEST_CASE("constant exponent agrees with the classical discrete norm") {
    std::mt19937_64 rng(3);
    for (const auto& f : corpus(rng))
        for (double p : {2.0, 3.0, 5.0}) {
            const double lux = luxemburgNorm(f, constP(f.grid(), p)).norm;
            CHECK(std::abs(lux - oracle::discreteLp(f, p)) <= 1e-9 * oracle::discreteLp(f, p));
        }
}

TEST_CASE("two valued exponent converges to 2") {
    double prev = INFINITY;
    for (std::size_t n : {257, 1025, 4097}) {
        const Grid g = oracle::line(0, 1, n);
        ExponentField p(oracle::sample(g, [](const Point& x) { return x[0] < 0.5 ? 2.0 : 4.0; }));
        const double err = std::abs(luxemburgNorm(oracle::constant(g, 2), p).norm - 2.0);
        CHECK(err < prev);
        prev = err;
    }
    CHECK(prev <= 1e-3);
}

TEST_CASE("unit ball and homogeneity") {
    std::mt19937_64 rng(5);
    for (const auto& f : corpus(rng)) {
        const ExponentField p = smoothP(f.grid());
        const NormResult r = luxemburgNorm(f, p);
        CHECK(std::abs(scaledModular(f, p, r.norm).value() - 1.0) <= 1e-9);
        CHECK(std::abs(r.modularAtNorm - 1.0) <= 1e-10);
        for (double c : {0.1, 3.0, 100.0})
            CHECK(std::abs(luxemburgNorm(c * f, p).norm - c * r.norm) <= 1e-8 * c * r.norm);
    }
}

TEST_CASE("solver visits a monotone modular") {
    std::mt19937_64 rng(9);
    const auto f = oracle::randomSupported(oracle::square(-1, 1, 33), rng);
    const NormResult r = luxemburgNorm(f, smoothP(f.grid()));
    for (std::size_t a = 0; a < r.trace.size(); ++a)
        for (std::size_t b = 0; b < r.trace.size(); ++b)
            if (r.trace[a].first < r.trace[b].first) CHECK(r.trace[a].second >= r.trace[b].second);
    CHECK(r.bracket.first <= r.norm);
    CHECK(r.norm <= r.bracket.second);
}

TEST_CASE("triangle inequality on random pairs") {
    std::mt19937_64 rng(13);
    const Grid g = oracle::line(-1, 1, 129);
    const ExponentField p = smoothP(g);
    for (int k = 0; k < 100; ++k) {
        const auto f = oracle::randomSupported(g, rng);
        const auto h = oracle::randomSupported(g, rng);
        CHECK(luxemburgNorm(f + h, p).norm <= luxemburgNorm(f, p).norm + luxemburgNorm(h, p).norm + 1e-8);
    }
}

TEST_CASE("sobolev norm of the tent") {
    // Tent of height 1 on [1, 2]: int f^2 = 1/3, int f'^2 = 4.
    const double target = 1.0 / std::sqrt(3.0) + 2.0;
    double prev = INFINITY;
    for (std::size_t n : {301, 3001, 30001}) {
        const Grid g = oracle::line(0, 3, n);
        const auto f = oracle::sample(g, [](const Point& x) { return std::max(0.0, 1.0 - 2.0 * std::abs(x[0] - 1.5)); });
        const double err = std::abs(sobolevNorm(f, constP(g, 2)) - target);
        CHECK(err < prev);
        prev = err;
    }
    CHECK(prev < 2e-3);
    CHECK(sobolevNorm(SampledField::zeros(oracle::line(0, 3, 31)), constP(oracle::line(0, 3, 31), 2)) == 0.0);
}

TEST_CASE("sobolev norm is homogeneous") {
    std::mt19937_64 rng(17);
    const Grid g = oracle::square(-1, 1, 33);
    const ExponentField p = smoothP(g);
    for (int k = 0; k < 10; ++k) {
        const auto f = oracle::randomSupported(g, rng);
        CHECK(std::abs(sobolevNorm(3.0 * f, p) - 3.0 * sobolevNorm(f, p)) <= 1e-8 * 3.0 * sobolevNorm(f, p));
    }
}

TEST_CASE("intersection embedding examples") {
    const Grid g = oracle::line(0, 1, 11);
    const auto p = constP(g, 2), q = constP(g, 3), r = constP(g, 4);

    auto w = intersectionEmbeddingCheck(oracle::constant(g, 1), p, q, r);
    CHECK(w.nodewise);
    CHECK(w.integrated);

    w = intersectionEmbeddingCheck(oracle::constant(g, 2), p, q, r);
    CHECK(w.nodewise);
    CHECK(w.modularQ.value() == doctest::Approx(8.0 * 11 * 0.1));
    CHECK(w.modularP.value() + w.modularR.value() == doctest::Approx(20.0 * 11 * 0.1));

    w = intersectionEmbeddingCheck(oracle::constant(g, 0.5), p, q, r);
    CHECK(w.nodewise);
    CHECK(w.modularQ.value() == doctest::Approx(0.125 * 1.1));

    try {
        intersectionEmbeddingCheck(oracle::constant(g, 2), q, p, r);
        FAIL("expected OrderViolation");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::OrderViolation);
    }
}

TEST_CASE("intersection embedding holds nodewise on random data") {
    std::mt19937_64 rng(19);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const Grid g = oracle::line(0, 1, 257);
    for (int k = 0; k < 20; ++k) {
        const auto f = oracle::sample(g, [&](const Point&) { return 3.0 * (u(rng) - 0.5); });
        std::vector<double> pv, qv, rv;
        for (std::size_t i = 0; i < g.size(); ++i) {
            const double a = 1.1 + 3 * u(rng), b = a + 2 * u(rng), c = b + 2 * u(rng);
            pv.push_back(a), qv.push_back(b), rv.push_back(c);
        }
        const auto w = intersectionEmbeddingCheck(f, ExponentField(SampledField(g, pv)),
                                                  ExponentField(SampledField(g, qv)), ExponentField(SampledField(g, rv)));
        CHECK(w.nodewise);
        CHECK(w.integrated);
    }
}
