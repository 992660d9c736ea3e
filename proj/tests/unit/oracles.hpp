#pragma once

// Reference computations written independently of the library code paths.

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include "grid.hpp"

namespace oracle {

inline vex::Grid line(double lo, double hi, std::size_t nodes) {
    const double l[] = {lo}, h[] = {hi};
    const std::size_t n[] = {nodes};
    return vex::Grid::box(1, l, h, n);
}

inline vex::Grid square(double lo, double hi, std::size_t nodes) {
    const double l[] = {lo, lo}, h[] = {hi, hi};
    const std::size_t n[] = {nodes, nodes};
    return vex::Grid::box(2, l, h, n);
}

inline vex::Grid cube(double lo, double hi, std::size_t nodes) {
    const double l[] = {lo, lo, lo}, h[] = {hi, hi, hi};
    const std::size_t n[] = {nodes, nodes, nodes};
    return vex::Grid::box(3, l, h, n);
}

inline vex::SampledField sample(const vex::Grid& g, const std::function<double(const vex::Point&)>& fn) {
    std::vector<double> v(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) v[i] = fn(g.node(i));
    return vex::SampledField(g, std::move(v));
}

inline vex::SampledField constant(const vex::Grid& g, double c) {
    return sample(g, [c](const vex::Point&) { return c; });
}

inline double bump(double t) { return std::abs(t) < 1.0 ? std::exp(-1.0 / (1.0 - t * t)) : 0.0; }

// phi(x) - 2 phi(2x): integrates to zero, so the dropped Fourier zero mode costs nothing.
inline double meanFreeBump(double t) { return bump(t) - 2.0 * bump(2.0 * t); }

// Random field supported in the central part of the box.
inline vex::SampledField randomSupported(const vex::Grid& g, std::mt19937_64& rng, double keep = 0.6) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    return sample(g, [&](const vex::Point& x) {
        for (int d = 0; d < g.dim(); ++d) {
            const double mid = 0.5 * (g.origin(d) + g.upper(d));
            const double half = 0.5 * keep * (g.upper(d) - g.origin(d));
            if (std::abs(x[d] - mid) > half) return 0.0;
        }
        return u(rng);
    });
}

inline double discreteLp(const vex::SampledField& f, double p) {
    double s = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) s += std::pow(std::abs(f[i]), p);
    return std::pow(s * f.grid().cellVolume(), 1.0 / p);
}

inline double relL2(const vex::SampledField& a, const vex::SampledField& b) {
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        num += (a[i] - b[i]) * (a[i] - b[i]);
        den += b[i] * b[i];
    }
    return den == 0.0 ? std::sqrt(num) : std::sqrt(num / den);
}

// (1/h) int_{-h/2}^{h/2} |z|^beta dz.
inline double cellAverage1D(double beta, double h) { return std::pow(h / 2.0, beta) / (beta + 1.0); }

// Exhaustive maximal function over node intervals [a, b] containing each node.
inline std::vector<double> bruteMaximal1D(const std::vector<double>& f) {
    const std::size_t n = f.size();
    std::vector<double> out(n, 0.0);
    for (std::size_t a = 0; a < n; ++a) {
        double sum = 0.0;
        for (std::size_t b = a; b < n; ++b) {
            sum += std::abs(f[b]);
            const double avg = sum / double(b - a + 1);
            for (std::size_t x = a; x <= b; ++x) out[x] = std::max(out[x], avg);
        }
    }
    return out;
}

// Naive 1D Riesz sum with the closed-form singular cell value.
inline std::vector<double> naiveRiesz1D(const vex::SampledField& f, double alpha) {
    const vex::Grid& g = f.grid();
    const double h = g.spacing(0);
    const double gamma =
        std::pow(M_PI, 0.5) * std::pow(2.0, alpha) * std::tgamma(alpha / 2.0) / std::tgamma((1.0 - alpha) / 2.0);
    const double center = cellAverage1D(alpha - 1.0, h);
    std::vector<double> out(f.size(), 0.0);
    for (std::size_t x = 0; x < f.size(); ++x) {
        double s = 0.0;
        for (std::size_t y = 0; y < f.size(); ++y) {
            const double k = x == y ? center : std::pow(std::abs(double(x) - double(y)) * h, alpha - 1.0);
            s += f[y] * k;
        }
        out[x] = s * h / gamma;
    }
    return out;
}

}  // namespace oracle
