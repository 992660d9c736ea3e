#include "maximal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "lebesgue.hpp"
#include "parallel.hpp"

namespace vex {

namespace {

using Shape = std::array<std::size_t, kMaxDim>;

// Rewrites every line along `axis` through op(in, inStride, out, outStride).
template <class LineOp>
std::vector<double> mapAxis(const std::vector<double>& in, Shape& shape, int dim, int axis, std::size_t newLen,
                            LineOp op) {
    std::size_t outer = 1, inner = 1;
    for (int d = 0; d < axis; ++d) outer *= shape[d];
    for (int d = axis + 1; d < dim; ++d) inner *= shape[d];
    const std::size_t oldLen = shape[axis];
    std::vector<double> out(outer * newLen * inner);
    parallelFor(outer * inner, [&](std::size_t line) {
        const std::size_t o = line / inner, i = line % inner;
        op(&in[o * oldLen * inner + i], inner, &out[o * newLen * inner + i], inner);
    });
    shape[axis] = newLen;
    return out;
}

std::vector<std::size_t> cornerPositions(std::size_t n, std::size_t side, bool exhaustive) {
    std::vector<std::size_t> pos;
    const std::size_t last = n - side;
    const std::size_t step = exhaustive ? 1 : std::max<std::size_t>(1, (side - 1) / 2);
    for (std::size_t p = 0; p <= last; p += step) pos.push_back(p);
    if (pos.back() != last) pos.push_back(last);
    return pos;
}

}  // namespace

SampledField maximalFunction(const SampledField& f) {
    const Grid& g = f.grid();
    const int n = g.dim();
    std::size_t minLen = g.shape(0), maxLen = g.shape(0);
    for (int d = 1; d < n; ++d) {
        minLen = std::min(minLen, g.shape(d));
        maxLen = std::max(maxLen, g.shape(d));
    }
    const bool exhaustive = maxLen <= kExhaustiveCubeLimit;

    std::vector<double> absf(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) absf[i] = std::abs(f[i]);
    std::vector<double> best = absf;  // side 1: each node alone

    std::vector<std::size_t> sides;
    if (exhaustive)
        for (std::size_t s = 2; s <= minLen; ++s) sides.push_back(s);
    else
        for (std::size_t span = 1; span + 1 <= minLen; span *= 2) sides.push_back(span + 1);

    for (std::size_t side : sides) {
        std::array<std::vector<std::size_t>, kMaxDim> pos;
        for (int d = 0; d < n; ++d) pos[d] = cornerPositions(g.shape(d), side, exhaustive);

        Shape shape{};
        for (int d = 0; d < n; ++d) shape[d] = g.shape(d);
        std::vector<double> sums = absf;
        for (int d = 0; d < n; ++d) {
            const auto& P = pos[d];
            sums = mapAxis(sums, shape, n, d, P.size(),
                           [&](const double* in, std::size_t is, double* out, std::size_t os) {
                               for (std::size_t q = 0; q < P.size(); ++q) {
                                   double acc = 0.0;
                                   for (std::size_t k = P[q]; k < P[q] + side; ++k) acc += in[k * is];
                                   out[q * os] = acc;
                               }
                           });
        }
        const double volume = std::pow(double(side), n);
        for (double& v : sums) v /= volume;

        // Back to nodes: max over the corners whose cube covers the node.
        std::vector<double> cover = std::move(sums);
        for (int d = 0; d < n; ++d) {
            const auto& P = pos[d];
            const std::size_t len = g.shape(d);
            cover = mapAxis(cover, shape, n, d, len, [&](const double* in, std::size_t is, double* out, std::size_t os) {
                std::size_t first = 0;
                for (std::size_t x = 0; x < len; ++x) {
                    while (P[first] + side <= x) ++first;
                    double m = -std::numeric_limits<double>::infinity();
                    for (std::size_t q = first; q < P.size() && P[q] <= x; ++q) m = std::max(m, in[q * is]);
                    out[x * os] = m;
                }
            });
        }
        for (std::size_t i = 0; i < best.size(); ++i) best[i] = std::max(best[i], cover[i]);
    }
    return SampledField(g, std::move(best));
}

ProbeResult localBoundednessProbe(const ExponentField& p, const std::vector<NamedField>& corpus) {
    if (corpus.empty()) fail(ErrorCode::EmptyCorpus, "probe corpus is empty");
    ProbeResult result;
    for (const auto& item : corpus) {
        requireSameGrid(item.field.grid(), p.grid(), "localBoundednessProbe");
        const double nf = luxemburgNorm(item.field, p).norm;
        if (nf == 0.0) continue;
        const double nm = luxemburgNorm(maximalFunction(item.field), p).norm;
        result.rows.push_back({item.id, nf, nm, nm / nf});
        result.supRatio = std::max(result.supRatio, nm / nf);
    }
    if (result.rows.empty()) fail(ErrorCode::EmptyCorpus, "every corpus field is identically zero");
    return result;
}

namespace {

double bump1(double t) { return std::abs(t) < 1.0 ? std::exp(-1.0 / (1.0 - t * t)) : 0.0; }

}  // namespace

std::vector<NamedField> standardCorpus(const Grid& grid, std::uint64_t seed) {
    const int n = grid.dim();
    std::array<double, kMaxDim> lo{}, hi{}, mid{}, len{};
    for (int d = 0; d < n; ++d) {
        len[d] = grid.upper(d) - grid.origin(d);
        lo[d] = grid.origin(d) + 0.15 * len[d];
        hi[d] = grid.upper(d) - 0.15 * len[d];
        mid[d] = 0.5 * (grid.origin(d) + grid.upper(d));
    }
    std::vector<NamedField> out;
    auto make = [&](const std::string& id, auto&& fn) {
        std::vector<double> v(grid.size());
        for (std::size_t i = 0; i < grid.size(); ++i) v[i] = fn(grid.node(i));
        out.push_back({id, SampledField(grid, std::move(v))});
    };
    for (double frac : {0.05, 0.1, 0.2, 0.3}) {
        make("box_" + formatDouble(frac), [&](const Point& x) {
            for (int d = 0; d < n; ++d)
                if (std::abs(x[d] - mid[d]) > frac * len[d]) return 0.0;
            return 1.0;
        });
    }
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    int k = 0;
    for (double frac : {0.05, 0.1, 0.2, 0.3}) {
        Point c{};
        for (int d = 0; d < n; ++d) {
            const double r = frac * len[d];
            c[d] = lo[d] + r + unit(rng) * std::max(0.0, (hi[d] - lo[d]) - 2.0 * r);
        }
        make("bump_" + std::to_string(k++), [&](const Point& x) {
            double v = 1.0;
            for (int d = 0; d < n; ++d) v *= bump1((x[d] - c[d]) / (frac * len[d])) / bump1(0.0);
            return v;
        });
    }
    return out;
}

std::vector<NamedField> shrinkingIndicators(const Grid& grid, double jump, double maxWidth) {
    const int n = grid.dim();
    std::vector<NamedField> out;
    for (double w = grid.spacing(0); w <= maxWidth * (1.0 + 1e-12); w *= 2.0) {
        std::vector<double> v(grid.size());
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const Point x = grid.node(i);
            bool inside = x[0] >= jump - w * (1.0 + 1e-12) && x[0] < jump;
            for (int d = 1; d < n && inside; ++d) {
                const double mid = 0.5 * (grid.origin(d) + grid.upper(d));
                inside = std::abs(x[d] - mid) <= 0.25 * (grid.upper(d) - grid.origin(d));
            }
            v[i] = inside ? 1.0 : 0.0;
        }
        out.push_back({"indicator_w" + formatDouble(w), SampledField(grid, std::move(v))});
    }
    return out;
}

LogHolderEstimate logHolderEstimate(const ExponentField& p, std::uint64_t seed) {
    const Grid& g = p.grid();
    const int n = g.dim();

    struct Stratum {
        std::array<long, kMaxDim> offset{};
        double distance = 0.0;
        std::size_t bases = 0;
    };
    std::vector<Stratum> strata;
    std::array<long, kMaxDim> reach{};
    for (int d = 0; d < n; ++d)
        reach[d] = std::min<long>(long(g.shape(d)) - 1, long(std::floor(0.5 / g.spacing(d))));
    // Offsets with the first nonzero component positive: each unordered pair once.
    std::array<long, kMaxDim> off{};
    auto visit = [&](auto&& self, int d) -> void {
        if (d == n) {
            int firstNonzero = -1;
            for (int e = 0; e < n; ++e)
                if (off[e] != 0) {
                    firstNonzero = e;
                    break;
                }
            if (firstNonzero < 0 || off[firstNonzero] < 0) return;
            double r2 = 0.0;
            std::size_t bases = 1;
            for (int e = 0; e < n; ++e) {
                const double z = double(off[e]) * g.spacing(e);
                r2 += z * z;
                bases *= g.shape(e) - std::size_t(std::labs(off[e]));
            }
            const double dist = std::sqrt(r2);
            if (dist < 0.5) strata.push_back({off, dist, bases});
            return;
        }
        for (long k = -reach[d]; k <= reach[d]; ++k) {
            off[d] = k;
            self(self, d + 1);
        }
    };
    visit(visit, 0);
    if (strata.empty()) fail(ErrorCode::NoValidPairs, "no node pair lies closer than 1/2");

    std::size_t totalPairs = 0;
    for (const auto& s : strata) totalPairs += s.bases;

    LogHolderEstimate est;
    est.exhaustive = true;
    std::mt19937_64 rng(seed);
    if (totalPairs > kExhaustivePairLimit && strata.size() > kMaxStrata) {
        std::vector<Stratum> near, far;
        for (const auto& s : strata) {
            bool isNear = true;
            for (int d = 0; d < n; ++d) isNear = isNear && std::labs(s.offset[d]) <= 2;
            (isNear ? near : far).push_back(s);
        }
        std::stable_sort(far.begin(), far.end(),
                         [](const Stratum& a, const Stratum& b) { return a.distance < b.distance; });
        const std::size_t bins = kMaxStrata > near.size() ? kMaxStrata - near.size() : 0;
        strata = near;
        for (std::size_t b = 0; b < bins && !far.empty(); ++b) {
            const std::size_t begin = b * far.size() / bins;
            const std::size_t end = (b + 1) * far.size() / bins;
            if (begin >= end) continue;
            std::uniform_int_distribution<std::size_t> pick(begin, end - 1);
            strata.push_back(far[pick(rng)]);
        }
        est.exhaustive = false;
    }

    const auto pv = p.base().values();
    for (std::size_t si = 0; si < strata.size(); ++si) {
        const Stratum& s = strata[si];
        const double logFactor = -std::log(s.distance);
        // Base node ranges: start at max(0, -offset) so both ends stay inside.
        std::array<std::size_t, kMaxDim> start{}, count{};
        long shift = 0;
        for (int d = 0; d < n; ++d) {
            start[d] = s.offset[d] < 0 ? std::size_t(-s.offset[d]) : 0;
            count[d] = g.shape(d) - std::size_t(std::labs(s.offset[d]));
            shift += s.offset[d] * long(g.stride(d));
        }
        auto baseNode = [&](std::size_t k) {
            Index idx{};
            for (int d = n - 1; d >= 0; --d) {
                idx[d] = start[d] + k % count[d];
                k /= count[d];
            }
            return g.flat(idx);
        };
        auto consider = [&](std::size_t x) {
            const std::size_t y = std::size_t(long(x) + shift);
            const double v = std::abs(pv[x] - pv[y]) * logFactor;
            ++est.pairCount;
            if (v > est.c0Hat) {
                est.c0Hat = v;
                est.worstPair = {x, y};
            }
        };
        if (s.bases <= kStratumSampleLimit || totalPairs <= kExhaustivePairLimit) {
            for (std::size_t k = 0; k < s.bases; ++k) consider(baseNode(k));
        } else {
            std::mt19937_64 local(seed ^ (0x9E3779B97F4A7C15ull * (si + 1)));
            std::uniform_int_distribution<std::size_t> pick(0, s.bases - 1);
            for (std::size_t k = 0; k < kStratumSampleLimit; ++k) consider(baseNode(pick(local)));
            est.exhaustive = false;
        }
    }
    return est;
}

}  // namespace vex
