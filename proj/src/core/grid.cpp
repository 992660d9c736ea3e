#include "grid.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace vex {

const char* errorCodeName(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::GridTooSmall: return "GridTooSmall";
        case ErrorCode::GridMismatch: return "GridMismatch";
        case ErrorCode::OutOfDomain: return "OutOfDomain";
        case ErrorCode::SolverFailure: return "SolverFailure";
        case ErrorCode::OrderViolation: return "OrderViolation";
        case ErrorCode::DomainError: return "DomainError";
        case ErrorCode::SupportViolation: return "SupportViolation";
        case ErrorCode::HypothesisViolation: return "HypothesisViolation";
        case ErrorCode::EmptyCorpus: return "EmptyCorpus";
        case ErrorCode::NoValidPairs: return "NoValidPairs";
        case ErrorCode::SyntaxError: return "SyntaxError";
        case ErrorCode::UnknownIdentifier: return "UnknownIdentifier";
        case ErrorCode::DimensionError: return "DimensionError";
        case ErrorCode::EvalError: return "EvalError";
        case ErrorCode::FormatError: return "FormatError";
        case ErrorCode::IoError: return "IoError";
    }
    return "Error";
}

Grid::Grid(int dim, std::span<const double> origin, std::span<const double> spacing,
           std::span<const std::size_t> shape)
    : dim_(dim) {
    if (dim < 1 || dim > kMaxDim) fail(ErrorCode::InvalidArgument, "grid dimension must be 1, 2 or 3");
    if (origin.size() != std::size_t(dim) || spacing.size() != std::size_t(dim) ||
        shape.size() != std::size_t(dim))
        fail(ErrorCode::InvalidArgument, "grid origin/spacing/shape must have dim entries");
    size_ = 1;
    cellVolume_ = 1.0;
    for (int d = 0; d < dim; ++d) {
        if (!std::isfinite(origin[d])) fail(ErrorCode::InvalidArgument, "grid origin must be finite");
        if (!(spacing[d] > 0.0) || !std::isfinite(spacing[d]))
            fail(ErrorCode::InvalidArgument, "grid spacing must be positive");
        if (shape[d] < 2) fail(ErrorCode::InvalidArgument, "grid needs at least 2 nodes per axis");
        origin_[d] = origin[d];
        spacing_[d] = spacing[d];
        shape_[d] = shape[d];
        size_ *= shape[d];
        cellVolume_ *= spacing[d];
    }
    for (int d = dim_; d < kMaxDim; ++d) shape_[d] = 1;
    std::size_t s = 1;
    for (int d = dim_ - 1; d >= 0; --d) {
        stride_[d] = s;
        s *= shape_[d];
    }
}

Grid Grid::box(int dim, std::span<const double> lo, std::span<const double> hi,
               std::span<const std::size_t> nodes) {
    if (lo.size() != std::size_t(dim) || hi.size() != std::size_t(dim) || nodes.size() != std::size_t(dim))
        fail(ErrorCode::InvalidArgument, "box bounds and node counts must have dim entries");
    std::array<double, kMaxDim> h{};
    for (int d = 0; d < dim; ++d) {
        if (!(hi[d] > lo[d])) fail(ErrorCode::InvalidArgument, "box upper bound must exceed lower bound");
        if (nodes[d] < 2) fail(ErrorCode::InvalidArgument, "grid needs at least 2 nodes per axis");
        h[d] = (hi[d] - lo[d]) / double(nodes[d] - 1);
    }
    return Grid(dim, lo, std::span<const double>(h.data(), std::size_t(dim)), nodes);
}

std::size_t Grid::flat(const Index& idx) const {
    std::size_t f = 0;
    for (int d = 0; d < dim_; ++d) f += idx[d] * stride_[d];
    return f;
}

Index Grid::unflatten(std::size_t flat) const {
    Index idx{};
    for (int d = 0; d < dim_; ++d) {
        idx[d] = flat / stride_[d];
        flat %= stride_[d];
    }
    return idx;
}

Point Grid::node(std::size_t flat) const {
    const Index idx = unflatten(flat);
    Point x{};
    for (int d = 0; d < dim_; ++d) x[d] = coord(d, idx[d]);
    return x;
}

SampledField::SampledField(Grid grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
    if (values_.size() != grid_.size())
        fail(ErrorCode::InvalidArgument, "field has " + std::to_string(values_.size()) +
                                             " values but the grid has " + std::to_string(grid_.size()) +
                                             " nodes");
    for (std::size_t i = 0; i < values_.size(); ++i)
        if (!std::isfinite(values_[i]))
            fail(ErrorCode::InvalidArgument, "non-finite field value at node " + std::to_string(i));
}

SampledField SampledField::zeros(const Grid& grid) {
    return SampledField(grid, std::vector<double>(grid.size(), 0.0));
}

double SampledField::maxAbs() const {
    double m = 0.0;
    for (double v : values_) m = std::max(m, std::abs(v));
    return m;
}

ExponentField::ExponentField(SampledField base) : base_(std::move(base)) {
    const auto v = base_.values();
    const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
    pMinus_ = *lo;
    pPlus_ = *hi;
    if (!(pMinus_ > 1.0))
        fail(ErrorCode::DomainError, "exponent minimum must exceed 1 (got " + formatDouble(pMinus_) + ")");
}

void requireSameGrid(const Grid& a, const Grid& b, const char* what) {
    if (!(a == b)) fail(ErrorCode::GridMismatch, std::string(what) + ": fields live on different grids");
}

double pairwiseSum(std::span<const double> values) {
    if (values.size() <= 8) {
        double s = 0.0;
        for (double v : values) s += v;
        return s;
    }
    const std::size_t half = values.size() / 2;
    return pairwiseSum(values.first(half)) + pairwiseSum(values.subspan(half));
}

double integrate(const SampledField& f) {
    return pairwiseSum(f.values()) * f.grid().cellVolume();
}

std::vector<SampledField> gradient(const SampledField& f) {
    const Grid& g = f.grid();
    for (int d = 0; d < g.dim(); ++d)
        if (g.shape(d) < 3)
            fail(ErrorCode::GridTooSmall, "gradient needs at least 3 nodes along axis " + std::to_string(d + 1));
    const auto v = f.values();
    std::vector<SampledField> out;
    out.reserve(std::size_t(g.dim()));
    for (int d = 0; d < g.dim(); ++d) {
        std::vector<double> df(g.size());
        const std::size_t n = g.shape(d);
        const std::size_t s = g.stride(d);
        const double inv2h = 1.0 / (2.0 * g.spacing(d));
        for (std::size_t i = 0; i < g.size(); ++i) {
            const std::size_t k = (i / s) % n;
            if (k == 0)
                df[i] = (4.0 * (v[i + s] - v[i]) - (v[i + 2 * s] - v[i])) * inv2h;
            else if (k == n - 1)
                df[i] = (4.0 * (v[i] - v[i - s]) - (v[i] - v[i - 2 * s])) * inv2h;
            else
                df[i] = (v[i + s] - v[i - s]) * inv2h;
        }
        out.emplace_back(g, std::move(df));
    }
    return out;
}

SampledField resample(const SampledField& f, const Grid& target) {
    const Grid& src = f.grid();
    if (src.dim() != target.dim()) fail(ErrorCode::OutOfDomain, "resample target has a different dimension");
    const int n = src.dim();
    for (int d = 0; d < n; ++d) {
        const double slack = 1e-12 * (src.upper(d) - src.origin(d));
        if (target.origin(d) < src.origin(d) - slack || target.upper(d) > src.upper(d) + slack)
            fail(ErrorCode::OutOfDomain, "resample target box exceeds the source box along axis " +
                                             std::to_string(d + 1));
    }
    const auto v = f.values();
    std::vector<double> out(target.size());
    for (std::size_t t = 0; t < target.size(); ++t) {
        const Point x = target.node(t);
        Index base{};
        std::array<double, kMaxDim> frac{};
        for (int d = 0; d < n; ++d) {
            double u = (x[d] - src.origin(d)) / src.spacing(d);
            // Snap coordinates that only miss a source node through rounding.
            if (std::abs(u - std::round(u)) <= 1e-9) u = std::round(u);
            const double maxBase = double(src.shape(d) - 2);
            const double k = std::clamp(std::floor(u), 0.0, maxBase);
            base[d] = std::size_t(k);
            frac[d] = std::clamp(u - k, 0.0, 1.0);
        }
        double acc = 0.0;
        for (unsigned corner = 0; corner < (1u << n); ++corner) {
            double w = 1.0;
            Index idx = base;
            for (int d = 0; d < n; ++d) {
                if (corner & (1u << d)) {
                    w *= frac[d];
                    idx[d] += 1;
                } else {
                    w *= 1.0 - frac[d];
                }
            }
            if (w != 0.0) acc += w * v[src.flat(idx)];
        }
        out[t] = acc;
    }
    return SampledField(target, std::move(out));
}

void requireCompactSupport(const SampledField& f, const char* what, double fraction) {
    const Grid& g = f.grid();
    std::array<double, kMaxDim> lo{}, hi{};
    for (int d = 0; d < g.dim(); ++d) {
        const double margin = fraction * (g.upper(d) - g.origin(d));
        lo[d] = g.origin(d) + margin;
        hi[d] = g.upper(d) - margin;
    }
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (f[i] == 0.0) continue;
        const Point x = g.node(i);
        for (int d = 0; d < g.dim(); ++d) {
            if (x[d] < lo[d] || x[d] > hi[d])
                fail(ErrorCode::SupportViolation,
                     std::string(what) + " is nonzero at node " + std::to_string(i) +
                         " inside the zero margin of the box");
        }
    }
}

namespace {
template <class Op>
SampledField zipWith(const SampledField& a, const SampledField& b, Op op) {
    requireSameGrid(a.grid(), b.grid(), "elementwise operation");
    std::vector<double> out(a.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = op(a[i], b[i]);
    return SampledField(a.grid(), std::move(out));
}
}  // namespace

SampledField operator+(const SampledField& a, const SampledField& b) {
    return zipWith(a, b, [](double x, double y) { return x + y; });
}

SampledField operator-(const SampledField& a, const SampledField& b) {
    return zipWith(a, b, [](double x, double y) { return x - y; });
}

SampledField operator*(double c, const SampledField& a) {
    std::vector<double> out(a.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = c * a[i];
    return SampledField(a.grid(), std::move(out));
}

SampledField abs(const SampledField& a) {
    std::vector<double> out(a.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::abs(a[i]);
    return SampledField(a.grid(), std::move(out));
}

double innerProduct(const SampledField& a, const SampledField& b) {
    requireSameGrid(a.grid(), b.grid(), "inner product");
    std::vector<double> prod(a.size());
    for (std::size_t i = 0; i < prod.size(); ++i) prod[i] = a[i] * b[i];
    return pairwiseSum(prod) * a.grid().cellVolume();
}

double l2Norm(const SampledField& a) { return std::sqrt(innerProduct(a, a)); }

std::string formatDouble(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::string writeVexf(const SampledField& f) {
    const Grid& g = f.grid();
    const int n = g.dim();
    std::string out = "vexf 1\ndim " + std::to_string(n) + "\nshape";
    for (int d = 0; d < n; ++d) out += " " + std::to_string(g.shape(d));
    out += "\norigin";
    for (int d = 0; d < n; ++d) out += " " + formatDouble(g.origin(d));
    out += "\nspacing";
    for (int d = 0; d < n; ++d) out += " " + formatDouble(g.spacing(d));
    out += "\n";
    const std::size_t row = g.shape(n - 1);
    for (std::size_t i = 0; i < f.size(); ++i) {
        out += formatDouble(f[i]);
        out += ((i + 1) % row == 0) ? '\n' : ' ';
    }
    return out;
}

namespace {

double parseReal(std::string_view tok, const char* what) {
    double v = 0.0;
    const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (res.ec != std::errc() || res.ptr != tok.data() + tok.size())
        fail(ErrorCode::FormatError, std::string("bad ") + what + " value '" + std::string(tok) + "'");
    return v;
}

std::size_t parseCount(std::string_view tok, const char* what) {
    std::size_t v = 0;
    const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (res.ec != std::errc() || res.ptr != tok.data() + tok.size())
        fail(ErrorCode::FormatError, std::string("bad ") + what + " value '" + std::string(tok) + "'");
    return v;
}

std::vector<std::string> headerLine(std::istringstream& in, const char* key, std::size_t count) {
    std::string line;
    if (!std::getline(in, line)) fail(ErrorCode::FormatError, std::string("missing '") + key + "' line");
    std::istringstream ls(line);
    std::string word;
    ls >> word;
    if (word != key) fail(ErrorCode::FormatError, std::string("expected '") + key + "' line, got '" + line + "'");
    std::vector<std::string> toks;
    while (ls >> word) toks.push_back(word);
    if (count != 0 && toks.size() != count)
        fail(ErrorCode::FormatError, std::string("'") + key + "' line has the wrong number of entries");
    return toks;
}

}  // namespace

SampledField readVexf(const std::string& text) {
    std::istringstream in(text);
    const auto version = headerLine(in, "vexf", 1);
    if (version[0] != "1") fail(ErrorCode::FormatError, "unsupported vexf version '" + version[0] + "'");
    const auto dimTok = headerLine(in, "dim", 1);
    const std::size_t dim = parseCount(dimTok[0], "dim");
    if (dim < 1 || dim > std::size_t(kMaxDim)) fail(ErrorCode::FormatError, "dim must be 1, 2 or 3");
    const auto shapeTok = headerLine(in, "shape", dim);
    const auto originTok = headerLine(in, "origin", dim);
    const auto spacingTok = headerLine(in, "spacing", dim);
    std::vector<std::size_t> shape;
    std::vector<double> origin, spacing;
    for (std::size_t d = 0; d < dim; ++d) {
        shape.push_back(parseCount(shapeTok[d], "shape"));
        origin.push_back(parseReal(originTok[d], "origin"));
        spacing.push_back(parseReal(spacingTok[d], "spacing"));
    }
    Grid g(int(dim), origin, spacing, shape);
    std::vector<double> values;
    values.reserve(g.size());
    std::string tok;
    while (in >> tok) values.push_back(parseReal(tok, "node"));
    if (values.size() != g.size())
        fail(ErrorCode::FormatError, "expected " + std::to_string(g.size()) + " node values, found " +
                                         std::to_string(values.size()));
    return SampledField(std::move(g), std::move(values));
}

void saveVexf(const SampledField& f, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(ErrorCode::IoError, "cannot open '" + path + "' for writing");
    out << writeVexf(f);
    if (!out) fail(ErrorCode::IoError, "write to '" + path + "' failed");
}

SampledField loadVexf(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorCode::IoError, "cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return readVexf(buf.str());
}

}  // namespace vex
