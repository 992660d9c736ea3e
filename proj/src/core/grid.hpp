#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "error.hpp"

namespace vex {

inline constexpr int kMaxDim = 3;

using Point = std::array<double, kMaxDim>;
using Index = std::array<std::size_t, kMaxDim>;

/// Uniform node grid on an axis-aligned box. Node k along axis d sits at
/// origin[d] + k * spacing[d]; storage is row-major with axis 0 slowest.
class Grid {
public:
    Grid(int dim, std::span<const double> origin, std::span<const double> spacing,
         std::span<const std::size_t> shape);

    /// Grid with `nodes` nodes per axis spanning [lo[d], hi[d]] inclusive.
    static Grid box(int dim, std::span<const double> lo, std::span<const double> hi,
                    std::span<const std::size_t> nodes);

    int dim() const noexcept { return dim_; }
    double origin(int d) const { return origin_[d]; }
    double spacing(int d) const { return spacing_[d]; }
    std::size_t shape(int d) const { return shape_[d]; }
    /// Coordinate of the last node along axis d.
    double upper(int d) const { return origin_[d] + spacing_[d] * double(shape_[d] - 1); }

    std::size_t size() const noexcept { return size_; }
    double cellVolume() const noexcept { return cellVolume_; }

    std::size_t stride(int d) const { return stride_[d]; }
    std::size_t flat(const Index& idx) const;
    Index unflatten(std::size_t flat) const;
    Point node(std::size_t flat) const;
    double coord(int d, std::size_t k) const { return origin_[d] + spacing_[d] * double(k); }

    bool operator==(const Grid& other) const = default;

private:
    int dim_;
    Point origin_{};
    Point spacing_{};
    Index shape_{};
    Index stride_{};
    std::size_t size_ = 0;
    double cellVolume_ = 0.0;
};

/// Real values on the nodes of a grid. Immutable; all values finite.
class SampledField {
public:
    SampledField(Grid grid, std::vector<double> values);
    static SampledField zeros(const Grid& grid);

    const Grid& grid() const noexcept { return grid_; }
    std::span<const double> values() const noexcept { return values_; }
    double operator[](std::size_t i) const { return values_[i]; }
    std::size_t size() const noexcept { return values_.size(); }

    double maxAbs() const;

private:
    Grid grid_;
    std::vector<double> values_;
};

/// Exponent p(.) with 1 < p_minus <= p_plus < infinity.
class ExponentField {
public:
    explicit ExponentField(SampledField base);

    const SampledField& base() const noexcept { return base_; }
    const Grid& grid() const noexcept { return base_.grid(); }
    double operator[](std::size_t i) const { return base_[i]; }
    double pMinus() const noexcept { return pMinus_; }
    double pPlus() const noexcept { return pPlus_; }

private:
    SampledField base_;
    double pMinus_;
    double pPlus_;
};

void requireSameGrid(const Grid& a, const Grid& b, const char* what);

/// Deterministic pairwise sum.
double pairwiseSum(std::span<const double> values);

/// Node-sum times cell volume.
double integrate(const SampledField& f);

/// Central differences inside, one-sided second-order at the boundary.
std::vector<SampledField> gradient(const SampledField& f);

/// Multilinear interpolation of f at the nodes of target.
SampledField resample(const SampledField& f, const Grid& target);

/// Throws SupportViolation unless f vanishes on the outer `fraction` of the
/// box side along every axis.
void requireCompactSupport(const SampledField& f, const char* what, double fraction = 0.1);

// Elementwise helpers; grids must match.
SampledField operator+(const SampledField& a, const SampledField& b);
SampledField operator-(const SampledField& a, const SampledField& b);
SampledField operator*(double c, const SampledField& a);
SampledField abs(const SampledField& a);

/// Discrete L2 inner product (node quadrature).
double innerProduct(const SampledField& a, const SampledField& b);
double l2Norm(const SampledField& a);

// VEXF text format.
std::string formatDouble(double v);
std::string writeVexf(const SampledField& f);
SampledField readVexf(const std::string& text);
void saveVexf(const SampledField& f, const std::string& path);
SampledField loadVexf(const std::string& path);

}  // namespace vex
