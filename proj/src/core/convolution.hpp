#pragma once

#include <complex>
#include <functional>
#include <memory>
#include <vector>

#include "grid.hpp"

namespace vex {

/// Kernel sampled at every node offset a convolution on `grid` can reach:
/// offsets -(N_d - 1) .. (N_d - 1) per axis, row-major, axis 0 slowest.
class KernelTable {
public:
    using Sampler = std::function<double(const Point& offset, bool isOrigin)>;

    KernelTable(const Grid& grid, const Sampler& sample);

    const Grid& grid() const noexcept { return grid_; }
    std::size_t extent(int d) const { return extent_[d]; }
    std::size_t size() const noexcept { return values_.size(); }
    double at(const std::array<long, kMaxDim>& offset) const;
    std::span<const double> values() const noexcept { return values_; }

private:
    Grid grid_;
    Index extent_{};
    std::vector<double> values_;
};

/// out(x) = cellVolume * sum_y f(y) K(x - y), summed node by node.
SampledField convolveDirect(const SampledField& f, const KernelTable& kernel);

/// Same finite sum as convolveDirect, evaluated through the DFT of the field
/// zero-padded to twice its extent per axis (linear, not circular).
class PaddedConvolver {
public:
    explicit PaddedConvolver(const KernelTable& kernel);
    ~PaddedConvolver();
    PaddedConvolver(PaddedConvolver&&) noexcept;
    PaddedConvolver& operator=(PaddedConvolver&&) noexcept;

    SampledField apply(const SampledField& f) const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

SampledField convolveFFT(const SampledField& f, const KernelTable& kernel);

/// DFT of f zero-padded to 2N_d per axis. Bin m along axis d corresponds to
/// the frequency k_d = m_signed / (2 N_d h_d) with m_signed in [-N_d, N_d).
struct PaddedSpectrum {
    Grid grid;
    Index padded{};
    /// r2c layout: last axis holds padded/2 + 1 bins.
    std::vector<std::complex<double>> bins;

    std::size_t halfLast() const { return padded[grid.dim() - 1] / 2 + 1; }
    /// Frequency vector (cycles per unit length) of bin `flat` in r2c layout.
    Point frequency(std::size_t flat) const;
    /// Number of times a bin stands for itself in the full spectrum (1 or 2).
    double hermitianWeight(std::size_t flat) const;
};

PaddedSpectrum paddedSpectrum(const SampledField& f);

/// Multiplies the padded spectrum by m(k), inverts, restricts to the original grid.
SampledField applyPaddedMultiplier(const SampledField& f, const std::function<double(const Point&)>& m);

/// Same as applyPaddedMultiplier but treats the grid itself as one period
/// (no padding); frequencies are m / (N_d h_d).
SampledField applyPeriodicMultiplier(const SampledField& f, const std::function<double(const Point&)>& m);

}  // namespace vex
