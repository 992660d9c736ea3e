#include "convolution.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>

#include "parallel.hpp"

namespace vex {

namespace {

// FFTW planning is not thread-safe.
std::mutex& plannerMutex() {
    static std::mutex m;
    return m;
}

struct FftwDeleter {
    void operator()(void* p) const noexcept { fftw_free(p); }
};

template <class T>
using FftwBuffer = std::unique_ptr<T[], FftwDeleter>;

template <class T>
FftwBuffer<T> allocate(std::size_t n) {
    auto* p = static_cast<T*>(fftw_malloc(sizeof(T) * std::max<std::size_t>(n, 1)));
    if (!p) throw std::bad_alloc();
    return FftwBuffer<T>(p);
}

/// Real <-> half-complex transform pair over a fixed shape.
class RealTransform {
public:
    explicit RealTransform(std::vector<int> dims) : dims_(std::move(dims)) {
        realSize_ = 1;
        for (int d : dims_) realSize_ *= std::size_t(d);
        complexSize_ = realSize_ / std::size_t(dims_.back()) * (std::size_t(dims_.back()) / 2 + 1);
        real_ = allocate<double>(realSize_);
        spec_ = allocate<fftw_complex>(complexSize_);
        std::lock_guard lock(plannerMutex());
        // FFTW_ESTIMATE keeps the chosen algorithm, and therefore the
        // rounding, identical from run to run.
        forward_ = fftw_plan_dft_r2c(int(dims_.size()), dims_.data(), real_.get(), spec_.get(), FFTW_ESTIMATE);
        backward_ = fftw_plan_dft_c2r(int(dims_.size()), dims_.data(), spec_.get(), real_.get(), FFTW_ESTIMATE);
        if (!forward_ || !backward_) fail(ErrorCode::InvalidArgument, "FFTW planning failed");
    }
    ~RealTransform() {
        std::lock_guard lock(plannerMutex());
        if (forward_) fftw_destroy_plan(forward_);
        if (backward_) fftw_destroy_plan(backward_);
    }
    RealTransform(const RealTransform&) = delete;
    RealTransform& operator=(const RealTransform&) = delete;

    double* real() { return real_.get(); }
    std::complex<double>* spectrum() { return reinterpret_cast<std::complex<double>*>(spec_.get()); }
    std::size_t realSize() const { return realSize_; }
    std::size_t complexSize() const { return complexSize_; }
    void forward() { fftw_execute(forward_); }
    void backward() { fftw_execute(backward_); }

private:
    std::vector<int> dims_;
    std::size_t realSize_ = 0, complexSize_ = 0;
    FftwBuffer<double> real_;
    FftwBuffer<fftw_complex> spec_;
    fftw_plan forward_ = nullptr;
    fftw_plan backward_ = nullptr;
};

std::vector<int> paddedDims(const Grid& g, bool pad) {
    std::vector<int> dims;
    for (int d = 0; d < g.dim(); ++d) dims.push_back(int(pad ? 2 * g.shape(d) : g.shape(d)));
    return dims;
}

// Copies f into the corner of a buffer of shape `dims`, zero elsewhere.
void embed(const SampledField& f, const std::vector<int>& dims, double* out, std::size_t outSize) {
    std::fill(out, out + outSize, 0.0);
    const Grid& g = f.grid();
    const int n = g.dim();
    std::array<std::size_t, kMaxDim> pstride{};
    std::size_t s = 1;
    for (int d = n - 1; d >= 0; --d) {
        pstride[d] = s;
        s *= std::size_t(dims[d]);
    }
    for (std::size_t i = 0; i < g.size(); ++i) {
        const Index idx = g.unflatten(i);
        std::size_t p = 0;
        for (int d = 0; d < n; ++d) p += idx[d] * pstride[d];
        out[p] = f[i];
    }
}

SampledField restrict(const Grid& g, const std::vector<int>& dims, const double* in, double scale) {
    const int n = g.dim();
    std::array<std::size_t, kMaxDim> pstride{};
    std::size_t s = 1;
    for (int d = n - 1; d >= 0; --d) {
        pstride[d] = s;
        s *= std::size_t(dims[d]);
    }
    std::vector<double> out(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
        const Index idx = g.unflatten(i);
        std::size_t p = 0;
        for (int d = 0; d < n; ++d) p += idx[d] * pstride[d];
        out[i] = in[p] * scale;
    }
    return SampledField(g, std::move(out));
}

Point binFrequency(const Grid& g, const std::vector<int>& dims, std::size_t flat) {
    const int n = g.dim();
    const std::size_t lastBins = std::size_t(dims[n - 1]) / 2 + 1;
    Point k{};
    std::size_t rest = flat;
    for (int d = n - 1; d >= 0; --d) {
        const std::size_t len = (d == n - 1) ? lastBins : std::size_t(dims[d]);
        const long j = long(rest % len);
        rest /= len;
        const long m = dims[d];
        const long signedJ = (d == n - 1) ? j : (j < (m + 1) / 2 ? j : j - m);
        k[d] = double(signedJ) / (double(m) * g.spacing(d));
    }
    return k;
}

SampledField applyMultiplier(const SampledField& f, bool pad, const std::function<double(const Point&)>& m) {
    const Grid& g = f.grid();
    const auto dims = paddedDims(g, pad);
    RealTransform t(dims);
    embed(f, dims, t.real(), t.realSize());
    t.forward();
    auto* spec = t.spectrum();
    for (std::size_t b = 0; b < t.complexSize(); ++b) spec[b] *= m(binFrequency(g, dims, b));
    t.backward();
    return restrict(g, dims, t.real(), 1.0 / double(t.realSize()));
}

}  // namespace

KernelTable::KernelTable(const Grid& grid, const Sampler& sample) : grid_(grid) {
    const int n = grid.dim();
    std::size_t total = 1;
    for (int d = 0; d < kMaxDim; ++d) {
        extent_[d] = d < n ? 2 * grid.shape(d) - 1 : 1;
        total *= extent_[d];
    }
    values_.resize(total);
    for (std::size_t i = 0; i < total; ++i) {
        std::size_t rest = i;
        Point z{};
        bool origin = true;
        for (int d = n - 1; d >= 0; --d) {
            const long j = long(rest % extent_[d]) - long(grid.shape(d) - 1);
            rest /= extent_[d];
            z[d] = double(j) * grid.spacing(d);
            origin = origin && j == 0;
        }
        const double v = sample(z, origin);
        if (!std::isfinite(v)) fail(ErrorCode::InvalidArgument, "kernel sample is not finite");
        values_[i] = v;
    }
}

double KernelTable::at(const std::array<long, kMaxDim>& offset) const {
    std::size_t flat = 0;
    for (int d = 0; d < grid_.dim(); ++d)
        flat = flat * extent_[d] + std::size_t(offset[d] + long(grid_.shape(d) - 1));
    return values_[flat];
}

SampledField convolveDirect(const SampledField& f, const KernelTable& kernel) {
    const Grid& g = f.grid();
    requireSameGrid(g, kernel.grid(), "convolution");
    const int n = g.dim();
    std::array<std::size_t, kMaxDim> kstride{};
    std::size_t s = 1;
    for (int d = n - 1; d >= 0; --d) {
        kstride[d] = s;
        s *= kernel.extent(d);
    }
    // Only nonzero source nodes contribute.
    std::vector<double> src;
    std::vector<std::size_t> srcOffset;
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (f[i] == 0.0) continue;
        const Index idx = g.unflatten(i);
        std::size_t b = 0;
        for (int d = 0; d < n; ++d) b += idx[d] * kstride[d];
        src.push_back(f[i]);
        srcOffset.push_back(b);
    }
    const auto kv = kernel.values();
    const double vol = g.cellVolume();
    std::vector<double> out(g.size());
    parallelFor(g.size(), [&](std::size_t x) {
        const Index idx = g.unflatten(x);
        std::size_t a = 0;
        for (int d = 0; d < n; ++d) a += (idx[d] + g.shape(d) - 1) * kstride[d];
        double acc = 0.0;
        for (std::size_t j = 0; j < src.size(); ++j) acc += src[j] * kv[a - srcOffset[j]];
        out[x] = acc * vol;
    });
    return SampledField(g, std::move(out));
}

struct PaddedConvolver::Impl {
    Grid grid;
    std::vector<int> dims;
    std::vector<std::complex<double>> kernelSpectrum;
    mutable std::unique_ptr<RealTransform> transform;
    mutable std::mutex mutex;
};

PaddedConvolver::PaddedConvolver(const KernelTable& kernel) : impl_(new Impl{kernel.grid(), {}, {}, {}, {}}) {
    const Grid& g = kernel.grid();
    const int n = g.dim();
    impl_->dims = paddedDims(g, true);
    impl_->transform = std::make_unique<RealTransform>(impl_->dims);
    RealTransform& t = *impl_->transform;
    double* buf = t.real();
    std::fill(buf, buf + t.realSize(), 0.0);
    std::array<std::size_t, kMaxDim> pstride{};
    std::size_t s = 1;
    for (int d = n - 1; d >= 0; --d) {
        pstride[d] = s;
        s *= std::size_t(impl_->dims[d]);
    }
    // Offset o lands at index o mod 2N along each axis.
    const auto kv = kernel.values();
    for (std::size_t i = 0; i < kv.size(); ++i) {
        std::size_t rest = i;
        std::size_t p = 0;
        for (int d = n - 1; d >= 0; --d) {
            const long j = long(rest % kernel.extent(d)) - long(g.shape(d) - 1);
            rest /= kernel.extent(d);
            const long m = impl_->dims[d];
            p += std::size_t((j + m) % m) * pstride[d];
        }
        buf[p] = kv[i];
    }
    t.forward();
    impl_->kernelSpectrum.assign(t.spectrum(), t.spectrum() + t.complexSize());
}

PaddedConvolver::~PaddedConvolver() = default;
PaddedConvolver::PaddedConvolver(PaddedConvolver&&) noexcept = default;
PaddedConvolver& PaddedConvolver::operator=(PaddedConvolver&&) noexcept = default;

SampledField PaddedConvolver::apply(const SampledField& f) const {
    requireSameGrid(f.grid(), impl_->grid, "convolution");
    std::lock_guard lock(impl_->mutex);
    RealTransform& t = *impl_->transform;
    embed(f, impl_->dims, t.real(), t.realSize());
    t.forward();
    auto* spec = t.spectrum();
    for (std::size_t b = 0; b < t.complexSize(); ++b) spec[b] *= impl_->kernelSpectrum[b];
    t.backward();
    return restrict(f.grid(), impl_->dims, t.real(), f.grid().cellVolume() / double(t.realSize()));
}

SampledField convolveFFT(const SampledField& f, const KernelTable& kernel) {
    requireSameGrid(f.grid(), kernel.grid(), "convolution");
    return PaddedConvolver(kernel).apply(f);
}

Point PaddedSpectrum::frequency(std::size_t flat) const {
    std::vector<int> dims;
    for (int d = 0; d < grid.dim(); ++d) dims.push_back(int(padded[d]));
    return binFrequency(grid, dims, flat);
}

double PaddedSpectrum::hermitianWeight(std::size_t flat) const {
    const std::size_t last = padded[grid.dim() - 1];
    const std::size_t j = flat % halfLast();
    if (j == 0) return 1.0;
    if (last % 2 == 0 && j == last / 2) return 1.0;
    return 2.0;
}

PaddedSpectrum paddedSpectrum(const SampledField& f) {
    const Grid& g = f.grid();
    const auto dims = paddedDims(g, true);
    RealTransform t(dims);
    embed(f, dims, t.real(), t.realSize());
    t.forward();
    PaddedSpectrum out{g, {}, {}};
    for (int d = 0; d < g.dim(); ++d) out.padded[d] = std::size_t(dims[d]);
    out.bins.assign(t.spectrum(), t.spectrum() + t.complexSize());
    return out;
}

SampledField applyPaddedMultiplier(const SampledField& f, const std::function<double(const Point&)>& m) {
    return applyMultiplier(f, true, m);
}

SampledField applyPeriodicMultiplier(const SampledField& f, const std::function<double(const Point&)>& m) {
    return applyMultiplier(f, false, m);
}

}  // namespace vex
