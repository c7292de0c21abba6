#include "surecp/fft.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <tuple>

namespace surecp {

namespace {

struct BufferDeleter {
    void operator()(fftw_complex* p) const { fftw_free(p); }
};
using Buffer = std::unique_ptr<fftw_complex[], BufferDeleter>;

Buffer make_buffer(std::size_t n) {
    auto* p = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n));
    if (!p) throw std::bad_alloc();
    return Buffer(p);
}

// FFTW's planner is not reentrant; execution of an existing plan on new
// (equally aligned) arrays is. Plans are created once under the lock and
// never destroyed.
class PlanCache {
public:
    fftw_plan get(std::size_t width, std::size_t height, int sign) {
        std::lock_guard lock(mutex_);
        const auto key = std::make_tuple(width, height, sign);
        if (auto it = plans_.find(key); it != plans_.end()) {
            return it->second;
        }
        Buffer in = make_buffer(width * height);
        Buffer out = make_buffer(width * height);
        fftw_plan plan = fftw_plan_dft_2d(static_cast<int>(height), static_cast<int>(width),
                                          in.get(), out.get(), sign, FFTW_ESTIMATE);
        if (!plan) throw std::runtime_error("fftw: planning failed");
        plans_.emplace(key, plan);
        return plan;
    }

private:
    std::mutex mutex_;
    std::map<std::tuple<std::size_t, std::size_t, int>, fftw_plan> plans_;
};

PlanCache& plan_cache() {
    static PlanCache cache;
    return cache;
}

Spectrum execute(const std::complex<double>* input, std::size_t width, std::size_t height,
                 int sign) {
    const std::size_t n = width * height;
    Buffer in = make_buffer(n);
    Buffer out = make_buffer(n);
    for (std::size_t i = 0; i < n; ++i) {
        in[i][0] = input[i].real();
        in[i][1] = input[i].imag();
    }
    fftw_execute_dft(plan_cache().get(width, height, sign), in.get(), out.get());
    Spectrum result(n);
    for (std::size_t i = 0; i < n; ++i) {
        result[i] = {out[i][0], out[i][1]};
    }
    return result;
}

}  // namespace

Spectrum fft2(const Image& image) {
    Spectrum input(image.data().begin(), image.data().end());
    return execute(input.data(), image.width(), image.height(), FFTW_FORWARD);
}

Spectrum ifft2(const Spectrum& spectrum, std::size_t width, std::size_t height) {
    if (spectrum.size() != width * height) {
        throw std::invalid_argument("ifft2: spectrum size does not match dimensions");
    }
    Spectrum result = execute(spectrum.data(), width, height, FFTW_BACKWARD);
    const double scale = 1.0 / static_cast<double>(width * height);
    for (auto& v : result) v *= scale;
    return result;
}

Image ifft2_real(const Spectrum& spectrum, std::size_t width, std::size_t height,
                 double& imag_norm) {
    const Spectrum full = ifft2(spectrum, width, height);
    std::vector<double> data(full.size());
    double imag_sq = 0.0;
    for (std::size_t i = 0; i < full.size(); ++i) {
        data[i] = full[i].real();
        imag_sq += full[i].imag() * full[i].imag();
    }
    imag_norm = std::sqrt(imag_sq);
    return Image(width, height, std::move(data));
}

}  // namespace surecp
