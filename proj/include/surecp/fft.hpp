#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "surecp/image.hpp"

namespace surecp {

using Spectrum = std::vector<std::complex<double>>;

/// Unnormalized 2-D forward DFT, row-major, F[k] = sum_x f[x] exp(-2 pi i k.x / N).
/// Backed by FFTW; plans are cached per shape and shared read-only across
/// threads, buffers are per call.
Spectrum fft2(const Image& image);

/// Inverse DFT including the 1/(width*height) factor.
Spectrum ifft2(const Spectrum& spectrum, std::size_t width, std::size_t height);

/// Real part of the inverse DFT. `imag_norm` receives the l2 norm of the
/// discarded imaginary part.
Image ifft2_real(const Spectrum& spectrum, std::size_t width, std::size_t height,
                 double& imag_norm);

/// Signed frequency index of DFT bin k on an axis of length n: k for
/// k <= n/2, k - n otherwise.
inline long signed_frequency(std::size_t k, std::size_t n) {
    return 2 * k <= n ? static_cast<long>(k) : static_cast<long>(k) - static_cast<long>(n);
}

}  // namespace surecp
