#include "surecp/sure.hpp"

#include <cmath>
#include <string>

#include "surecp/parallel.hpp"

namespace surecp {

DivergenceEstimate divergence_exact(const Estimator& est, const CirculantOperator& op,
                                    const Image& y) {
    if (y.width() != op.width() || y.height() != op.height()) {
        throw std::invalid_argument("divergence_exact: measurement does not match operator");
    }
    DivergenceEstimate d;
    d.value = est.exact_divergence(y);
    d.backend = DivergenceBackend::exact;
    if (!std::isfinite(d.value)) {
        throw NonFiniteError("divergence_exact: non-finite divergence");
    }
    return d;
}

DivergenceEstimate divergence_hutchinson(const Estimator& est, const CirculantOperator& op,
                                         const Image& y, std::size_t probes, double fd_step,
                                         RngSeed seed, ProbeDistribution distribution) {
    if (probes == 0) {
        throw std::invalid_argument("divergence_hutchinson: need at least one probe");
    }
    if (!(fd_step > 0.0) || !std::isfinite(fd_step)) {
        throw std::invalid_argument("divergence_hutchinson: fd_step must be positive");
    }
    const double eps = fd_step * (1.0 + max_abs(y));
    const Image h0 = op.apply(est.reconstruct(y));

    Rng rng(seed);
    Image probe(y.width(), y.height());
    Image shifted(y.width(), y.height());
    double total = 0.0;
    for (std::size_t i = 0; i < probes; ++i) {
        for (double& v : probe.data()) {
            v = distribution == ProbeDistribution::normal ? rng.normal() : rng.rademacher();
        }
        for (std::size_t j = 0; j < y.size(); ++j) {
            shifted.data()[j] = y.data()[j] + eps * probe.data()[j];
        }
        const Image h1 = op.apply(est.reconstruct(shifted));
        double quad = 0.0;
        for (std::size_t j = 0; j < y.size(); ++j) {
            quad += probe.data()[j] * (h1.data()[j] - h0.data()[j]);
        }
        total += quad / eps;
    }

    DivergenceEstimate d;
    d.value = total / static_cast<double>(probes);
    d.backend = DivergenceBackend::hutchinson;
    d.probes_used = probes;
    d.fd_step = eps;
    if (!std::isfinite(d.value)) {
        throw NonFiniteError("divergence_hutchinson: non-finite estimate (fd step " +
                             std::to_string(eps) + ")");
    }
    return d;
}

SureValue sure(const Estimator& est, const CirculantOperator& op, const NoiseModel& noise,
               const Image& y, const SureOptions& options, RngSeed seed) {
    const Image predicted = op.apply(est.reconstruct(y));
    const auto m = static_cast<double>(y.size());
    double residual = 0.0;
    for (std::size_t j = 0; j < y.size(); ++j) {
        const double r = y.data()[j] - predicted.data()[j];
        residual += r * r;
    }

    SureValue s;
    s.divergence = options.backend == DivergenceBackend::exact
                       ? divergence_exact(est, op, y)
                       : divergence_hutchinson(est, op, y, options.probes, options.fd_step, seed,
                                               options.probe_distribution);
    s.residual_term = residual / m;
    s.sigma_term = noise.variance();
    s.divergence_term = 2.0 * noise.variance() / m * s.divergence.value;
    s.value = (s.residual_term - s.sigma_term) + s.divergence_term;
    if (!std::isfinite(s.value)) {
        throw NonFiniteError("sure: non-finite value");
    }
    return s;
}

std::vector<SureValue> sure_pool(const Estimator& est, const CirculantOperator& op,
                                 const NoiseModel& noise, std::span<const Image> measurements,
                                 const SureOptions& options, RngSeed seed, unsigned threads) {
    std::vector<SureValue> values(measurements.size());
    parallel_for(
        measurements.size(),
        [&](std::size_t i) {
            try {
                values[i] = sure(est, op, noise, measurements[i], options,
                                 derive_seed(seed, kProbeStream, i));
            } catch (const NonFiniteError& e) {
                throw NonFiniteError("sample " + std::to_string(i) + ": " + e.what());
            }
        },
        threads);
    return values;
}

}  // namespace surecp
