#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "surecp/estimators.hpp"
#include "surecp/image.hpp"
#include "surecp/operators.hpp"
#include "surecp/rng.hpp"

namespace surecp {

/// SURE or its divergence came out NaN/Inf, typically an estimator that is
/// unstable at the chosen finite-difference step.
class NonFiniteError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class DivergenceBackend { exact, hutchinson };
enum class ProbeDistribution { normal, rademacher };

inline constexpr double kDefaultFdStep = 1e-4;

struct DivergenceEstimate {
    double value = 0.0;
    DivergenceBackend backend = DivergenceBackend::exact;
    std::size_t probes_used = 0;
    /// Absolute finite-difference step eps; empty for the exact backend.
    std::optional<double> fd_step;
};

/// The three addends of
///   SURE(y) = |y - A x_hat(y)|^2 / m - sigma^2 + (2 sigma^2 / m) div(A x_hat(y)),
/// with value = (residual_term - sigma_term) + divergence_term.
struct SureValue {
    double value = 0.0;
    double residual_term = 0.0;
    double sigma_term = 0.0;
    double divergence_term = 0.0;
    DivergenceEstimate divergence;
};

struct SureOptions {
    DivergenceBackend backend = DivergenceBackend::hutchinson;
    std::size_t probes = 1;
    /// Relative step; the absolute step is fd_step * (1 + |y|_inf).
    double fd_step = kDefaultFdStep;
    ProbeDistribution probe_distribution = ProbeDistribution::normal;
};

/// Closed-form div(A x_hat(y)). Throws std::logic_error if the estimator has
/// none.
DivergenceEstimate divergence_exact(const Estimator& est, const CirculantOperator& op,
                                    const Image& y);

/// Hutchinson trace estimate with forward-difference Jacobian-vector products:
///   (1/K) sum_i n_i^T [h(y + eps n_i) - h(y)] / eps,   h(y) = A x_hat(y),
/// eps = fd_step * (1 + |y|_inf). Exact in expectation over the probes for
/// linear estimators, whatever eps.
DivergenceEstimate divergence_hutchinson(const Estimator& est, const CirculantOperator& op,
                                         const Image& y, std::size_t probes, double fd_step,
                                         RngSeed seed,
                                         ProbeDistribution distribution = ProbeDistribution::normal);

/// SURE(y) as an unbiased estimate of s(x, y) = |A x - A x_hat(y)|^2 / m.
/// `seed` only feeds the Hutchinson probes.
SureValue sure(const Estimator& est, const CirculantOperator& op, const NoiseModel& noise,
               const Image& y, const SureOptions& options, RngSeed seed);

/// SURE for every measurement of a pool, computed concurrently. Sample i uses
/// probe seed derive_seed(seed, kProbeStream, i). Only measurements enter
/// here: this is the whole self-supervised calibration input.
std::vector<SureValue> sure_pool(const Estimator& est, const CirculantOperator& op,
                                 const NoiseModel& noise, std::span<const Image> measurements,
                                 const SureOptions& options, RngSeed seed, unsigned threads = 0);

inline constexpr std::uint64_t kProbeStream = 3;

}  // namespace surecp
