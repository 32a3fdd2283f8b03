#pragma once

#include "nonrecip/sideband.hpp"

#include <span>
#include <vector>

namespace nonrecip {

/// t = 1 - 2 kappa * response (input-output relation X_out = X_in - 2 kappa X).
[[nodiscard]] constexpr cplx transmission_amplitude(cplx response, double kappa) noexcept {
    return 1.0 - 2.0 * kappa * response;
}

[[nodiscard]] inline double transmissivity(cplx t) noexcept { return std::norm(t); }

/// Complex transmission amplitude of one port at probe detuning delta.
[[nodiscard]] cplx transmission_at(const SystemParams& params, const SteadyState& steady,
                                   double delta, ProbePort port,
                                   SidebandMode mode = SidebandMode::TwoSideband);

/// Unwrapped arg(t) along an ordered sequence: consecutive phases differ by at
/// most pi, and the first lies in (-pi, pi]. Throws std::invalid_argument on
/// an empty input.
[[nodiscard]] std::vector<double> phase_spectrum(std::span<const cplx> amplitudes);

/// The stencil spacing was too coarse to follow the phase unambiguously.
class PhaseJumpError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

/// Group delay d arg(t)/d delta by a central difference of half-width h.
/// The phase increment is accumulated through the centre point; a jump of more
/// than pi/2 over either half of the stencil raises PhaseJumpError.
[[nodiscard]] double group_delay(const SystemParams& params, const SteadyState& steady,
                                 double delta, ProbePort port, double h,
                                 SidebandMode mode = SidebandMode::TwoSideband);

/// Same, solving the steady state for `drive` first.
[[nodiscard]] double group_delay(const SystemParams& params, const DriveSetup& drive, double delta,
                                 ProbePort port, double h,
                                 SidebandMode mode = SidebandMode::TwoSideband);

struct DelayOptions {
    double initial_step = 0.0;  // 0 selects 1e-6 * omega_m
    double tolerance = 1e-3;    // accepted |tau(h) - tau(h/2)| / max(|tau(h/2)|, floor)
    double floor = 1e-12;       // s
    int max_halvings = 30;
};

struct DelayEstimate {
    double tau = 0.0;             // value at the finer of the two accepted steps
    double step = 0.0;            // that step
    double relative_change = 0.0;
    bool converged = false;
};

/// Halves the step until two successive estimates agree within tolerance.
[[nodiscard]] DelayEstimate converged_group_delay(const SystemParams& params,
                                                  const SteadyState& steady, double delta,
                                                  ProbePort port,
                                                  SidebandMode mode = SidebandMode::TwoSideband,
                                                  const DelayOptions& options = {});

}  // namespace nonrecip
