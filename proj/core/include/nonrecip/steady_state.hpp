#pragma once

#include "nonrecip/params.hpp"

#include <complex>
#include <vector>

namespace nonrecip {

using cplx = std::complex<double>;

/// Mean-field operating point of the pumped cavity.
struct SteadyState {
    cplx A0;                 // clockwise intracavity amplitude (sqrt photons)
    cplx C0;                 // counter-clockwise amplitude
    cplx B0;                 // mechanical amplitude
    double photons = 0.0;    // |A0|^2 + |C0|^2
    double delta_eff = 0.0;  // delta + g (B0 + B0*)
    double residual = 0.0;   // see steady_residual()

    // Diagnostics.
    bool used_bisection = false;       // fixed-point iteration had to fall back
    int iterations = 0;                // total fixed-point iterations
    std::vector<double> other_roots;   // additional photon-number roots found by the root scan
};

struct SteadyOptions {
    double damping = 0.5;             // N <- (1 - damping) N + damping f(N)
    double tolerance = 1e-12;         // |N - f(N)| / max(N, 1)
    int max_iterations = 10000;       // per continuation step
    int continuation_steps = 20;      // log-spaced power ramp from zero
    bool bisection_fallback = true;
};

/// Delta - 2 g^2 N omega_m / (omega_m^2 + gamma^2); the static optical-spring
/// shift obtained by eliminating B0 from the mechanical steady-state equation.
[[nodiscard]] double effective_detuning(double photons, const SystemParams& params, double delta);

/// Solves the three coupled steady-state equations self-consistently.
///
/// The optical amplitudes depend on the mechanics only through the total
/// photon number N, so the problem reduces to the scalar fixed point
/// N = |A0(N)|^2 + |C0(N)|^2. The pump power is ramped up from zero and the
/// branch continuous with the undriven solution is returned. Throws
/// NumericalError when no root can be located.
[[nodiscard]] SteadyState solve_steady_state(const SystemParams& params, const DriveSetup& drive,
                                             const SteadyOptions& options = {});

/// Max magnitude of the three steady-state equation residuals, normalized by
/// max(eps_a, eps_c, omega_m |B0|, 1).
[[nodiscard]] double steady_residual(const SteadyState& state, const SystemParams& params,
                                     const DriveSetup& drive);

}  // namespace nonrecip
