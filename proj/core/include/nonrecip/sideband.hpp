#pragma once

// Linearized response of the pumped cavity to a weak probe at detuning
// delta = omega_probe - omega_pump.

#include "nonrecip/steady_state.hpp"

#include <Eigen/Dense>

#include <string_view>

namespace nonrecip {

/// Which input port carries the probe. A is the clockwise (right-moving)
/// direction, C the counter-clockwise one.
enum class ProbePort { A, C };

/// Closure used for the lower sideband.
///  - TwoSideband: unknowns (A+, conj(A-), C+, conj(C-), B+, conj(B-)); the
///    e^{-i delta t} and e^{+i delta t} components of the mean-field equations
///    are matched separately.
///  - LiteralAppendix: unknowns (A+, conj(A+), C+, conj(C+), B+, conj(B+));
///    the upper-sideband equations with their complex conjugates, treating the
///    starred amplitudes as same-frequency conjugates.
enum class SidebandMode { TwoSideband, LiteralAppendix };

[[nodiscard]] std::string_view to_string(ProbePort port) noexcept;
[[nodiscard]] std::string_view to_string(SidebandMode mode) noexcept;
[[nodiscard]] SidebandMode parse_sideband_mode(std::string_view name);

using SidebandMatrix = Eigen::Matrix<cplx, 6, 6>;
using SidebandVector = Eigen::Matrix<cplx, 6, 1>;

/// Row/column layout of the sideband system, clockwise mode first.
namespace slot {
inline constexpr int a_upper = 0;
inline constexpr int a_lower = 1;
inline constexpr int c_upper = 2;
inline constexpr int c_lower = 3;
inline constexpr int b_upper = 4;
inline constexpr int b_lower = 5;
}  // namespace slot

struct SidebandSystem {
    SidebandMatrix matrix;
    SidebandVector rhs;  // unit probe amplitude in the probed port
    double delta = 0.0;
    ProbePort port = ProbePort::A;
    SidebandMode mode = SidebandMode::TwoSideband;
};

struct SidebandSolution {
    SidebandVector amplitudes;
    cplx response;        // eta (port A) or xi (port C), units of s
    double rcond = 0.0;   // reciprocal condition estimate of the factorized matrix
    double residual = 0.0;  // |M x - rhs|_inf / |rhs|_inf
};

/// Steady states with a larger residual are rejected by the sideband stage.
inline constexpr double kSteadyAcceptance = 1e-8;

/// Systems whose condition estimate exceeds this are reported as failures.
inline constexpr double kMaxCondition = 1e12;

/// Omega = i (delta_eff - delta) + kappa_t.
[[nodiscard]] cplx optical_upper_coefficient(const SystemParams& params, const SteadyState& steady,
                                             double delta);

/// Phi = i (omega_m - delta) + gamma.
[[nodiscard]] cplx mechanical_upper_coefficient(const SystemParams& params, double delta);

[[nodiscard]] SidebandSystem assemble_sideband_system(const SystemParams& params,
                                                      const SteadyState& steady, double delta,
                                                      ProbePort port,
                                                      SidebandMode mode = SidebandMode::TwoSideband);

/// Solves an assembled system. The probed mode is moved into the leading
/// slots before factorization, so the a<->c mirror image of a problem is
/// solved with bit-identical arithmetic.
[[nodiscard]] SidebandSolution solve_sideband_system(const SidebandSystem& system);

[[nodiscard]] SidebandSolution sideband_response(const SystemParams& params,
                                                 const SteadyState& steady, double delta,
                                                 ProbePort port,
                                                 SidebandMode mode = SidebandMode::TwoSideband);

}  // namespace nonrecip
