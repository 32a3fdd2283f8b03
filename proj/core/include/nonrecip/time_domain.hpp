#pragma once

// Direct integration of the mean-field equations of motion, used to check
// the frequency-domain sideband solution independently.

#include "nonrecip/sideband.hpp"

#include <optional>
#include <span>
#include <vector>

namespace nonrecip {

/// The integrated field left the bounded region around the operating point.
class DivergenceError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

/// The recorded trajectory has not reached a periodic steady state.
class UnsettledError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

struct ProbeDrive {
    ProbePort port = ProbePort::A;
    double amplitude = 0.0;  // eps_s, 1/s
    double delta = 0.0;      // probe-pump detuning, rad/s
};

enum class Field { A, C, B };

/// Uniformly sampled tail of an integration run.
struct Trajectory {
    std::vector<double> times;
    std::vector<cplx> A;
    std::vector<cplx> C;
    std::vector<cplx> B;
    double dt = 0.0;               // integration step
    double sample_interval = 0.0;  // spacing of the recorded samples (a multiple of dt)

    [[nodiscard]] std::span<const cplx> field(Field f) const noexcept;
    [[nodiscard]] std::size_t size() const noexcept { return times.size(); }
};

struct RecordOptions {
    double span = 0.0;  // recorded tail length; 0 selects 2/gamma
    int stride = 1;     // keep every stride-th step
};

/// Classical fourth-order Runge-Kutta integration from zero initial fields.
/// Requires dt <= (2 pi / omega_m) / 50 and t_final >= 10 / gamma. Throws
/// DivergenceError when a field exceeds 1e3 times its steady-state scale.
[[nodiscard]] Trajectory integrate_mean_field(const SystemParams& params, const DriveSetup& drive,
                                              const std::optional<ProbeDrive>& probe,
                                              double t_final, double dt,
                                              const RecordOptions& record = {});

/// (1/W) * integral of (X(t) - <X>) e^{+i delta t} dt over the last W seconds
/// of a uniformly sampled signal starting at t0, by the trapezoidal rule.
/// `window` must be a whole number of probe periods and of samples.
[[nodiscard]] cplx demodulate(std::span<const cplx> samples, double t0, double sample_interval,
                              double delta, double window);

/// Demodulates one field of a trajectory after checking that the mean
/// magnitude over the final window drifted by less than `settle_tolerance`
/// relative to the window before it.
[[nodiscard]] cplx demodulate(const Trajectory& trajectory, Field field, double delta,
                              double window, double settle_tolerance = 1e-6);

struct OracleOptions {
    double probe_scale = 1e-3;    // eps_s = probe_scale * max(eps_a, eps_c, kappa_t)
    double t_final = 0.0;         // 0 selects 10 / gamma
    int steps_per_period = 200;   // integration steps per mechanical period (minimum)
    int samples_per_probe_period = 20;
    double settle_tolerance = 1e-6;
};

struct OracleResult {
    cplx response;       // demodulated probe-port amplitude / eps_s
    double probe_amplitude = 0.0;
    double dt = 0.0;
    double window = 0.0;
};

/// Time-domain estimate of eta (port A) or xi (port C).
[[nodiscard]] OracleResult oracle_response(const SystemParams& params, const DriveSetup& drive,
                                           double delta, ProbePort port,
                                           const OracleOptions& options = {});

}  // namespace nonrecip
