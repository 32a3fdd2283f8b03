#include "nonrecip/observables.hpp"

#include <cmath>
#include <numbers>
#include <optional>
#include <sstream>
#include <stdexcept>

namespace nonrecip {

namespace {

constexpr double pi = std::numbers::pi;

std::optional<double> try_group_delay(const SystemParams& p, const SteadyState& s, double delta,
                                      ProbePort port, double h, SidebandMode mode) {
    try {
        return group_delay(p, s, delta, port, h, mode);
    } catch (const PhaseJumpError&) {
        return std::nullopt;
    }
}

}  // namespace

cplx transmission_at(const SystemParams& params, const SteadyState& steady, double delta,
                     ProbePort port, SidebandMode mode) {
    return transmission_amplitude(sideband_response(params, steady, delta, port, mode).response,
                                  params.kappa);
}

std::vector<double> phase_spectrum(std::span<const cplx> amplitudes) {
    if (amplitudes.empty()) throw std::invalid_argument("phase_spectrum: empty input");
    std::vector<double> phases;
    phases.reserve(amplitudes.size());
    phases.push_back(std::arg(amplitudes.front()));
    if (phases.front() == -pi) phases.front() = pi;
    for (std::size_t i = 1; i < amplitudes.size(); ++i) {
        const double prev = phases.back();
        double phi = std::arg(amplitudes[i]);
        phi += 2.0 * pi * std::round((prev - phi) / (2.0 * pi));
        phases.push_back(phi);
    }
    return phases;
}

double group_delay(const SystemParams& params, const SteadyState& steady, double delta,
                   ProbePort port, double h, SidebandMode mode) {
    if (!(h > 0.0)) throw std::invalid_argument("group_delay: step must be > 0");
    const cplx lo = transmission_at(params, steady, delta - h, port, mode);
    const cplx mid = transmission_at(params, steady, delta, port, mode);
    const cplx hi = transmission_at(params, steady, delta + h, port, mode);
    const double lower = std::arg(mid / lo);
    const double upper = std::arg(hi / mid);
    if (std::abs(lower) > pi / 2 || std::abs(upper) > pi / 2) {
        std::ostringstream msg;
        msg << "phase jump across group-delay stencil at delta = " << delta << " (h = " << h
            << ")";
        throw PhaseJumpError(msg.str());
    }
    return (lower + upper) / (2.0 * h);
}

double group_delay(const SystemParams& params, const DriveSetup& drive, double delta,
                   ProbePort port, double h, SidebandMode mode) {
    return group_delay(params, solve_steady_state(params, drive), delta, port, h, mode);
}

DelayEstimate converged_group_delay(const SystemParams& params, const SteadyState& steady,
                                    double delta, ProbePort port, SidebandMode mode,
                                    const DelayOptions& options) {
    double h = options.initial_step > 0.0 ? options.initial_step : 1e-6 * params.omega_m;
    DelayEstimate est;
    std::optional<double> coarse = try_group_delay(params, steady, delta, port, h, mode);
    for (int k = 0; k < options.max_halvings; ++k) {
        const double half = 0.5 * h;
        const std::optional<double> fine = try_group_delay(params, steady, delta, port, half, mode);
        if (coarse && fine) {
            est.tau = *fine;
            est.step = half;
            est.relative_change =
                std::abs(*coarse - *fine) / std::max(std::abs(*fine), options.floor);
            if (est.relative_change < options.tolerance) {
                est.converged = true;
                return est;
            }
        }
        coarse = fine;
        h = half;
    }
    return est;
}

}  // namespace nonrecip
