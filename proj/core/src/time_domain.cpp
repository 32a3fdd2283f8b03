#include "nonrecip/time_domain.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace nonrecip {

namespace {

constexpr cplx I{0.0, 1.0};
using constants::two_pi;

struct State {
    cplx a;
    cplx c;
    cplx b;
};

State operator+(const State& x, const State& y) { return {x.a + y.a, x.c + y.c, x.b + y.b}; }
State operator*(double s, const State& x) { return {s * x.a, s * x.c, s * x.b}; }

// Right-hand side of the mean-field equations; `probe_a` / `probe_c` are the
// instantaneous probe terms eps_s e^{-i delta t} for each port.
struct MeanField {
    cplx optical_decay;  // i Delta + kappa_t
    cplx mech_decay;     // i omega_m + gamma
    cplx ig;
    cplx iJ;
    double eps_a;
    double eps_c;

    [[nodiscard]] State operator()(const State& s, cplx probe_a, cplx probe_c) const {
        const double q = 2.0 * s.b.real();
        State d;
        d.a = -optical_decay * s.a - ig * q * s.a - iJ * s.c + eps_a + probe_a;
        d.c = -optical_decay * s.c - ig * q * s.c - iJ * s.a + eps_c + probe_c;
        d.b = -mech_decay * s.b - ig * (std::norm(s.a) + std::norm(s.c));
        return d;
    }
};

bool finite(const State& s) {
    return std::isfinite(s.a.real()) && std::isfinite(s.a.imag()) && std::isfinite(s.c.real()) &&
           std::isfinite(s.c.imag()) && std::isfinite(s.b.real()) && std::isfinite(s.b.imag());
}

bool whole(double x, double tol = 1e-6) { return std::abs(x - std::round(x)) <= tol; }

}  // namespace

std::span<const cplx> Trajectory::field(Field f) const noexcept {
    switch (f) {
        case Field::A: return A;
        case Field::C: return C;
        case Field::B: return B;
    }
    return A;
}

Trajectory integrate_mean_field(const SystemParams& p, const DriveSetup& drive,
                                const std::optional<ProbeDrive>& probe, double t_final, double dt,
                                const RecordOptions& record) {
    const double mech_period = two_pi / p.omega_m;
    if (!(dt > 0.0) || dt > mech_period / 50.0 * (1.0 + 1e-12)) {
        throw std::invalid_argument("integrate_mean_field: dt must be in (0, (2 pi/omega_m)/50]");
    }
    if (t_final < 10.0 / p.gamma * (1.0 - 1e-12)) {
        throw std::invalid_argument("integrate_mean_field: t_final must be >= 10/gamma");
    }
    if (record.stride < 1) throw std::invalid_argument("integrate_mean_field: stride must be >= 1");

    const MeanField rhs{I * drive.delta + p.kappa_t, I * p.omega_m + p.gamma, I * p.g, I * p.J,
                        drive.eps_a, drive.eps_c};

    const double eps_s = probe ? probe->amplitude : 0.0;
    const double probe_delta = probe ? probe->delta : 0.0;
    const bool on_a = probe && probe->port == ProbePort::A;

    // Divergence bounds: the optical block bounds |A|, |C| at a fixed point by
    // sqrt(eps_a^2 + eps_c^2 + eps_s^2) / kappa_t.
    const double optical_scale =
        std::max(std::sqrt(drive.eps_a * drive.eps_a + drive.eps_c * drive.eps_c + eps_s * eps_s) /
                     p.kappa_t,
                 1.0);
    const double mech_scale =
        std::max(p.g * optical_scale * optical_scale / std::abs(I * p.omega_m + p.gamma), 1.0);
    const double optical_limit = 1e3 * optical_scale;
    const double mech_limit = 1e3 * mech_scale;

    const auto steps = static_cast<long long>(std::ceil(t_final / dt - 1e-9));
    const double span = record.span > 0.0 ? record.span : 2.0 / p.gamma;
    const auto record_steps =
        std::min(steps, static_cast<long long>(std::floor(span / dt + 1e-9)));
    const long long record_from = steps - (record_steps / record.stride) * record.stride;

    Trajectory traj;
    traj.dt = dt;
    traj.sample_interval = dt * record.stride;
    const auto n_samples = static_cast<std::size_t>((steps - record_from) / record.stride + 1);
    traj.times.reserve(n_samples);
    traj.A.reserve(n_samples);
    traj.C.reserve(n_samples);
    traj.B.reserve(n_samples);

    auto store = [&](long long n, const State& s) {
        traj.times.push_back(static_cast<double>(n) * dt);
        traj.A.push_back(s.a);
        traj.C.push_back(s.c);
        traj.B.push_back(s.b);
    };

    // Probe phasor eps_s e^{-i delta t}, advanced by half steps and re-anchored
    // periodically to keep rounding from accumulating.
    const cplx half_turn = std::polar(1.0, -probe_delta * 0.5 * dt);
    auto phasor_at = [&](long long n) { return eps_s * std::polar(1.0, -probe_delta * n * dt); };

    State s{};
    cplx phasor = phasor_at(0);
    for (long long n = 0; n < steps; ++n) {
        if (n >= record_from && (n - record_from) % record.stride == 0) store(n, s);
        if ((n & 1023) == 0) {
            phasor = phasor_at(n);
            if (!finite(s) || std::abs(s.a) > optical_limit || std::abs(s.c) > optical_limit ||
                std::abs(s.b) > mech_limit) {
                std::ostringstream msg;
                msg << "mean-field integration diverged at t = " << n * dt << " s (|A| = "
                    << std::abs(s.a) << ", |C| = " << std::abs(s.c) << ", |B| = " << std::abs(s.b)
                    << ")";
                throw DivergenceError(msg.str());
            }
        }
        const cplx mid_phasor = phasor * half_turn;
        const cplx end_phasor = mid_phasor * half_turn;
        auto eval = [&](const State& x, cplx ph) {
            return on_a ? rhs(x, ph, 0.0) : rhs(x, 0.0, ph);
        };
        const State k1 = eval(s, phasor);
        const State k2 = eval(s + (0.5 * dt) * k1, mid_phasor);
        const State k3 = eval(s + (0.5 * dt) * k2, mid_phasor);
        const State k4 = eval(s + dt * k3, end_phasor);
        s = s + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        phasor = end_phasor;
    }
    if (!finite(s) || std::abs(s.a) > optical_limit || std::abs(s.c) > optical_limit ||
        std::abs(s.b) > mech_limit) {
        throw DivergenceError("mean-field integration diverged by the final step");
    }
    store(steps, s);
    return traj;
}

cplx demodulate(std::span<const cplx> samples, double t0, double sample_interval, double delta,
                double window) {
    if (!(sample_interval > 0.0) || !(window > 0.0)) {
        throw std::invalid_argument("demodulate: window and sample interval must be > 0");
    }
    const double intervals = window / sample_interval;
    if (!whole(intervals)) {
        throw std::invalid_argument("demodulate: window is not a whole number of samples");
    }
    if (!whole(window * std::abs(delta) / two_pi)) {
        throw std::invalid_argument("demodulate: window is not a whole number of probe periods");
    }
    const auto n = static_cast<std::size_t>(std::llround(intervals));
    if (samples.empty() || n + 1 > samples.size()) {
        throw std::invalid_argument("demodulate: window longer than the trajectory");
    }

    const std::size_t first = samples.size() - 1 - n;
    auto weight = [&](std::size_t k) { return (k == first || k == samples.size() - 1) ? 0.5 : 1.0; };

    cplx dc{};
    for (std::size_t k = first; k < samples.size(); ++k) dc += weight(k) * samples[k];
    dc /= static_cast<double>(n);

    cplx acc{};
    for (std::size_t k = first; k < samples.size(); ++k) {
        const double t = t0 + static_cast<double>(k) * sample_interval;
        acc += weight(k) * (samples[k] - dc) * std::polar(1.0, delta * t);
    }
    return acc / static_cast<double>(n);
}

cplx demodulate(const Trajectory& traj, Field field, double delta, double window,
                double settle_tolerance) {
    const std::span<const cplx> x = traj.field(field);
    if (x.empty()) throw std::invalid_argument("demodulate: empty trajectory");
    const double t0 = traj.times.front();
    const double span = traj.times.back() - t0;
    if (window > span * (1.0 + 1e-12)) {
        throw std::invalid_argument("demodulate: window longer than the trajectory");
    }

    const auto n = static_cast<std::size_t>(std::llround(window / traj.sample_interval));
    if (2 * n + 1 <= x.size()) {
        auto mean_abs = [&](std::size_t from) {
            double acc = 0.0;
            for (std::size_t k = from; k < from + n; ++k) acc += std::abs(x[k]);
            return acc / static_cast<double>(n);
        };
        const double last = mean_abs(x.size() - 1 - n);
        const double before = mean_abs(x.size() - 1 - 2 * n);
        const double drift = std::abs(last - before) / std::max(last, 1e-300);
        if (last > 0.0 && drift >= settle_tolerance) {
            std::ostringstream msg;
            msg << "trajectory not settled: mean |X| drifted by " << drift
                << " between the last two windows";
            throw UnsettledError(msg.str());
        }
    }
    return demodulate(x, t0, traj.sample_interval, delta, window);
}

OracleResult oracle_response(const SystemParams& p, const DriveSetup& drive, double delta,
                             ProbePort port, const OracleOptions& options) {
    if (delta == 0.0) throw std::invalid_argument("oracle_response: probe detuning must be nonzero");
    const double probe_period = two_pi / std::abs(delta);
    const double samples_per_period = options.samples_per_probe_period;
    const double min_steps = options.steps_per_period * p.omega_m / std::abs(delta);
    const int per_period =
        options.samples_per_probe_period *
        static_cast<int>(std::ceil(std::max(min_steps, samples_per_period) / samples_per_period - 1e-12));
    const int stride = per_period / options.samples_per_probe_period;
    const double dt = probe_period / per_period;

    const double t_final = options.t_final > 0.0 ? options.t_final : 10.0 / p.gamma;
    const double record_span = 2.0 / p.gamma;
    const auto periods = static_cast<long long>(std::floor(0.5 * record_span / probe_period));
    if (periods < 1) throw std::invalid_argument("oracle_response: record too short for one period");
    const double window = static_cast<double>(periods) * probe_period;

    OracleResult out;
    out.probe_amplitude = options.probe_scale * std::max({drive.eps_a, drive.eps_c, p.kappa_t});
    out.dt = dt;
    out.window = window;

    const ProbeDrive probe{port, out.probe_amplitude, delta};
    // Record two windows plus a margin so the settling check has data.
    const Trajectory traj = integrate_mean_field(
        p, drive, probe, t_final, dt, RecordOptions{2.0 * window + 4.0 * probe_period, stride});
    const cplx amplitude = demodulate(traj, port == ProbePort::A ? Field::A : Field::C, delta,
                                      window, options.settle_tolerance);
    out.response = amplitude / out.probe_amplitude;
    return out;
}

}  // namespace nonrecip
