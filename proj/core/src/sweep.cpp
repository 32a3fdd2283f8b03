#include "nonrecip/sweep.hpp"

#include <atomic>
#include <cmath>
#include <limits>
#include <optional>
#include <thread>

namespace nonrecip {

namespace {

constexpr double nan = std::numeric_limits<double>::quiet_NaN();

struct PointModel {
    SystemParams params;
    DriveSetup drive;
    double delta = 0.0;
};

double probe_delta(const SweepConfig& c) {
    return c.probe_delta_set ? c.probe_delta : c.base.drive.delta;
}

PointModel model_at(const SweepConfig& c, double x) {
    PointModel m{c.base.system, c.base.drive, probe_delta(c)};
    switch (c.axis) {
        case SweepAxis::Delta:
            m.delta = x * c.base.system.omega_m;
            break;
        case SweepAxis::PowerRatio:
            m.drive = make_drive(m.params, c.base.drive.delta, x * c.base.drive.power_c,
                                 c.base.drive.power_c);
            break;
        case SweepAxis::KappaInFactor:
            m.params = c.base.system.with_kappa_in(x * c.base.system.kappa);
            m.drive = make_drive(m.params, c.base.drive.delta, c.base.drive.power_a,
                                 c.base.drive.power_c);
            break;
    }
    return m;
}

void blank(SpectrumRow& row) {
    row.t_a = row.t_c = cplx(nan, nan);
    row.T_a = row.T_c = nan;
    row.phi_a = row.phi_c = nan;
    row.tau_a = row.tau_c = nan;
}

SpectrumRow evaluate(const SweepConfig& c, double x, const std::optional<SteadyState>& shared) {
    SpectrumRow row;
    row.axis_value = x;
    blank(row);
    const PointModel m = model_at(c, x);
    row.delta_over_omega_m = m.delta / m.params.omega_m;

    SteadyState steady;
    try {
        steady = shared ? *shared : solve_steady_state(m.params, m.drive);
    } catch (const NumericalError&) {
        row.status = "steady_failed";
        return row;
    }

    try {
        row.t_a = transmission_at(m.params, steady, m.delta, ProbePort::A, c.mode);
        row.t_c = transmission_at(m.params, steady, m.delta, ProbePort::C, c.mode);
    } catch (const NumericalError&) {
        row.status = "response_failed";
        return row;
    }
    if (c.outputs.transmission) {
        row.T_a = transmissivity(row.t_a);
        row.T_c = transmissivity(row.t_c);
    }

    if (c.outputs.delay) {
        try {
            const DelayEstimate da =
                converged_group_delay(m.params, steady, m.delta, ProbePort::A, c.mode, c.delay);
            const DelayEstimate dc =
                converged_group_delay(m.params, steady, m.delta, ProbePort::C, c.mode, c.delay);
            row.tau_a = da.tau;
            row.tau_c = dc.tau;
            if (!da.converged || !dc.converged) row.status = "tau_unconverged";
        } catch (const NumericalError&) {
            row.status = "tau_failed";
        }
    }
    return row;
}

void unwrap_phases(std::vector<SpectrumRow>& rows) {
    std::vector<cplx> ta;
    std::vector<cplx> tc;
    std::vector<std::size_t> index;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (std::isfinite(rows[i].t_a.real()) && std::isfinite(rows[i].t_c.real())) {
            ta.push_back(rows[i].t_a);
            tc.push_back(rows[i].t_c);
            index.push_back(i);
        }
    }
    if (index.empty()) return;
    const std::vector<double> pa = phase_spectrum(ta);
    const std::vector<double> pc = phase_spectrum(tc);
    for (std::size_t k = 0; k < index.size(); ++k) {
        rows[index[k]].phi_a = pa[k];
        rows[index[k]].phi_c = pc[k];
    }
}

double raw_number(const RawConfig& raw, std::string_view key, double fallback) {
    auto it = raw.find(key);
    if (it == raw.end()) return fallback;
    if (const double* d = std::get_if<double>(&it->second)) return *d;
    throw ConfigError(std::string(key), "key '" + std::string(key) + "' must be a number");
}

std::optional<std::string> raw_string(const RawConfig& raw, std::string_view key) {
    auto it = raw.find(key);
    if (it == raw.end()) return std::nullopt;
    if (const auto* s = std::get_if<std::string>(&it->second)) return *s;
    throw ConfigError(std::string(key), "key '" + std::string(key) + "' must be a string");
}

}  // namespace

OutputSet parse_outputs(std::string_view list) {
    OutputSet out{false, false, false};
    std::size_t pos = 0;
    while (pos <= list.size()) {
        const std::size_t comma = std::min(list.find(',', pos), list.size());
        const std::string_view item = list.substr(pos, comma - pos);
        if (item == "T") out.transmission = true;
        else if (item == "phase") out.phase = true;
        else if (item == "tau") out.delay = true;
        else throw ConfigError("sweep.outputs", "unknown output '" + std::string(item) + "'");
        pos = comma + 1;
    }
    return out;
}

std::string_view to_string(SweepAxis axis) noexcept {
    switch (axis) {
        case SweepAxis::Delta: return "delta";
        case SweepAxis::PowerRatio: return "P_a_ratio";
        case SweepAxis::KappaInFactor: return "kappa_in_factor";
    }
    return "delta";
}

SweepAxis parse_sweep_axis(std::string_view name) {
    if (name == "delta") return SweepAxis::Delta;
    if (name == "P_a_ratio") return SweepAxis::PowerRatio;
    if (name == "kappa_in_factor") return SweepAxis::KappaInFactor;
    throw ConfigError("sweep.axis", "unknown sweep axis '" + std::string(name) + "'");
}

std::string_view to_string(OutputFormat format) noexcept {
    return format == OutputFormat::Csv ? "csv" : "json";
}

OutputFormat parse_output_format(std::string_view name) {
    if (name == "csv") return OutputFormat::Csv;
    if (name == "json") return OutputFormat::Json;
    throw ConfigError("format", "unknown output format '" + std::string(name) + "'");
}

void validate_sweep(const SweepConfig& c) {
    if (!(c.from < c.to)) throw ConfigError("sweep.from", "sweep bounds must satisfy from < to");
    if (c.points < 2) throw ConfigError("sweep.points", "sweep needs at least 2 points");
    if (c.spacing == Spacing::Log && !(c.from > 0.0)) {
        throw ConfigError("sweep.spacing", "log spacing needs positive bounds");
    }
    if (c.axis != SweepAxis::Delta && !(c.from >= 0.0)) {
        throw ConfigError("sweep.from", "power ratio and kappa_in factor must be >= 0");
    }
}

std::vector<double> axis_points(const SweepConfig& c) {
    validate_sweep(c);
    std::vector<double> xs(static_cast<std::size_t>(c.points));
    const double last = c.points - 1;
    for (int k = 0; k < c.points; ++k) {
        const double u = k / last;
        xs[k] = c.spacing == Spacing::Linear
                    ? c.from + (c.to - c.from) * u
                    : std::exp(std::log(c.from) + (std::log(c.to) - std::log(c.from)) * u);
    }
    xs.front() = c.from;
    xs.back() = c.to;
    return xs;
}

SweepConfig sweep_from_raw(const RawConfig& raw) {
    SweepConfig c;
    c.base = build_model(raw);
    if (auto axis = raw_string(raw, "sweep.axis")) c.axis = parse_sweep_axis(*axis);
    if (c.axis == SweepAxis::Delta) {
        // Default window: +-2 % around the pump detuning.
        const double centre = c.base.drive.delta / c.base.system.omega_m;
        const double lo = centre - 0.02 * std::abs(centre);
        const double hi = centre + 0.02 * std::abs(centre);
        c.from = centre != 0.0 ? lo : -0.02;
        c.to = centre != 0.0 ? hi : 0.02;
    } else {
        c.from = 0.0;
        c.to = 1.0;
    }
    c.from = raw_number(raw, "sweep.from", c.from);
    c.to = raw_number(raw, "sweep.to", c.to);
    c.points = static_cast<int>(raw_number(raw, "sweep.points", c.points));
    if (auto spacing = raw_string(raw, "sweep.spacing")) {
        if (*spacing == "linear") c.spacing = Spacing::Linear;
        else if (*spacing == "log") c.spacing = Spacing::Log;
        else throw ConfigError("sweep.spacing", "spacing must be 'linear' or 'log'");
    }
    if (raw.find("sweep.probe_delta_over_omega_m") != raw.end()) {
        c.probe_delta = raw_number(raw, "sweep.probe_delta_over_omega_m", 0.0) * c.base.system.omega_m;
        c.probe_delta_set = true;
    }
    if (auto outputs = raw_string(raw, "sweep.outputs")) c.outputs = parse_outputs(*outputs);
    if (auto mode = raw_string(raw, "sideband_mode")) c.mode = parse_sideband_mode(*mode);
    return c;
}

std::vector<SpectrumRow> run_sweep(const SweepConfig& c) {
    const std::vector<double> xs = axis_points(c);
    std::vector<SpectrumRow> rows(xs.size());

    std::optional<SteadyState> shared;
    if (c.axis == SweepAxis::Delta) {
        try {
            shared = solve_steady_state(c.base.system, c.base.drive);
        } catch (const NumericalError&) {
            for (std::size_t i = 0; i < xs.size(); ++i) {
                rows[i].axis_value = xs[i];
                rows[i].delta_over_omega_m = xs[i];
                blank(rows[i]);
                rows[i].status = "steady_failed";
            }
            return rows;
        }
    }

    unsigned workers = c.threads > 0 ? static_cast<unsigned>(c.threads)
                                     : std::max(1u, std::thread::hardware_concurrency());
    workers = std::min<unsigned>(workers, static_cast<unsigned>(xs.size()));

    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next++; i < xs.size(); i = next++) {
            try {
                rows[i] = evaluate(c, xs[i], shared);
            } catch (const std::exception&) {
                rows[i].axis_value = xs[i];
                blank(rows[i]);
                rows[i].status = "error";
            }
        }
    };
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    }

    if (c.outputs.phase) {
        unwrap_phases(rows);
    } else {
        for (auto& r : rows) r.phi_a = r.phi_c = nan;
    }
    return rows;
}

}  // namespace nonrecip
