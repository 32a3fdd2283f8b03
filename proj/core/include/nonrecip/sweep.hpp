#pragma once

#include "nonrecip/observables.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace nonrecip {

/// Swept variable.
///  - Delta: probe detuning, bounds in units of omega_m.
///  - PowerRatio: P_a / P_c with P_c held fixed.
///  - KappaInFactor: kappa_in / kappa.
enum class SweepAxis { Delta, PowerRatio, KappaInFactor };
enum class Spacing { Linear, Log };
enum class OutputFormat { Csv, Json };

[[nodiscard]] std::string_view to_string(SweepAxis axis) noexcept;
[[nodiscard]] SweepAxis parse_sweep_axis(std::string_view name);
[[nodiscard]] std::string_view to_string(OutputFormat format) noexcept;
[[nodiscard]] OutputFormat parse_output_format(std::string_view name);

struct OutputSet {
    bool transmission = true;
    bool phase = true;
    bool delay = false;
};

/// Comma-separated subset of {T, phase, tau}.
[[nodiscard]] OutputSet parse_outputs(std::string_view list);

struct SweepConfig {
    ModelConfig base;
    SweepAxis axis = SweepAxis::Delta;
    double from = 0.98;
    double to = 1.02;
    int points = 2001;
    Spacing spacing = Spacing::Linear;
    OutputSet outputs;
    SidebandMode mode = SidebandMode::TwoSideband;
    double probe_delta = 0.0;  // rad/s; fixed probe detuning for non-delta axes
    bool probe_delta_set = false;
    DelayOptions delay;
    int threads = 0;  // 0: hardware concurrency
    std::string out_path;  // empty or "-": stdout
    OutputFormat format = OutputFormat::Csv;
};

/// One sweep point. Columns that were not requested, or could not be
/// computed, hold NaN; `status` says why.
struct SpectrumRow {
    double axis_value = 0.0;
    double delta_over_omega_m = 0.0;
    cplx t_a;
    cplx t_c;
    double T_a = 0.0;
    double T_c = 0.0;
    double phi_a = 0.0;
    double phi_c = 0.0;
    double tau_a = 0.0;
    double tau_c = 0.0;
    std::string status = "ok";
};

/// Throws ConfigError unless from < to, points >= 2 and log spacing has
/// positive bounds.
void validate_sweep(const SweepConfig& config);

/// Axis sample positions in ascending order.
[[nodiscard]] std::vector<double> axis_points(const SweepConfig& config);

/// Reads a model from the raw configuration plus optional "sweep.*" keys
/// (axis, from, to, points, spacing, probe_delta_over_omega_m, outputs) and
/// "sideband_mode". `sweep.outputs` is a comma-separated subset of
/// {T, phase, tau}.
[[nodiscard]] SweepConfig sweep_from_raw(const RawConfig& raw);

/// Evaluates every axis point. Per-point failures are recorded in the row's
/// status; the sweep itself only throws for an invalid configuration. Output
/// is independent of the thread count.
[[nodiscard]] std::vector<SpectrumRow> run_sweep(const SweepConfig& config);

/// Preset identifiers: fig2a..fig2d, fig3a..fig3f,
/// fig4a..fig4d, fig5a..fig5e.
[[nodiscard]] const std::vector<std::string>& scenario_ids();

/// Raw configuration of a preset: reference device, P_c = 100 nW,
/// P_a = ratio * P_c, Delta = +omega_m (fig2) or -omega_m (fig3-5), and a
/// 2001-point delta window spanning [0.98, 1.02] |Delta| on the pump side.
/// Throws ConfigError for an unknown id.
[[nodiscard]] RawConfig scenario_config(std::string_view id);

/// sweep_from_raw(scenario_config(id)).
[[nodiscard]] SweepConfig scenario(std::string_view id);

}  // namespace nonrecip
