// nrsim: transmission spectra, group delays and validation runs for the
// two-mode optomechanical ring cavity.
//
//   nrsim spectrum --config F [--from --to --points --sideband-mode --threads --format --out]
//   nrsim delay    --config F [same flags]
//   nrsim steady   --config F
//   nrsim scenario <id> [--out --format --threads ...] [--print-config]
//   nrsim validate --config F [--from --to --points --port --threads --out]
//
// Exit status: 0 success, 1 configuration error, 2 numerical failure.

#include "nonrecip/config.hpp"
#include "nonrecip/emit.hpp"
#include "nonrecip/validation.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>

namespace {

using namespace nonrecip;

constexpr int kConfigError = 1;
constexpr int kNumericalError = 2;

struct SweepFlags {
    std::optional<double> from;
    std::optional<double> to;
    std::optional<int> points;
    std::string mode;
    int threads = 0;
    std::string format = "csv";
    std::string out = "-";
};

void add_sweep_flags(CLI::App* cmd, SweepFlags& f) {
    cmd->add_option("--from", f.from, "lower axis bound (delta in units of omega_m)");
    cmd->add_option("--to", f.to, "upper axis bound");
    cmd->add_option("--points", f.points, "number of sweep points (>= 2)");
    cmd->add_option("--sideband-mode", f.mode, "lower-sideband closure: two | literal")
        ->check(CLI::IsMember({"two", "literal"}));
    cmd->add_option("--threads", f.threads, "worker threads (0: all cores)");
    cmd->add_option("--format", f.format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--out", f.out, "output path ('-' for stdout)");
}

void apply(const SweepFlags& f, SweepConfig& c) {
    if (f.from) c.from = *f.from;
    if (f.to) c.to = *f.to;
    if (f.points) c.points = *f.points;
    if (!f.mode.empty()) c.mode = parse_sideband_mode(f.mode);
    c.threads = f.threads;
    c.format = parse_output_format(f.format);
    c.out_path = f.out;
}

int run_and_emit(const SweepConfig& c) {
    validate_sweep(c);
    const std::vector<SpectrumRow> rows = run_sweep(c);
    emit(rows, c.format, c.out_path, c.axis);
    const bool any_ok = std::any_of(rows.begin(), rows.end(),
                                    [](const SpectrumRow& r) { return r.status == "ok"; });
    if (!any_ok) {
        std::cerr << "nrsim: every sweep point failed\n";
        return kNumericalError;
    }
    return 0;
}

nlohmann::json complex_json(cplx z) { return nlohmann::json::array({z.real(), z.imag()}); }

int run_steady(const std::string& path) {
    const ModelConfig model = build_model(load_config_file(path));
    const SteadyState s = solve_steady_state(model.system, model.drive);
    nlohmann::ordered_json doc;
    doc["A0"] = complex_json(s.A0);
    doc["C0"] = complex_json(s.C0);
    doc["B0"] = complex_json(s.B0);
    doc["N"] = s.photons;
    doc["delta_eff"] = s.delta_eff;
    doc["residual"] = s.residual;
    doc["g"] = model.system.g;
    doc["used_bisection"] = s.used_bisection;
    doc["other_roots"] = s.other_roots;
    std::cout << doc.dump(2) << '\n';
    return 0;
}

void write_text(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text << '\n';
        return;
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    out << text << '\n';
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Nonreciprocal transmission and group delay of a two-mode optomechanical ring"};
    app.require_subcommand(1);

    std::string config_path;
    SweepFlags sweep_flags;

    auto* spectrum = app.add_subcommand("spectrum", "transmission spectrum over a sweep axis");
    spectrum->add_option("--config", config_path, "JSON configuration file")->required();
    add_sweep_flags(spectrum, sweep_flags);

    auto* delay = app.add_subcommand("delay", "spectrum including group delays");
    delay->add_option("--config", config_path, "JSON configuration file")->required();
    add_sweep_flags(delay, sweep_flags);

    auto* steady = app.add_subcommand("steady", "steady-state operating point as JSON");
    steady->add_option("--config", config_path, "JSON configuration file")->required();

    std::string scenario_id;
    bool print_config = false;
    bool list = false;
    auto* scen = app.add_subcommand("scenario", "run a named parameter preset");
    scen->add_option("id", scenario_id, "fig2a..fig2d, fig3a..fig3f, fig4a..fig4d, fig5a..fig5e");
    scen->add_flag("--print-config", print_config, "print the preset as a config file and exit");
    scen->add_flag("--list", list, "list preset ids");
    add_sweep_flags(scen, sweep_flags);

    std::optional<double> v_from;
    std::optional<double> v_to;
    int v_points = 21;
    int v_threads = 0;
    std::string v_port = "a";
    std::string v_mode;
    std::string v_out = "-";
    auto* validate = app.add_subcommand("validate", "compare sideband response with time-domain integration");
    validate->add_option("--config", config_path, "JSON configuration file")->required();
    validate->add_option("--from", v_from, "lower delta bound in units of omega_m");
    validate->add_option("--to", v_to, "upper delta bound in units of omega_m");
    validate->add_option("--points", v_points, "grid size");
    validate->add_option("--port", v_port, "probed port: a | c")->check(CLI::IsMember({"a", "c"}));
    validate->add_option("--sideband-mode", v_mode, "two | literal")
        ->check(CLI::IsMember({"two", "literal"}));
    validate->add_option("--threads", v_threads, "worker threads (0: all cores)");
    validate->add_option("--out", v_out, "report path ('-' for stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kConfigError;
    }

    try {
        if (*spectrum || *delay) {
            SweepConfig c = sweep_from_raw(load_config_file(config_path));
            apply(sweep_flags, c);
            if (*delay) c.outputs.delay = true;
            return run_and_emit(c);
        }
        if (*steady) return run_steady(config_path);
        if (*scen) {
            if (list) {
                for (const auto& id : scenario_ids()) std::cout << id << '\n';
                return 0;
            }
            if (scenario_id.empty()) throw ConfigError("scenario", "scenario id required");
            if (print_config) {
                write_text(sweep_flags.out, dump_config(scenario_config(scenario_id)));
                return 0;
            }
            SweepConfig c = scenario(scenario_id);
            apply(sweep_flags, c);
            return run_and_emit(c);
        }
        if (*validate) {
            const RawConfig raw = load_config_file(config_path);
            const ModelConfig model = build_model(raw);
            ValidationOptions opt;
            if (v_from) opt.from = *v_from;
            if (v_to) opt.to = *v_to;
            opt.points = v_points;
            opt.port = v_port == "a" ? ProbePort::A : ProbePort::C;
            if (!v_mode.empty()) opt.mode = parse_sideband_mode(v_mode);
            opt.threads = v_threads;
            const auto points = run_validation(model, opt);
            write_text(v_out, validation_report_json(points));
            return validation_passed(points) ? 0 : kNumericalError;
        }
    } catch (const ConfigError& e) {
        std::cerr << "nrsim: config error: " << e.what() << '\n';
        return kConfigError;
    } catch (const NumericalError& e) {
        std::cerr << "nrsim: numerical failure: " << e.what() << '\n';
        return kNumericalError;
    } catch (const std::exception& e) {
        std::cerr << "nrsim: " << e.what() << '\n';
        return kConfigError;
    }
    return 0;
}
