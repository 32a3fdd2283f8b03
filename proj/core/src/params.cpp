#include "nonrecip/params.hpp"

#include <cmath>

namespace nonrecip {

namespace {

using constants::two_pi;

const ConfigValue* find(const RawConfig& raw, std::string_view key) {
    auto it = raw.find(key);
    return it == raw.end() ? nullptr : &it->second;
}

double number(const RawConfig& raw, std::string_view key) {
    const ConfigValue* value = find(raw, key);
    if (value == nullptr) {
        throw ConfigError(std::string(key), "missing required key '" + std::string(key) + "'");
    }
    if (const double* d = std::get_if<double>(value)) {
        if (!std::isfinite(*d)) {
            throw ConfigError(std::string(key), "key '" + std::string(key) + "' is not finite");
        }
        return *d;
    }
    throw ConfigError(std::string(key), "key '" + std::string(key) + "' must be a number");
}

double positive(const RawConfig& raw, std::string_view key) {
    const double v = number(raw, key);
    if (!(v > 0.0)) {
        throw ConfigError(std::string(key), "key '" + std::string(key) + "' must be > 0");
    }
    return v;
}

double nonnegative(const RawConfig& raw, std::string_view key) {
    const double v = number(raw, key);
    if (v < 0.0) {
        throw ConfigError(std::string(key), "key '" + std::string(key) + "' must be >= 0");
    }
    return v;
}

}  // namespace

SystemParams SystemParams::with_kappa_in(double value) const {
    SystemParams out = *this;
    out.kappa_in = value;
    out.kappa_t = value + kappa;
    return out;
}

double pump_amplitude(double power, double kappa, double omega) {
    if (power < 0.0) throw std::invalid_argument("pump power must be >= 0");
    if (!(kappa > 0.0) || !(omega > 0.0)) {
        throw std::invalid_argument("pump_amplitude: kappa and omega must be > 0");
    }
    return std::sqrt(2.0 * kappa * power / (constants::hbar * omega));
}

double coupling_from_geometry(double mass, double length, double lambda, double omega_m) {
    if (!(mass > 0.0) || !(length > 0.0) || !(lambda > 0.0) || !(omega_m > 0.0)) {
        throw std::invalid_argument("coupling_from_geometry: arguments must be > 0");
    }
    const double omega_c = two_pi * constants::speed_of_light / lambda;
    const double x_zpf = std::sqrt(constants::hbar / (2.0 * mass * omega_m));
    return omega_c / length * x_zpf;
}

Sideband parse_sideband(std::string_view name) {
    if (name == "red") return Sideband::Red;
    if (name == "blue") return Sideband::Blue;
    throw ConfigError("delta_sideband", "delta_sideband must be 'red' or 'blue', got '" +
                                            std::string(name) + "'");
}

std::string_view to_string(Sideband side) noexcept {
    return side == Sideband::Red ? "red" : "blue";
}

SystemParams build_params(const RawConfig& raw) {
    SystemParams p;
    p.omega_m = two_pi * positive(raw, "omega_m_hz");
    p.gamma = two_pi * positive(raw, "gamma_hz");
    p.kappa = two_pi * positive(raw, "kappa_hz");
    p.kappa_in = two_pi * nonnegative(raw, "kappa_in_hz");
    p.kappa_t = p.kappa_in + p.kappa;
    p.J = two_pi * nonnegative(raw, "J_hz");
    p.lambda_pump = positive(raw, "lambda_m");
    p.omega_c = two_pi * constants::speed_of_light / p.lambda_pump;

    if (find(raw, "g_rad_s") != nullptr) {
        p.g = nonnegative(raw, "g_rad_s");
        // Geometry is informational once g is pinned.
        if (find(raw, "mass_kg") != nullptr) p.mass = positive(raw, "mass_kg");
        if (find(raw, "length_m") != nullptr) p.length = positive(raw, "length_m");
    } else {
        p.mass = positive(raw, "mass_kg");
        p.length = positive(raw, "length_m");
        p.g = coupling_from_geometry(p.mass, p.length, p.lambda_pump, p.omega_m);
    }
    return p;
}

DriveSetup make_drive(const SystemParams& params, double delta, double power_a, double power_c) {
    DriveSetup d;
    d.delta = delta;
    d.power_a = power_a;
    d.power_c = power_c;
    d.eps_a = pump_amplitude(power_a, params.kappa, params.omega_c);
    d.eps_c = pump_amplitude(power_c, params.kappa, params.omega_c);
    return d;
}

DriveSetup build_drive(const RawConfig& raw, const SystemParams& params) {
    double delta = 0.0;
    const ConfigValue* side = find(raw, "delta_sideband");
    const ConfigValue* explicit_delta = find(raw, "delta_rad_s");
    if (side != nullptr && explicit_delta != nullptr) {
        throw ConfigError("delta_sideband", "give either delta_sideband or delta_rad_s, not both");
    }
    if (side != nullptr) {
        const auto* name = std::get_if<std::string>(side);
        if (name == nullptr) {
            throw ConfigError("delta_sideband", "delta_sideband must be 'red' or 'blue'");
        }
        delta = detuning_for_sideband(parse_sideband(*name), params.omega_m);
    } else if (explicit_delta != nullptr) {
        delta = number(raw, "delta_rad_s");
    } else {
        throw ConfigError("delta_sideband", "missing required key 'delta_sideband' (or 'delta_rad_s')");
    }
    return make_drive(params, delta, nonnegative(raw, "P_a_w"), nonnegative(raw, "P_c_w"));
}

ModelConfig build_model(const RawConfig& raw) {
    ModelConfig m;
    m.system = build_params(raw);
    m.drive = build_drive(raw, m.system);
    return m;
}

RawConfig reference_config() {
    return RawConfig{
        {"omega_m_hz", 1.0e7},
        {"gamma_hz", 1.0e2},
        {"kappa_hz", 1.0e6},
        {"kappa_in_hz", 1.0e6},
        {"J_hz", 1.0e3},
        {"mass_kg", 5.0e-12},
        {"length_m", 1.0e-3},
        {"lambda_m", 1.064e-6},
    };
}

}  // namespace nonrecip
