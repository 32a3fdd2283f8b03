#pragma once

// Physical parameters of the two-mode optomechanical ring cavity and the
// pump configuration driving it. All frequencies and rates are angular
// (rad/s); powers are in W, geometry in SI units.

#include <map>
#include <numbers>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

namespace nonrecip {

namespace constants {
inline constexpr double hbar = 1.054571817e-34;     // J*s
inline constexpr double speed_of_light = 2.99792458e8;  // m/s
inline constexpr double two_pi = 2.0 * std::numbers::pi;
}  // namespace constants

/// Raised for malformed or out-of-range configuration. `key()` names the
/// offending entry.
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string key, const std::string& what)
        : std::runtime_error(what), key_(std::move(key)) {}

    [[nodiscard]] const std::string& key() const noexcept { return key_; }

private:
    std::string key_;
};

/// Raised when a numerical stage cannot produce a trustworthy result
/// (non-convergence, ill-conditioning, divergence).
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct SystemParams {
    double omega_m = 0.0;      // mechanical frequency
    double gamma = 0.0;        // mechanical damping
    double kappa = 0.0;        // external coupling loss
    double kappa_in = 0.0;     // intrinsic loss
    double kappa_t = 0.0;      // kappa + kappa_in
    double g = 0.0;            // single-photon optomechanical coupling
    double J = 0.0;            // clockwise/counter-clockwise coupling
    double mass = 0.0;         // kg
    double length = 0.0;       // m
    double lambda_pump = 0.0;  // m
    double omega_c = 0.0;      // optical angular frequency, 2*pi*c/lambda

    /// Returns a copy with a new intrinsic loss; kappa_t follows.
    [[nodiscard]] SystemParams with_kappa_in(double value) const;
};

enum class Sideband { Red, Blue };

struct DriveSetup {
    double delta = 0.0;    // pump-cavity detuning (signed)
    double power_a = 0.0;  // clockwise pump power, W
    double power_c = 0.0;  // counter-clockwise pump power, W
    double eps_a = 0.0;    // pump amplitudes, 1/s
    double eps_c = 0.0;
};

struct ModelConfig {
    SystemParams system;
    DriveSetup drive;
};

using ConfigValue = std::variant<double, std::string>;

/// Flat key/value configuration as read from a config file. Keys follow the
/// documented list (omega_m_hz, gamma_hz, ...).
using RawConfig = std::map<std::string, ConfigValue, std::less<>>;

/// epsilon = sqrt(2 kappa P / (hbar omega)).
[[nodiscard]] double pump_amplitude(double power, double kappa, double omega);

/// g = (omega_c / l) * sqrt(hbar / (2 m omega_m)): cavity frequency pull per
/// zero-point displacement of the mechanical mode.
[[nodiscard]] double coupling_from_geometry(double mass, double length, double lambda,
                                            double omega_m);

[[nodiscard]] constexpr double detuning_for_sideband(Sideband side, double omega_m) noexcept {
    return side == Sideband::Red ? omega_m : -omega_m;
}

[[nodiscard]] Sideband parse_sideband(std::string_view name);
[[nodiscard]] std::string_view to_string(Sideband side) noexcept;

/// Validates the raw configuration and derives kappa_t, omega_c and g.
/// Throws ConfigError naming the offending key.
[[nodiscard]] SystemParams build_params(const RawConfig& raw);

/// Pump detuning and powers from the raw configuration (delta_sideband or
/// delta_rad_s, P_a_w, P_c_w).
[[nodiscard]] DriveSetup build_drive(const RawConfig& raw, const SystemParams& params);

/// Drive with amplitudes derived from the given powers.
[[nodiscard]] DriveSetup make_drive(const SystemParams& params, double delta, double power_a,
                                    double power_c);

[[nodiscard]] ModelConfig build_model(const RawConfig& raw);

/// Parameter set of the reference device: omega_m = 2pi x 10 MHz,
/// gamma = 2pi x 100 Hz, kappa = kappa_in = 2pi x 1 MHz, J = 2pi x 1 kHz,
/// m = 5 ng, l = 1 mm, lambda = 1064 nm. No pump keys.
[[nodiscard]] RawConfig reference_config();

}  // namespace nonrecip
