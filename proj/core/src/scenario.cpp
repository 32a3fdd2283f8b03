#include "nonrecip/sweep.hpp"

#include <algorithm>
#include <array>

namespace nonrecip {

namespace {

// Counter-clockwise pump held at 100 nW throughout; P_a is set by ratio.
constexpr double kReferencePowerC = 100e-9;

struct Preset {
    std::string_view id;
    Sideband side;
    double power_ratio;      // P_a / P_c
    double kappa_in_factor;  // kappa_in / kappa
    bool delay;
};

// fig2: red sideband, kappa_in = kappa. fig3: blue sideband.
// fig4: blue sideband, P_a = 1e5 P_c, decreasing intrinsic loss.
// fig5: blue sideband, kappa_in = 1e-3 kappa, group delays.
constexpr std::array<Preset, 19> kPresets{{
    {"fig2a", Sideband::Red, 1.0, 1.0, false},
    {"fig2b", Sideband::Red, 1e2, 1.0, false},
    {"fig2c", Sideband::Red, 1e4, 1.0, false},
    {"fig2d", Sideband::Red, 1e5, 1.0, false},
    {"fig3a", Sideband::Blue, 1.0, 1.0, false},
    {"fig3b", Sideband::Blue, 6.0, 1.0, false},
    {"fig3c", Sideband::Blue, 8.5, 1.0, false},
    {"fig3d", Sideband::Blue, 9.5, 1.0, false},
    {"fig3e", Sideband::Blue, 5e2, 1.0, false},
    {"fig3f", Sideband::Blue, 1e4, 1.0, false},
    {"fig4a", Sideband::Blue, 1e5, 1.0, false},
    {"fig4b", Sideband::Blue, 1e5, 1e-1, false},
    {"fig4c", Sideband::Blue, 1e5, 1e-2, false},
    {"fig4d", Sideband::Blue, 1e5, 1e-3, false},
    {"fig5a", Sideband::Blue, 1e4, 1e-3, true},
    {"fig5b", Sideband::Blue, 5e4, 1e-3, true},
    {"fig5c", Sideband::Blue, 1e5, 1e-3, true},
    {"fig5d", Sideband::Blue, 2e5, 1e-3, true},
    {"fig5e", Sideband::Blue, 5e5, 1e-3, true},
}};

}  // namespace

const std::vector<std::string>& scenario_ids() {
    static const std::vector<std::string> ids = [] {
        std::vector<std::string> out;
        for (const Preset& p : kPresets) out.emplace_back(p.id);
        return out;
    }();
    return ids;
}

RawConfig scenario_config(std::string_view id) {
    const auto* preset = std::find_if(kPresets.begin(), kPresets.end(),
                                      [&](const Preset& p) { return p.id == id; });
    if (preset == kPresets.end()) {
        throw ConfigError("scenario", "unknown scenario id '" + std::string(id) + "'");
    }

    RawConfig raw = reference_config();
    raw["kappa_in_hz"] = std::get<double>(raw.at("kappa_hz")) * preset->kappa_in_factor;
    raw["delta_sideband"] = std::string(to_string(preset->side));
    raw["P_c_w"] = kReferencePowerC;
    raw["P_a_w"] = kReferencePowerC * preset->power_ratio;

    // +-2 % of |Delta| around the pump detuning.
    const double centre = preset->side == Sideband::Red ? 1.0 : -1.0;
    raw["sweep.axis"] = std::string("delta");
    raw["sweep.from"] = std::min(0.98 * centre, 1.02 * centre);
    raw["sweep.to"] = std::max(0.98 * centre, 1.02 * centre);
    raw["sweep.points"] = 2001.0;
    raw["sweep.outputs"] = std::string(preset->delay ? "T,phase,tau" : "T,phase");
    return raw;
}

SweepConfig scenario(std::string_view id) { return sweep_from_raw(scenario_config(id)); }

}  // namespace nonrecip
