#pragma once

// Cross-check of the frequency-domain sideband response against direct
// time-domain integration over a detuning grid.

#include "nonrecip/time_domain.hpp"

#include <string>
#include <vector>

namespace nonrecip {

struct ValidationOptions {
    double from = 0.0;  // delta / omega_m; from == to selects +-2 % around Delta
    double to = 0.0;
    int points = 21;
    ProbePort port = ProbePort::A;
    SidebandMode mode = SidebandMode::TwoSideband;
    double tolerance = 1e-3;  // relative
    int threads = 0;
    OracleOptions oracle;
};

struct ValidationPoint {
    double delta = 0.0;  // rad/s
    cplx freq_domain;
    cplx time_domain;
    double rel_err = 0.0;
    // "ok", "mismatch" (rel_err above tolerance), "diverged" or "unsettled"
    // (oracle could not settle; point skipped), "error".
    std::string status;
    std::string message;
};

[[nodiscard]] std::vector<ValidationPoint> run_validation(const ModelConfig& model,
                                                          const ValidationOptions& options = {});

/// True when no point is "mismatch" or "error" and at least one is "ok".
[[nodiscard]] bool validation_passed(const std::vector<ValidationPoint>& points);

/// JSON array of {delta, freq_domain, time_domain, rel_err, status}; complex
/// values are written as [re, im].
[[nodiscard]] std::string validation_report_json(const std::vector<ValidationPoint>& points);

}  // namespace nonrecip
