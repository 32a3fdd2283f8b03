#include "nonrecip/validation.hpp"

#include <json.hpp>

#include <atomic>
#include <cmath>
#include <thread>

namespace nonrecip {

namespace {

ValidationPoint check_point(const ModelConfig& model, const SteadyState& steady, double delta,
                            const ValidationOptions& opt) {
    ValidationPoint pt;
    pt.delta = delta;
    try {
        pt.freq_domain = sideband_response(model.system, steady, delta, opt.port, opt.mode).response;
    } catch (const std::exception& e) {
        pt.status = "error";
        pt.message = e.what();
        return pt;
    }
    try {
        pt.time_domain = oracle_response(model.system, model.drive, delta, opt.port, opt.oracle).response;
    } catch (const DivergenceError& e) {
        pt.status = "diverged";
        pt.message = e.what();
        return pt;
    } catch (const UnsettledError& e) {
        pt.status = "unsettled";
        pt.message = e.what();
        return pt;
    } catch (const std::exception& e) {
        pt.status = "error";
        pt.message = e.what();
        return pt;
    }
    pt.rel_err = std::abs(pt.time_domain - pt.freq_domain) / std::abs(pt.freq_domain);
    pt.status = pt.rel_err <= opt.tolerance ? "ok" : "mismatch";
    return pt;
}

nlohmann::json complex_json(cplx z) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return nullptr;
    return nlohmann::json::array({z.real(), z.imag()});
}

}  // namespace

std::vector<ValidationPoint> run_validation(const ModelConfig& model, const ValidationOptions& opt) {
    if (opt.points < 1) throw ConfigError("points", "validation grid needs at least one point");
    double from = opt.from;
    double to = opt.to;
    if (from == to) {
        const double centre = model.drive.delta / model.system.omega_m;
        from = std::min(0.98 * centre, 1.02 * centre);
        to = std::max(0.98 * centre, 1.02 * centre);
    }
    if (!(from < to) && opt.points > 1) throw ConfigError("from", "validation bounds need from < to");

    std::vector<double> deltas(static_cast<std::size_t>(opt.points));
    for (int k = 0; k < opt.points; ++k) {
        const double u = opt.points == 1 ? 0.0 : static_cast<double>(k) / (opt.points - 1);
        deltas[k] = (from + (to - from) * u) * model.system.omega_m;
    }

    const SteadyState steady = solve_steady_state(model.system, model.drive);
    std::vector<ValidationPoint> out(deltas.size());

    unsigned workers = opt.threads > 0 ? static_cast<unsigned>(opt.threads)
                                       : std::max(1u, std::thread::hardware_concurrency());
    workers = std::min<unsigned>(workers, static_cast<unsigned>(deltas.size()));
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next++; i < deltas.size(); i = next++) {
            out[i] = check_point(model, steady, deltas[i], opt);
        }
    };
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    }
    return out;
}

bool validation_passed(const std::vector<ValidationPoint>& points) {
    bool any_ok = false;
    for (const auto& p : points) {
        if (p.status == "mismatch" || p.status == "error") return false;
        any_ok = any_ok || p.status == "ok";
    }
    return any_ok;
}

std::string validation_report_json(const std::vector<ValidationPoint>& points) {
    nlohmann::ordered_json doc = nlohmann::ordered_json::array();
    for (const auto& p : points) {
        nlohmann::ordered_json obj;
        obj["delta"] = p.delta;
        obj["freq_domain"] = complex_json(p.freq_domain);
        obj["time_domain"] = p.status == "ok" || p.status == "mismatch"
                                 ? complex_json(p.time_domain)
                                 : nlohmann::json(nullptr);
        obj["rel_err"] = p.status == "ok" || p.status == "mismatch" ? nlohmann::json(p.rel_err)
                                                                    : nlohmann::json(nullptr);
        obj["status"] = p.status;
        if (!p.message.empty()) obj["message"] = p.message;
        doc.push_back(std::move(obj));
    }
    return doc.dump(2);
}

}  // namespace nonrecip
