#include "nonrecip/emit.hpp"

#include <json.hpp>

#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <stdexcept>

namespace nonrecip {

namespace {

constexpr const char* kColumns[] = {"delta_over_omega_m", "T_a", "T_c", "phi_a_rad",
                                    "phi_c_rad", "tau_a_s", "tau_c_s"};

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

nlohmann::json json_number(double v) {
    if (!std::isfinite(v)) return nullptr;
    return v;
}

double from_json(const nlohmann::json& v) {
    return v.is_null() ? std::numeric_limits<double>::quiet_NaN() : v.get<double>();
}

std::array<double, 7> values(const SpectrumRow& r) {
    return {r.delta_over_omega_m, r.T_a, r.T_c, r.phi_a, r.phi_c, r.tau_a, r.tau_c};
}

}  // namespace

std::string csv_header(SweepAxis axis) {
    std::string header;
    if (axis != SweepAxis::Delta) {
        header += to_string(axis);
        header += ',';
    }
    for (const char* col : kColumns) {
        header += col;
        header += ',';
    }
    header += "status";
    return header;
}

void write_rows(std::ostream& out, const std::vector<SpectrumRow>& rows, OutputFormat format,
                SweepAxis axis) {
    const bool extra = axis != SweepAxis::Delta;
    if (format == OutputFormat::Csv) {
        out << csv_header(axis) << '\n';
        for (const SpectrumRow& r : rows) {
            if (extra) out << format_double(r.axis_value) << ',';
            for (double v : values(r)) out << format_double(v) << ',';
            out << r.status << '\n';
        }
        return;
    }

    nlohmann::ordered_json doc = nlohmann::ordered_json::array();
    for (const SpectrumRow& r : rows) {
        nlohmann::ordered_json obj;
        if (extra) obj[std::string(to_string(axis))] = json_number(r.axis_value);
        const auto v = values(r);
        for (std::size_t i = 0; i < v.size(); ++i) obj[kColumns[i]] = json_number(v[i]);
        obj["status"] = r.status;
        doc.push_back(std::move(obj));
    }
    out << doc.dump(2) << '\n';
}

void emit(const std::vector<SpectrumRow>& rows, OutputFormat format, const std::string& path,
          SweepAxis axis) {
    if (rows.empty()) throw std::runtime_error("emit: no rows to write");
    if (path.empty() || path == "-") {
        write_rows(std::cout, rows, format, axis);
        std::cout.flush();
        return;
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    write_rows(out, rows, format, axis);
    out.flush();
    if (!out) throw std::runtime_error("failed writing '" + path + "'");
}

std::vector<SpectrumRow> parse_rows_json(const std::string& text, SweepAxis axis) {
    const nlohmann::json doc = nlohmann::json::parse(text);
    if (!doc.is_array()) throw std::runtime_error("row document must be a JSON array");
    std::vector<SpectrumRow> rows;
    rows.reserve(doc.size());
    for (const auto& obj : doc) {
        SpectrumRow r;
        r.delta_over_omega_m = from_json(obj.at("delta_over_omega_m"));
        r.axis_value = axis == SweepAxis::Delta ? r.delta_over_omega_m
                                                : from_json(obj.at(std::string(to_string(axis))));
        r.T_a = from_json(obj.at("T_a"));
        r.T_c = from_json(obj.at("T_c"));
        r.phi_a = from_json(obj.at("phi_a_rad"));
        r.phi_c = from_json(obj.at("phi_c_rad"));
        r.tau_a = from_json(obj.at("tau_a_s"));
        r.tau_c = from_json(obj.at("tau_c_s"));
        r.status = obj.at("status").get<std::string>();
        const double nan = std::numeric_limits<double>::quiet_NaN();
        r.t_a = r.t_c = cplx(nan, nan);
        rows.push_back(std::move(r));
    }
    return rows;
}

}  // namespace nonrecip
