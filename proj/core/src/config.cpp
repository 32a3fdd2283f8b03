#include "nonrecip/config.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace nonrecip {

namespace {

void insert_scalar(RawConfig& out, const std::string& key, const nlohmann::json& value) {
    if (value.is_number()) {
        out[key] = value.get<double>();
    } else if (value.is_string()) {
        out[key] = value.get<std::string>();
    } else if (value.is_boolean()) {
        out[key] = value.get<bool>() ? 1.0 : 0.0;
    } else {
        throw ConfigError(key, "key '" + key + "' must be a number or string");
    }
}

}  // namespace

RawConfig parse_config(std::string_view json_text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError("", std::string("malformed config: ") + e.what());
    }
    if (!doc.is_object()) throw ConfigError("", "config root must be an object");

    RawConfig out;
    for (const auto& [key, value] : doc.items()) {
        if (value.is_object()) {
            for (const auto& [sub, inner] : value.items()) {
                insert_scalar(out, key + "." + sub, inner);
            }
        } else {
            insert_scalar(out, key, value);
        }
    }
    return out;
}

RawConfig load_config_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("", "cannot open config file " + path.string());
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config(text.str());
}

std::string dump_config(const RawConfig& raw) {
    nlohmann::ordered_json doc = nlohmann::ordered_json::object();
    auto to_json = [](const ConfigValue& v) {
        return std::visit([](const auto& x) { return nlohmann::ordered_json(x); }, v);
    };
    for (const auto& [key, value] : raw) {
        const auto dot = key.find('.');
        if (dot == std::string::npos) {
            doc[key] = to_json(value);
        } else {
            doc[key.substr(0, dot)][key.substr(dot + 1)] = to_json(value);
        }
    }
    return doc.dump(2);
}

}  // namespace nonrecip
