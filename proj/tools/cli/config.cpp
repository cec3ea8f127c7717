#include "config.hpp"

#include <algorithm>
#include <fstream>

namespace fimstat::cli {

namespace {

using nlohmann::json;

json shape_keys() {
    return {{"depth", nullptr},        {"width", nullptr},   {"outputs", 1},       {"input_width", nullptr},
            {"coefficients", nullptr}, {"sigma_w2", nullptr}, {"sigma_b2", nullptr}, {"activation", nullptr},
            {"slope", 0.01}};
}

// Same JSON category: all numbers are interchangeable, null accepts anything.
bool compatible(const json& schema, const json& value) {
    if (schema.is_null() || value.is_null()) return true;
    if (schema.is_number() && value.is_number()) return true;
    if (schema.is_array() && (value.is_array() || value.is_number())) return true;
    if (schema == "inf" && value.is_number()) return true;
    return schema.type() == value.type();
}

const std::vector<std::string>& optional_nulls() {
    static const std::vector<std::string> keys{"input_width", "coefficients", "qhat_st0", "images", "labels"};
    return keys;
}

}  // namespace

const json& RunConfig::at(const std::string& key) const {
    if (!values.contains(key)) throw UsageError("unknown config key '" + key + "'");
    return values.at(key);
}

bool RunConfig::has(const std::string& key) const { return values.contains(key) && !values.at(key).is_null(); }

json schema_defaults(const std::string& command) {
    if (command == "theory") {
        json j = shape_keys();
        j.update(json{{"samples", "inf"},
                      {"momentum", 0.0},
                      {"qhat0", 1.0},
                      {"qhat_st0", 0.0},
                      {"ks", {1.0, 10.0, 100.0}},
                      {"method", "automatic"}});
        return j;
    }
    if (command == "spectrum") {
        json j = shape_keys();
        j.update(json{{"widths", nullptr},
                      {"samples", {100}},
                      {"seeds", 100},
                      {"first_seed", 1},
                      {"ks", {1.0, 10.0, 100.0}},
                      {"dump_spectra", false}});
        j.erase("width");
        return j;
    }
    if (command == "sweep") {
        json j = shape_keys();
        j.update(json{{"depth", 4},
                      {"outputs", 10},
                      {"sigma_w2", 2.0},
                      {"sigma_b2", 0.1},
                      {"activation", "relu"},
                      {"widths", {128, 256, 512}},
                      {"eta_min", 1e-4},
                      {"eta_max", 10.0},
                      {"eta_points", 20},
                      {"trials", 5},
                      {"samples", 100},
                      {"momentum", 0.9},
                      {"steps", 100},
                      {"divergence_threshold", 1000.0},
                      {"dataset", "gaussian"},
                      {"images", nullptr},
                      {"labels", nullptr},
                      {"batch", 500},
                      {"epochs", 1},
                      {"max_samples", 0},
                      {"qhat_st0", nullptr},
                      {"seed", 1},
                      {"dry_run", false}});
        j.erase("width");
        return j;
    }
    if (command == "verify") {
        return {{"seed", 1},          {"kernel_samples", 100}, {"kernel_tol", 1e-8},    {"fd_step", 1e-5},
                {"gradient_tol", 1e-5}, {"spectral_tol", 1e-9}, {"identity_tol", 1e-8}};
    }
    throw UsageError("unknown subcommand '" + command + "'");
}

std::vector<std::string> required_keys(const std::string& command) {
    std::vector<std::string> out;
    const auto& opt = optional_nulls();
    const json defaults = schema_defaults(command);
    for (const auto& [k, v] : defaults.items())
        if (v.is_null() && std::find(opt.begin(), opt.end(), k) == opt.end()) out.push_back(k);
    return out;
}

std::pair<std::string, json> parse_assignment(const std::string& text) {
    const auto eq = text.find('=');
    if (eq == std::string::npos || eq == 0) throw UsageError("--set expects KEY=VALUE, got '" + text + "'");
    const std::string key = text.substr(0, eq), raw = text.substr(eq + 1);
    json value = json::parse(raw, nullptr, false);
    if (value.is_discarded()) value = raw;
    return {key, value};
}

RunConfig make_config(const std::string& command, const std::optional<std::filesystem::path>& file,
                      const std::vector<std::string>& assignments) {
    RunConfig cfg{command, schema_defaults(command)};
    auto apply = [&](const std::string& key, const json& value, const std::string& origin) {
        if (!cfg.values.contains(key)) throw UsageError("unknown config key '" + key + "' in " + origin);
        if (!compatible(cfg.values[key], value))
            throw UsageError("config key '" + key + "' in " + origin + " expects " + cfg.values[key].type_name() +
                             ", got " + value.type_name());
        cfg.values[key] = cfg.values[key].is_array() && value.is_number() ? json::array({value}) : value;
    };
    if (file) {
        std::ifstream in(*file);
        if (!in) throw UsageError("cannot open config file '" + file->string() + "'");
        const json doc = json::parse(in, nullptr, false);
        if (doc.is_discarded() || !doc.is_object())
            throw UsageError("config file '" + file->string() + "' is not a JSON object");
        for (const auto& [k, v] : doc.items()) apply(k, v, file->string());
    }
    for (const auto& a : assignments) {
        const auto [k, v] = parse_assignment(a);
        apply(k, v, "--set");
    }
    for (const auto& k : required_keys(command))
        if (!cfg.has(k)) throw UsageError("missing required config key '" + k + "' for '" + command + "'");
    return cfg;
}

}  // namespace fimstat::cli
