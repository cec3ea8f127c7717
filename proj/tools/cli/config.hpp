#pragma once

#include <nlohmann/json.hpp>

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace fimstat::cli {

/// Bad command line or configuration; maps to exit code 2.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Parameters of one subcommand after merging defaults, the config file and
/// --set overrides. Keys absent from the subcommand's schema are rejected,
/// as are overrides whose JSON type differs from the schema's. Keys whose
/// default is null are required unless the schema marks them optional.
struct RunConfig {
    std::string command;
    nlohmann::json values;

    const nlohmann::json& at(const std::string& key) const;
    bool has(const std::string& key) const;  // present and not null

    template <class T>
    T get(const std::string& key) const {
        try {
            return at(key).get<T>();
        } catch (const nlohmann::json::exception&) {
            throw UsageError("config key '" + key + "' has the wrong type");
        }
    }
};

/// Defaults for a subcommand; null marks a value with no default.
nlohmann::json schema_defaults(const std::string& command);
std::vector<std::string> required_keys(const std::string& command);

/// "key=value": value parsed as JSON when possible, otherwise kept as a string.
std::pair<std::string, nlohmann::json> parse_assignment(const std::string& text);

RunConfig make_config(const std::string& command, const std::optional<std::filesystem::path>& file,
                      const std::vector<std::string>& assignments);

}  // namespace fimstat::cli
