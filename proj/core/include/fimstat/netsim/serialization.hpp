#pragma once

#include "fimstat/netsim/parameter_set.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <filesystem>
#include <vector>

namespace fimstat::netsim {

/// {"widths": [...], "base_width": M, "sigma_w2": [...], "sigma_b2": [...],
///  "activations": [{"name": "relu"}, {"name": "leaky-relu", "slope": 0.1}, ...]}
/// Custom activations cannot be serialised.
nlohmann::json shape_to_json(const NetworkShape& shape);
NetworkShape shape_from_json(const nlohmann::json& j);

nlohmann::json parameters_to_json(const ParameterSet& params);
ParameterSet parameters_from_json(const nlohmann::json& j);

/// Little-endian container: "FIMP", u32 version, u32 length of the JSON shape
/// header, the header itself, u64 seed, u64 P, then P doubles.
std::vector<std::uint8_t> encode_parameters(const ParameterSet& params);
ParameterSet decode_parameters(const std::vector<std::uint8_t>& bytes);

void save_parameters(const ParameterSet& params, const std::filesystem::path& path);
ParameterSet load_parameters(const std::filesystem::path& path);

}  // namespace fimstat::netsim
