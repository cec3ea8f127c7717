#pragma once

#include "config.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace fimstat::meanfield {
struct NetworkShape;
}

namespace fimstat::cli {

struct CommonOptions {
    std::optional<std::filesystem::path> config;
    std::vector<std::string> sets;
    int jobs = 1;
    std::optional<std::uint64_t> seed;
    std::filesystem::path out = ".";
    bool dry_run = false;
};

/// Shape for base width M from the shared shape keys.
meanfield::NetworkShape shape_from_config(const RunConfig& cfg, int width);

int cmd_theory(const RunConfig& cfg, const CommonOptions& opt, std::ostream& out);
int cmd_spectrum(const RunConfig& cfg, const CommonOptions& opt, std::ostream& out);
int cmd_sweep(const RunConfig& cfg, const CommonOptions& opt, std::ostream& out);
int cmd_verify(const RunConfig& cfg, const CommonOptions& opt, std::ostream& out);

/// Parses argv and dispatches. Exit codes: 0 success, 1 failure (error or a
/// failed verify suite), 2 usage error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace fimstat::cli
