#pragma once

#include <filesystem>

#include "supersol/config.hpp"

namespace supersol {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalidCertificate = 2;
inline constexpr int kExitConfigError = 3;
inline constexpr int kExitNumericalFailure = 4;

int cmd_semigroup_probe(const Config& cfg, const std::filesystem::path& out_dir);
int cmd_certify(const Config& cfg, const std::filesystem::path& out_dir);
int cmd_iterate(const Config& cfg, const std::filesystem::path& out_dir, bool force);
int cmd_compare(const Config& cfg, const std::filesystem::path& out_dir, bool force);
int cmd_scan(const Config& cfg, const std::filesystem::path& out_dir);

/// Dispatches by command name, reading the config from disk. ConfigErrors map
/// to exit 3, any other failure to exit 4.
int run_command(const std::string& command, const std::filesystem::path& config_path,
                const std::filesystem::path& out_dir, bool force);

}  // namespace supersol
