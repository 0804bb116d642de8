#pragma once

#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "supersol/field.hpp"
#include "supersol/nonlinearity.hpp"
#include "supersol/spacetime.hpp"

namespace supersol {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Flat key-value experiment configuration with dotted section prefixes.
/// Lines are `key = value`, `#` starts a comment, keys may not repeat.
/// Commands enforce an allow-list: unknown keys are rejected.
class Config {
 public:
  static Config from_file(const std::filesystem::path& path);
  static Config from_string(const std::string& text);

  bool has(const std::string& key) const { return entries_.count(key) > 0; }

  std::string get_string(const std::string& key) const;
  std::string get_string(const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& key) const;
  double get_double(const std::string& key, double fallback) const;
  int get_int(const std::string& key) const;
  int get_int(const std::string& key, int fallback) const;
  bool get_bool(const std::string& key, bool fallback) const;
  std::vector<double> get_double_list(const std::string& key) const;
  std::vector<double> get_double_list(const std::string& key,
                                      std::vector<double> fallback) const;
  std::vector<int> get_int_list(const std::string& key) const;

  /// Rejects keys outside `allowed` and missing `required` keys.
  void enforce_schema(const std::vector<std::string>& allowed,
                      const std::vector<std::string>& required) const;

  const std::map<std::string, std::string>& entries() const { return entries_; }

 private:
  std::map<std::string, std::string> entries_;
};

Domain domain_from_config(const Config& cfg);
ProfileSpec profile_from_config(const Config& cfg, const Domain& domain);
ProfileSpec profile_with_amplitude(const ProfileSpec& base, double amplitude);
Nonlinearity nonlinearity_from_config(const Config& cfg);
TimeGrid time_grid_from_config(const Config& cfg);

}  // namespace supersol
