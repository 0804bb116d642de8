#include "supersol/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace supersol {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

double parse_double(const std::string& key, const std::string& value) {
  const std::string v = trim(value);
  if (v == "inf") return std::numeric_limits<double>::infinity();
  std::size_t used = 0;
  double out;
  try {
    out = std::stod(v, &used);
  } catch (const std::exception&) {
    throw ConfigError("key '" + key + "': cannot parse '" + v + "' as a number");
  }
  if (used != v.size())
    throw ConfigError("key '" + key + "': trailing characters in '" + v + "'");
  return out;
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : value) {
    if (c == ',') {
      parts.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  const std::string last = trim(cur);
  if (!last.empty()) parts.push_back(last);
  return parts;
}

}  // namespace

Config Config::from_string(const std::string& text) {
  Config cfg;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(lineno) + ": expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty())
      throw ConfigError("line " + std::to_string(lineno) + ": empty key");
    if (cfg.entries_.count(key))
      throw ConfigError("duplicate key '" + key + "'");
    cfg.entries_[key] = value;
  }
  return cfg;
}

Config Config::from_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return from_string(buf.str());
}

std::string Config::get_string(const std::string& key) const {
  const auto it = entries_.find(key);
  if (it == entries_.end()) throw ConfigError("missing required key '" + key + "'");
  return it->second;
}

std::string Config::get_string(const std::string& key, const std::string& fallback) const {
  const auto it = entries_.find(key);
  return it == entries_.end() ? fallback : it->second;
}

double Config::get_double(const std::string& key) const {
  return parse_double(key, get_string(key));
}

double Config::get_double(const std::string& key, double fallback) const {
  return has(key) ? get_double(key) : fallback;
}

int Config::get_int(const std::string& key) const {
  const double v = get_double(key);
  const int i = static_cast<int>(std::llround(v));
  if (std::abs(v - i) > 1e-9)
    throw ConfigError("key '" + key + "': expected an integer");
  return i;
}

int Config::get_int(const std::string& key, int fallback) const {
  return has(key) ? get_int(key) : fallback;
}

bool Config::get_bool(const std::string& key, bool fallback) const {
  if (!has(key)) return fallback;
  const std::string v = get_string(key);
  if (v == "true" || v == "1") return true;
  if (v == "false" || v == "0") return false;
  throw ConfigError("key '" + key + "': expected true/false");
}

std::vector<double> Config::get_double_list(const std::string& key) const {
  std::vector<double> out;
  for (const auto& part : split_list(get_string(key)))
    out.push_back(parse_double(key, part));
  return out;
}

std::vector<double> Config::get_double_list(const std::string& key,
                                            std::vector<double> fallback) const {
  return has(key) ? get_double_list(key) : std::move(fallback);
}

std::vector<int> Config::get_int_list(const std::string& key) const {
  std::vector<int> out;
  for (double v : get_double_list(key)) {
    const int i = static_cast<int>(std::llround(v));
    if (std::abs(v - i) > 1e-9)
      throw ConfigError("key '" + key + "': expected integers");
    out.push_back(i);
  }
  return out;
}

void Config::enforce_schema(const std::vector<std::string>& allowed,
                            const std::vector<std::string>& required) const {
  for (const auto& [key, value] : entries_) {
    bool known = false;
    for (const auto& a : allowed)
      if (key == a) {
        known = true;
        break;
      }
    if (!known) throw ConfigError("unknown key '" + key + "' for this command");
  }
  for (const auto& r : required)
    if (!has(r)) throw ConfigError("missing required key '" + r + "'");
}

Domain domain_from_config(const Config& cfg) {
  const DomainKind kind = domain_kind_from_string(cfg.get_string("domain.kind"));
  const int n = cfg.get_int("domain.dimension", 1);
  std::vector<double> sides = cfg.get_double_list("domain.side_lengths");
  if (static_cast<int>(sides.size()) == 1 && n > 1) sides.assign(n, sides[0]);
  const int grid = cfg.get_int("domain.grid_points", 512);
  const int modes = cfg.get_int("domain.modes", 128);
  const double tail = cfg.get_double("domain.tail_tolerance", 1e-8);
  try {
    return make_domain(kind, n, std::move(sides), grid, modes, tail);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("invalid domain: ") + e.what());
  }
}

ProfileSpec profile_from_config(const Config& cfg, const Domain& domain) {
  const std::string kind = cfg.get_string("profile.kind");
  const double amplitude = cfg.get_double("profile.amplitude", 1.0);
  if (kind == "eigenfunction") {
    EigenfunctionProfile p;
    p.amplitude = amplitude;
    if (cfg.has("profile.mode_indices")) p.mode_indices = cfg.get_int_list("profile.mode_indices");
    return p;
  }
  if (kind == "gaussian") {
    GaussianProfile p;
    p.amplitude = amplitude;
    p.width = cfg.get_double("profile.width", 1.0);
    if (cfg.has("profile.center")) p.center = cfg.get_double_list("profile.center");
    return p;
  }
  if (kind == "power_singularity") {
    PowerSingularityProfile p;
    p.amplitude = amplitude;
    p.exponent = cfg.get_double("profile.exponent");
    p.center = cfg.get_double_list("profile.center");
    return p;
  }
  if (kind == "constant") {
    return ConstantProfile{amplitude};
  }
  if (kind == "table") {
    const std::string file = cfg.get_string("profile.values_file");
    std::ifstream in(file);
    if (!in) throw ConfigError("cannot open profile.values_file " + file);
    std::vector<double> values;
    double v;
    while (in >> v) values.push_back(v);
    Array arr(static_cast<Index>(values.size()));
    for (std::size_t i = 0; i < values.size(); ++i) arr[static_cast<Index>(i)] = values[i];
    if (arr.size() != domain.total_nodes())
      throw ConfigError("profile.values_file does not match the grid size");
    return TableProfile{std::move(arr)};
  }
  throw ConfigError("unknown profile.kind '" + kind + "'");
}

ProfileSpec profile_with_amplitude(const ProfileSpec& base, double amplitude) {
  ProfileSpec out = base;
  std::visit(
      [amplitude](auto& p) {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, TableProfile>) {
          // Tables rescale so the grid max equals the requested amplitude.
          const double max = p.values.maxCoeff();
          if (max > 0) p.values *= amplitude / max;
        } else {
          p.amplitude = amplitude;
        }
      },
      out);
  return out;
}

Nonlinearity nonlinearity_from_config(const Config& cfg) {
  const std::string kind = cfg.get_string("nonlinearity.kind", "power_law");
  if (kind == "power_law") {
    const double p = cfg.get_double("nonlinearity.p");
    if (!(p > 1)) throw ConfigError("nonlinearity.p must exceed 1");
    return Nonlinearity::power_law(p);
  }
  if (kind == "monotone_table") {
    std::vector<std::pair<double, double>> breakpoints;
    const std::string table = cfg.get_string("nonlinearity.table");
    std::string cur;
    auto flush = [&]() {
      const auto colon = cur.find(':');
      if (colon == std::string::npos)
        throw ConfigError("nonlinearity.table entries must look like s:f");
      breakpoints.emplace_back(parse_double("nonlinearity.table", cur.substr(0, colon)),
                               parse_double("nonlinearity.table", cur.substr(colon + 1)));
      cur.clear();
    };
    for (char c : table) {
      if (c == ',')
        flush();
      else if (!std::isspace(static_cast<unsigned char>(c)))
        cur += c;
    }
    if (!cur.empty()) flush();
    try {
      return Nonlinearity::monotone_table(std::move(breakpoints));
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("invalid nonlinearity.table: ") + e.what());
    }
  }
  throw ConfigError("unknown nonlinearity.kind '" + kind + "'");
}

TimeGrid time_grid_from_config(const Config& cfg) {
  const double T = cfg.get_double("time.T");
  const int J = cfg.get_int("time.J", 64);
  const double gamma = cfg.get_double("time.gamma", 2.0);
  try {
    return TimeGrid::graded(T, J, gamma);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("invalid time grid: ") + e.what());
  }
}

}  // namespace supersol
