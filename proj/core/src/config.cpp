#include "dip/config.hpp"

#include <charconv>
#include <fstream>

#include "dip/errors.hpp"

namespace dip {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_double(const std::string& key, const std::string& value) {
  double out{};
  const char* begin = value.data();
  const char* end = begin + value.size();
  const auto [ptr, ec] = std::from_chars(begin, end, out);
  if (ec != std::errc() || ptr != end)
    throw ConfigError("config key '" + key + "': cannot parse '" + value + "' as a number");
  return out;
}

long long parse_integer(const std::string& key, const std::string& value) {
  long long out{};
  const char* begin = value.data();
  const char* end = begin + value.size();
  const auto [ptr, ec] = std::from_chars(begin, end, out);
  if (ec != std::errc() || ptr != end)
    throw ConfigError("config key '" + key + "': cannot parse '" + value + "' as an integer");
  return out;
}

}  // namespace

std::map<std::string, std::string> parse_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path.string());

  std::map<std::string, std::string> entries;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(line_no) + ": expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty())
      throw ConfigError("config line " + std::to_string(line_no) + ": empty key or value");
    if (!entries.emplace(key, value).second)
      throw ConfigError("config key '" + key + "' appears more than once");
  }
  return entries;
}

Scenario scenario_from_entries(const std::map<std::string, std::string>& entries) {
  Scenario s = Scenario::defaults();
  auto has = [&](const char* key) { return entries.count(key) != 0; };

  for (const auto& [key, value] : entries) {
    auto d = [&] { return parse_double(key, value); };
    auto i = [&] { return parse_integer(key, value); };

    if (key == "scenario.label") s.label = value;
    else if (key == "scenario.delay") s.delay = d();
    else if (key == "params.cart_mass") s.params.cart_mass = d();
    else if (key == "params.link1_mass") s.params.link1_mass = d();
    else if (key == "params.link2_mass") s.params.link2_mass = d();
    else if (key == "params.link1_length") s.params.link1_length = d();
    else if (key == "params.link2_length") s.params.link2_length = d();
    else if (key == "params.link1_com") s.params.link1_com = d();
    else if (key == "params.link2_com") s.params.link2_com = d();
    else if (key == "params.link1_inertia") s.params.link1_inertia = d();
    else if (key == "params.link2_inertia") s.params.link2_inertia = d();
    else if (key == "params.cart_friction") s.params.cart_friction = d();
    else if (key == "params.gravity") s.params.gravity = d();
    else if (key == "bounds.zeta_min") s.bounds.lower[0] = d();
    else if (key == "bounds.zeta_max") s.bounds.upper[0] = d();
    else if (key == "bounds.omega_min") s.bounds.lower[1] = d();
    else if (key == "bounds.omega_max") s.bounds.upper[1] = d();
    else if (key == "bat.population_size") s.bat.population_size = static_cast<int>(i());
    else if (key == "bat.generations") s.bat.generations = static_cast<int>(i());
    else if (key == "bat.loudness") s.bat.loudness = d();
    else if (key == "bat.pulse_rate") s.bat.pulse_rate = d();
    else if (key == "bat.freq_min") s.bat.freq_min = d();
    else if (key == "bat.freq_max") s.bat.freq_max = d();
    else if (key == "bat.loudness_decay") s.bat.loudness_decay = d();
    else if (key == "bat.pulse_growth") s.bat.pulse_growth = d();
    else if (key == "bat.seed") s.bat.seed = static_cast<std::uint64_t>(i());
    else if (key == "sim.dt") s.sim.dt = d();
    else if (key == "sim.horizon") s.sim.horizon = d();
    else if (key == "sim.reference") s.sim.reference = d();
    else if (key == "sim.initial_cart") s.sim.initial_state[0] = d();
    else if (key == "sim.initial_theta1") s.sim.initial_state[1] = d();
    else if (key == "sim.initial_theta2") s.sim.initial_state[2] = d();
    else if (key == "fitness.cart_weight") s.weights.cart = d();
    else if (key == "fitness.theta1_weight") s.weights.lower = d();
    else if (key == "fitness.theta2_weight") s.weights.upper = d();
    else throw ConfigError("unknown config key '" + key + "'");
  }

  // Masses/lengths given without an explicit center of mass or inertia keep
  // the uniform thin-rod relation instead of the numeric defaults.
  const bool link1_geom = has("params.link1_mass") || has("params.link1_length");
  const bool link2_geom = has("params.link2_mass") || has("params.link2_length");
  if (link1_geom && !has("params.link1_com")) s.params.link1_com = s.params.link1_length / 2.0;
  if (link1_geom && !has("params.link1_inertia"))
    s.params.link1_inertia = s.params.link1_mass * s.params.link1_length * s.params.link1_length / 12.0;
  if (link2_geom && !has("params.link2_com")) s.params.link2_com = s.params.link2_length / 2.0;
  if (link2_geom && !has("params.link2_inertia"))
    s.params.link2_inertia = s.params.link2_mass * s.params.link2_length * s.params.link2_length / 12.0;

  s.validate();
  return s;
}

Scenario scenario_from_config(const std::filesystem::path& path) {
  return scenario_from_entries(parse_config_file(path));
}

}  // namespace dip
