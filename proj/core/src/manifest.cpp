#include "ringsim/manifest.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace ringsim {

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && (s[b] == ' ' || s[b] == '\t' || s[b] == '\r')) ++b;
  while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r')) --e;
  return std::string(s.substr(b, e - b));
}

[[noreturn]] void bad_key(std::string_view section, std::string_view key, const char* what) {
  throw std::invalid_argument("manifest: [" + std::string(section) + "] " + std::string(key) +
                              ": " + what);
}

}  // namespace

std::string ExperimentManifest::format_double(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

ExperimentManifest ExperimentManifest::defaults() {
  ExperimentManifest m;
  m.set("run", "out_dir", "");
  m.set_int("run", "jobs", 0);

  m.set_double("agent", "v_star", 10.49);
  m.set_double("agent", "kappa1", 0.7);
  m.set_double("agent", "w1", 1.0);
  m.set_double("agent", "kappa2_v", 10.0);
  m.set_double("agent", "kappa2_0", 0.25);
  m.set_double("agent", "w2", -1.0);
  m.set_double("agent", "kappa3_c", 0.6);
  m.set_double("agent", "kappa3_v", 0.3);
  m.set_double("agent", "kappa3_d", 1.0);
  m.set_double("agent", "w3", -10.0);
  m.set_double("agent", "length", 3.9);
  m.set_double("agent", "sigma_x", 0.05);
  m.set_double("agent", "sigma_v", 0.1);
  m.set_double("agent", "sigma_a", 0.1);
  m.set_double("agent", "gamma", 0.7);
  m.set_double("agent", "lambda", 200.0);
  m.set_double("agent", "u_min", -6.0);
  m.set_double("agent", "u_max", 4.0);
  m.set_int("agent", "grid_points", 41);
  m.set_int("agent", "horizon", 3);

  m.set_int("episode", "n", 30);
  m.set_double("episode", "circumference", 314.0);
  m.set_int("episode", "steps", 3000);
  m.set_double("episode", "dt", 1.0 / 3.0);
  m.set_double("episode", "heterogeneity_level", 0.05);
  m.set_int("episode", "heterogeneity_seed", 1);
  m.set_int("episode", "noise_seed", 1);
  m.set_bool("episode", "kick_enabled", true);
  m.set_int("episode", "kick_vehicle", 1);
  m.set_double("episode", "kick_start_s", 10.0);
  m.set_double("episode", "kick_duration_s", 6.0);
  m.set_double("episode", "kick_decel", -1.0);
  m.set_int("episode", "cav_count", 0);
  m.set_double("episode", "cav_on_s", 50.0);
  m.set_double("episode", "kappa", 6.1);
  m.set_double("episode", "window_lo_s", 200.0);
  m.set_double("episode", "window_hi_s", 1000.0);

  m.set_double("sweep", "kappa_lo", 1.0);
  m.set_double("sweep", "kappa_hi", 8.0);
  m.set_double("sweep", "kappa_step", 0.01);
  m.set_int("sweep", "seeds", 100);
  m.set_int("sweep", "cav_count", 1);
  m.set_double("sweep", "bandwidth", 0.5);
  m.set("sweep", "report_omega", "1");

  m.set_double("frontier", "omega_lo", 0.0);
  m.set_double("frontier", "omega_hi", 0.95);
  m.set_double("frontier", "omega_step", 0.05);
  m.set_double("frontier", "improvement_omega", 1.0);
  m.set_int("frontier", "baseline_seeds", 20);
  m.set("frontier", "sweep_file", "");

  m.set_int("tadaki", "n_lo", 10);
  m.set_int("tadaki", "n_hi", 40);
  m.set_int("tadaki", "seeds", 10);
  return m;
}

ExperimentManifest ExperimentManifest::parse(std::string_view text) {
  ExperimentManifest m;
  std::string current;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    const std::string_view raw =
        text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;

    const std::string line = trim(raw);
    if (line.empty() || line[0] == '#') continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw std::invalid_argument("manifest: unterminated section header at line " +
                                    std::to_string(line_no));
      current = trim(std::string_view(line).substr(1, line.size() - 2));
      if (current.empty())
        throw std::invalid_argument("manifest: empty section name at line " +
                                    std::to_string(line_no));
      bool known = false;
      for (const auto& [name, sec] : m.sections_) known = known || name == current;
      if (!known) m.sections_.emplace_back(current, Section{});
      continue;
    }
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("manifest: expected key = value at line " +
                                  std::to_string(line_no));
    if (current.empty())
      throw std::invalid_argument("manifest: key outside any section at line " +
                                  std::to_string(line_no));
    m.set(current, trim(std::string_view(line).substr(0, eq)),
          trim(std::string_view(line).substr(eq + 1)));
  }
  return m;
}

ExperimentManifest ExperimentManifest::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("manifest: cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse(buffer.str());
}

std::string ExperimentManifest::serialize() const {
  std::string out;
  for (const auto& [name, section] : sections_) {
    out += '[';
    out += name;
    out += "]\n";
    for (const auto& [key, value] : section) {
      out += key;
      out += " = ";
      out += value;
      out += '\n';
    }
    out += '\n';
  }
  return out;
}

std::string ExperimentManifest::digest() const {
  const std::string text = serialize();
  std::uint64_t hash = 0xCBF29CE484222325ull;  // FNV-1a
  for (unsigned char c : text) {
    hash ^= c;
    hash *= 0x100000001B3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(hash));
  return buf;
}

bool ExperimentManifest::has(std::string_view section, std::string_view key) const {
  for (const auto& [name, sec] : sections_)
    if (name == section)
      for (const auto& [k, v] : sec)
        if (k == key) return true;
  return false;
}

void ExperimentManifest::set(std::string_view section, std::string_view key,
                             std::string_view value) {
  for (auto& [name, sec] : sections_) {
    if (name != section) continue;
    for (auto& [k, v] : sec) {
      if (k == key) {
        v = std::string(value);
        return;
      }
    }
    sec.emplace_back(std::string(key), std::string(value));
    return;
  }
  sections_.emplace_back(std::string(section),
                         Section{{std::string(key), std::string(value)}});
}

void ExperimentManifest::set_double(std::string_view section, std::string_view key, double value) {
  set(section, key, format_double(value));
}

void ExperimentManifest::set_int(std::string_view section, std::string_view key,
                                 std::int64_t value) {
  set(section, key, std::to_string(value));
}

void ExperimentManifest::set_bool(std::string_view section, std::string_view key, bool value) {
  set(section, key, value ? "true" : "false");
}

std::string ExperimentManifest::get(std::string_view section, std::string_view key) const {
  for (const auto& [name, sec] : sections_)
    if (name == section)
      for (const auto& [k, v] : sec)
        if (k == key) return v;
  bad_key(section, key, "missing key");
}

double ExperimentManifest::get_double(std::string_view section, std::string_view key) const {
  const std::string value = get(section, key);
  char* end = nullptr;
  const double parsed = std::strtod(value.c_str(), &end);
  if (end == value.c_str() || *end != '\0') bad_key(section, key, "not a number");
  return parsed;
}

std::int64_t ExperimentManifest::get_int(std::string_view section, std::string_view key) const {
  const std::string value = get(section, key);
  char* end = nullptr;
  const long long parsed = std::strtoll(value.c_str(), &end, 10);
  if (end == value.c_str() || *end != '\0') bad_key(section, key, "not an integer");
  return parsed;
}

bool ExperimentManifest::get_bool(std::string_view section, std::string_view key) const {
  const std::string value = get(section, key);
  if (value == "true" || value == "1" || value == "yes" || value == "on") return true;
  if (value == "false" || value == "0" || value == "no" || value == "off") return false;
  bad_key(section, key, "not a boolean");
}

std::uint64_t ExperimentManifest::get_seed(std::string_view section, std::string_view key) const {
  const std::string value = get(section, key);
  char* end = nullptr;
  const unsigned long long parsed = std::strtoull(value.c_str(), &end, 10);
  if (end == value.c_str() || *end != '\0') bad_key(section, key, "not a seed");
  return parsed;
}

std::vector<double> ExperimentManifest::get_list(std::string_view section,
                                                 std::string_view key) const {
  const std::string value = get(section, key);
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= value.size()) {
    std::size_t comma = value.find(',', pos);
    if (comma == std::string::npos) comma = value.size();
    const std::string item = trim(std::string_view(value).substr(pos, comma - pos));
    if (!item.empty()) {
      char* end = nullptr;
      const double parsed = std::strtod(item.c_str(), &end);
      if (end == item.c_str() || *end != '\0') bad_key(section, key, "not a number list");
      out.push_back(parsed);
    }
    pos = comma + 1;
  }
  return out;
}

}  // namespace ringsim
