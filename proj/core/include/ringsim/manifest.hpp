#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ringsim {

// Experiment configuration: ordered [section] blocks of key = value lines.
// Unknown sections/keys are preserved, so any manifest round-trips through
// serialize/parse losslessly. Values are stored as canonical strings.
class ExperimentManifest {
 public:
  using Section = std::vector<std::pair<std::string, std::string>>;

  // Paper-protocol defaults for every command.
  static ExperimentManifest defaults();

  static ExperimentManifest parse(std::string_view text);  // throws on bad syntax
  static ExperimentManifest load(const std::filesystem::path& path);

  std::string serialize() const;
  std::string digest() const;  // 16-hex FNV-1a of the serialization

  bool has(std::string_view section, std::string_view key) const;
  void set(std::string_view section, std::string_view key, std::string_view value);
  void set_double(std::string_view section, std::string_view key, double value);
  void set_int(std::string_view section, std::string_view key, std::int64_t value);
  void set_bool(std::string_view section, std::string_view key, bool value);

  // Typed getters; throw std::invalid_argument on missing key or bad value.
  std::string get(std::string_view section, std::string_view key) const;
  double get_double(std::string_view section, std::string_view key) const;
  std::int64_t get_int(std::string_view section, std::string_view key) const;
  bool get_bool(std::string_view section, std::string_view key) const;
  std::uint64_t get_seed(std::string_view section, std::string_view key) const;
  // Comma-separated list of doubles.
  std::vector<double> get_list(std::string_view section, std::string_view key) const;

  bool operator==(const ExperimentManifest&) const = default;

  // Canonical, round-trip-exact double formatting.
  static std::string format_double(double value);

 private:
  std::vector<std::pair<std::string, Section>> sections_;
};

}  // namespace ringsim
