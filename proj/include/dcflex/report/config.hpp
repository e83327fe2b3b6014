#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace dcflex::report {

/// Settings addressed as "section.key". Later sources override earlier ones:
/// built-in defaults, then an INI file, then DCFLEX_<SECTION>_<KEY>
/// environment variables, then explicit overrides. Unknown keys are rejected.
class Config {
 public:
  /// All known keys with their defaults.
  static Config defaults();

  void load_file(const std::filesystem::path& path);
  /// `lookup` returns the variable's value or nullptr; defaults to std::getenv.
  void apply_env(const std::function<const char*(const char*)>& lookup = {});
  void set(const std::string& key, const std::string& value);
  /// Parses "section.key=value".
  void set_assignment(const std::string& assignment);

  bool has(const std::string& key) const { return values_.count(key) > 0; }
  const std::string& get(const std::string& key) const;
  double get_double(const std::string& key) const;
  int get_int(const std::string& key) const;
  std::uint64_t get_uint64(const std::string& key) const;
  bool get_bool(const std::string& key) const;
  std::vector<double> get_list(const std::string& key) const;

  /// Every key with its resolved value, in key order.
  std::vector<std::pair<std::string, std::string>> entries() const;

  static std::string env_name(const std::string& key);

 private:
  std::map<std::string, std::string> values_;
};

}  // namespace dcflex::report
