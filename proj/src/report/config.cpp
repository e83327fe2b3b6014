#include "dcflex/report/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdlib>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "dcflex/core/text.hpp"
#include "dcflex/core/types.hpp"

namespace dcflex::report {

Config Config::defaults() {
  Config c;
  c.values_ = {
      {"grid.step_minutes", "15"},
      {"grid.horizon_steps", "960"},
      {"grid.origin_unix_s", "1704067200"},
      {"datacenter.total_resources", "64"},
      {"datacenter.unit_power_kw", "1"},
      {"datacenter.fixed_power_kw", "0"},
      {"datacenter.device_class", "gpu_ai"},
      {"datacenter.preempt_overhead_min", "auto"},
      {"datacenter.preempt_budget_frac", "0.01"},
      {"econ.price_reduction_coeff", "0.5"},
      {"econ.hourly_unit_price", "1"},
      {"econ.energy_price", "0.05"},
      {"econ.currency", "USD"},
      {"dq.enabled", "false"},
      {"dq.speedup", "0.5"},
      {"service.durations_hours", "0.25,0.5,1,2,4"},
      {"service.annual_frequencies", "365,730,1460,2920"},
      {"service.max_delays", "0.1,0.2,0.5"},
      {"service.fractions_pct", "25,50,75,100"},
      {"data.schema", ""},
      {"data.days", "0"},
      {"data.trim_fraction", "0.5"},
      {"data.clusters_per_day", "100"},
      {"run.seed", "1"},
      {"run.workers", "0"},
      {"run.mip_rel_gap", "1e-4"},
      {"run.time_limit_s", "600"},
      {"run.tighten", "true"},
      {"csf.percentiles", "25,50,75"},
      {"market.percentiles", "50,90,99,99.9,99.95,99.99,100"},
      {"market.currency_rate", "1"},
  };
  return c;
}

void Config::load_file(const std::filesystem::path& path) {
  boost::property_tree::ptree tree;
  try {
    boost::property_tree::ini_parser::read_ini(path.string(), tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw DataError("config " + path.string() + ": " + e.message() + " (line " + std::to_string(e.line()) + ")");
  }
  for (const auto& [section, body] : tree) {
    if (body.empty()) throw DataError("config " + path.string() + ": key '" + section + "' outside a section");
    for (const auto& [key, value] : body) set(section + "." + key, value.data());
  }
}

std::string Config::env_name(const std::string& key) {
  std::string name = "DCFLEX_";
  for (char ch : key) name += ch == '.' ? '_' : static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
  return name;
}

void Config::apply_env(const std::function<const char*(const char*)>& lookup) {
  auto get_env = lookup ? lookup : [](const char* name) -> const char* { return std::getenv(name); };
  for (auto& [key, value] : values_) {
    if (const char* v = get_env(env_name(key).c_str())) value = v;
  }
}

void Config::set(const std::string& key, const std::string& value) {
  auto it = values_.find(key);
  if (it == values_.end()) throw DomainError("unknown setting '" + key + "'");
  it->second = std::string(trim(value));
}

void Config::set_assignment(const std::string& assignment) {
  auto eq = assignment.find('=');
  if (eq == std::string::npos) throw DomainError("expected section.key=value, got '" + assignment + "'");
  set(std::string(trim(std::string_view(assignment).substr(0, eq))), assignment.substr(eq + 1));
}

const std::string& Config::get(const std::string& key) const {
  auto it = values_.find(key);
  if (it == values_.end()) throw DomainError("unknown setting '" + key + "'");
  return it->second;
}

double Config::get_double(const std::string& key) const {
  auto v = parse_number(get(key));
  if (!v) throw DomainError("setting " + key + " is not a number: '" + get(key) + "'");
  return *v;
}

int Config::get_int(const std::string& key) const {
  const std::string& text = get(key);
  int out = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw DomainError("setting " + key + " is not an integer: '" + text + "'");
  }
  return out;
}

std::uint64_t Config::get_uint64(const std::string& key) const {
  const std::string& text = get(key);
  std::uint64_t out = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw DomainError("setting " + key + " is not a non-negative integer: '" + text + "'");
  }
  return out;
}

bool Config::get_bool(const std::string& key) const {
  std::string v = get(key);
  std::transform(v.begin(), v.end(), v.begin(), [](unsigned char c) { return std::tolower(c); });
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw DomainError("setting " + key + " is not a boolean: '" + get(key) + "'");
}

std::vector<double> Config::get_list(const std::string& key) const {
  try {
    return parse_number_list(get(key));
  } catch (const DomainError& e) {
    throw DomainError("setting " + key + ": " + e.what());
  }
}

std::vector<std::pair<std::string, std::string>> Config::entries() const {
  return {values_.begin(), values_.end()};
}

}  // namespace dcflex::report
