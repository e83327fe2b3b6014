#include "dcflex/solve/campaign_io.hpp"

#include <fstream>
#include <sstream>

#include "dcflex/core/text.hpp"
#include "dcflex/ingest/csv.hpp"
#include "json.hpp"

namespace dcflex::solve {
namespace {

using json = nlohmann::ordered_json;

double key_number(const std::string& text, const char* what) {
  auto v = parse_number(text);
  if (!v) throw DataError(std::string("bad ") + what + " key '" + text + "'");
  return *v;
}

std::string fraction_key(const CellKey& key) {
  return key.fraction_pct ? format_number(*key.fraction_pct) : "max";
}

json cell_to_json(const CellValue& v) {
  json j;
  j["mean_flex_kw"] = v.mean_flex_kw;
  j["norm_flex"] = v.norm_flex;
  j["acof"] = v.acof;
  j["apcof"] = v.apcof;
  j["aecof"] = v.aecof;
  j["mean_total_cost"] = v.mean_total_cost;
  j["windows_evaluated"] = v.windows_evaluated;
  j["horizons_failed"] = v.horizons_failed;
  j["limit_hits"] = v.limit_hits;
  j["max_mip_gap"] = v.max_mip_gap;
  j["degenerate"] = v.degenerate;
  if (!v.note.empty()) j["note"] = v.note;
  return j;
}

CellValue cell_from_json(const json& j) {
  CellValue v;
  v.mean_flex_kw = j.at("mean_flex_kw").get<double>();
  v.norm_flex = j.at("norm_flex").get<double>();
  v.acof = j.at("acof").get<double>();
  v.apcof = j.at("apcof").get<double>();
  v.aecof = j.at("aecof").get<double>();
  v.mean_total_cost = j.value("mean_total_cost", 0.0);
  v.windows_evaluated = j.at("windows_evaluated").get<int>();
  v.horizons_failed = j.value("horizons_failed", 0);
  v.limit_hits = j.value("limit_hits", 0);
  v.max_mip_gap = j.value("max_mip_gap", 0.0);
  v.degenerate = j.value("degenerate", false);
  v.note = j.value("note", std::string{});
  return v;
}

void set_metric(CellValue& v, const std::string& metric, double value) {
  if (metric == "mean_flex_kw") v.mean_flex_kw = value;
  else if (metric == "norm_flex") v.norm_flex = value;
  else if (metric == "acof") v.acof = value;
  else if (metric == "apcof") v.apcof = value;
  else if (metric == "aecof") v.aecof = value;
  else if (metric == "mean_total_cost") v.mean_total_cost = value;
  else if (metric == "windows_evaluated") v.windows_evaluated = static_cast<int>(value);
  else if (metric == "horizons_failed") v.horizons_failed = static_cast<int>(value);
  else if (metric == "limit_hits") v.limit_hits = static_cast<int>(value);
  else if (metric == "max_mip_gap") v.max_mip_gap = value;
  else if (metric == "degenerate") v.degenerate = value != 0.0;
  else throw DataError("unknown metric '" + metric + "'");
}

}  // namespace

const std::vector<std::string>& cell_metrics() {
  static const std::vector<std::string> names{"mean_flex_kw", "norm_flex",       "acof",      "apcof",
                                              "aecof",        "mean_total_cost", "windows_evaluated",
                                              "horizons_failed", "limit_hits",   "max_mip_gap", "degenerate"};
  return names;
}

double cell_metric(const CellValue& v, const std::string& metric) {
  if (metric == "mean_flex_kw") return v.mean_flex_kw;
  if (metric == "norm_flex") return v.norm_flex;
  if (metric == "acof") return v.acof;
  if (metric == "apcof") return v.apcof;
  if (metric == "aecof") return v.aecof;
  if (metric == "mean_total_cost") return v.mean_total_cost;
  if (metric == "windows_evaluated") return v.windows_evaluated;
  if (metric == "horizons_failed") return v.horizons_failed;
  if (metric == "limit_hits") return v.limit_hits;
  if (metric == "max_mip_gap") return v.max_mip_gap;
  if (metric == "degenerate") return v.degenerate ? 1.0 : 0.0;
  throw DomainError("unknown metric '" + metric + "'");
}

std::string campaign_to_json(const CampaignResult& r) {
  json root;
  root["kind"] = to_string(r.kind);
  root["horizons"] = r.horizons;
  json& nominal = root["nominal"];
  nominal["total_resources"] = r.spec.total_resources;
  nominal["unit_power_kw"] = r.spec.unit_power_kw;
  nominal["fixed_power_kw"] = r.spec.fixed_power_kw;
  nominal["preempt_overhead_min"] = r.spec.preempt_overhead_min;
  nominal["preempt_budget_frac"] = r.spec.preempt_budget_frac;
  nominal["device_class"] = to_string(r.spec.device_class);
  nominal["price_reduction_coeff"] = r.econ.price_reduction_coeff;
  nominal["hourly_unit_price"] = r.econ.hourly_unit_price;
  nominal["energy_price"] = r.econ.energy_price;
  nominal["dq_enabled"] = r.dq.enabled;
  nominal["dq_speedup"] = r.dq.speedup;
  json& config = root["config"];
  config = json::object();
  for (const auto& [k, v] : r.config) config[k] = v;
  json& cells = root["cells"];
  cells = json::object();
  for (const auto& [key, value] : r.cells) {
    cells[format_number(key.duration_hours)][format_number(key.annual_frequency)][format_number(key.max_delay)]
         [fraction_key(key)] = cell_to_json(value);
  }
  return root.dump(2) + "\n";
}

CampaignResult campaign_from_json(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::exception& e) {
    throw DataError(std::string("campaign JSON does not parse: ") + e.what());
  }
  try {
    CampaignResult r;
    std::string kind = root.at("kind").get<std::string>();
    if (kind == "flexmax") r.kind = CampaignKind::flexmax;
    else if (kind == "costmin") r.kind = CampaignKind::costmin;
    else throw DataError("unknown campaign kind '" + kind + "'");
    r.horizons = root.value("horizons", 0);
    if (root.contains("nominal")) {
      const json& n = root["nominal"];
      r.spec.total_resources = n.value("total_resources", r.spec.total_resources);
      r.spec.unit_power_kw = n.value("unit_power_kw", r.spec.unit_power_kw);
      r.spec.fixed_power_kw = n.value("fixed_power_kw", r.spec.fixed_power_kw);
      r.spec.preempt_overhead_min = n.value("preempt_overhead_min", r.spec.preempt_overhead_min);
      r.spec.preempt_budget_frac = n.value("preempt_budget_frac", r.spec.preempt_budget_frac);
      r.spec.device_class = parse_device_class(n.value("device_class", to_string(r.spec.device_class)));
      r.econ.price_reduction_coeff = n.value("price_reduction_coeff", r.econ.price_reduction_coeff);
      r.econ.hourly_unit_price = n.value("hourly_unit_price", r.econ.hourly_unit_price);
      r.econ.energy_price = n.value("energy_price", r.econ.energy_price);
      r.dq.enabled = n.value("dq_enabled", false);
      r.dq.speedup = n.value("dq_speedup", r.dq.speedup);
    }
    if (root.contains("config")) {
      for (const auto& [k, v] : root["config"].items()) r.config.emplace_back(k, v.get<std::string>());
    }
    for (const auto& [dur, by_freq] : root.at("cells").items()) {
      for (const auto& [freq, by_delay] : by_freq.items()) {
        for (const auto& [delay, by_frac] : by_delay.items()) {
          for (const auto& [frac, cell] : by_frac.items()) {
            CellKey key{key_number(dur, "duration"), key_number(freq, "frequency"), key_number(delay, "delay"),
                        std::nullopt};
            if (frac != "max") key.fraction_pct = key_number(frac, "fraction");
            r.cells[key] = cell_from_json(cell);
          }
        }
      }
    }
    return r;
  } catch (const json::exception& e) {
    throw DataError(std::string("campaign JSON is missing fields: ") + e.what());
  }
}

void write_campaign_json(const CampaignResult& result, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path.string());
  out << campaign_to_json(result);
  if (!out) throw DataError("write failed: " + path.string());
}

CampaignResult read_campaign_json(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return campaign_from_json(ss.str());
}

void write_campaign_csv(const CampaignResult& r, std::ostream& out) {
  out << "duration_hours,annual_frequency,max_delay,flex_fraction,metric,value\n";
  for (const auto& [key, value] : r.cells) {
    const std::string prefix = format_number(key.duration_hours) + "," + format_number(key.annual_frequency) + "," +
                               format_number(key.max_delay) + "," + fraction_key(key) + ",";
    for (const auto& metric : cell_metrics()) {
      out << prefix << metric << "," << format_number(cell_metric(value, metric)) << "\n";
    }
  }
}

void write_campaign_csv(const CampaignResult& result, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path.string());
  write_campaign_csv(result, out);
  if (!out) throw DataError("write failed: " + path.string());
}

CampaignResult parse_campaign_csv(const std::string& text) {
  ingest::CsvTable table = ingest::parse_csv(text);
  const char* names[] = {"duration_hours", "annual_frequency", "max_delay", "flex_fraction", "metric", "value"};
  std::size_t col[6];
  for (int i = 0; i < 6; ++i) {
    col[i] = table.column(names[i]);
    if (col[i] == ingest::npos) throw DataError(std::string("campaign CSV lacks column ") + names[i]);
  }
  CampaignResult r;
  bool any_fraction = false;
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    const auto& row = table.rows[i];
    auto num = [&](int c, const char* what) {
      auto v = parse_number(row.at(col[c]));
      if (!v) throw DataError("campaign CSV line " + std::to_string(table.line_numbers[i]) + ": bad " + what);
      return *v;
    };
    CellKey key{num(0, "duration"), num(1, "frequency"), num(2, "delay"), std::nullopt};
    if (row.at(col[3]) != "max") {
      key.fraction_pct = num(3, "fraction");
      any_fraction = true;
    }
    set_metric(r.cells[key], row.at(col[4]), num(5, "value"));
  }
  r.kind = any_fraction ? CampaignKind::costmin : CampaignKind::flexmax;
  return r;
}

CampaignResult read_campaign_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_campaign_csv(ss.str());
}

}  // namespace dcflex::solve
