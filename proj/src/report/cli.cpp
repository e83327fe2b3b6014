#include "dcflex/report/cli.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <fstream>
#include <functional>
#include <iostream>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "dcflex/core/text.hpp"
#include "dcflex/ingest/cloud_pricing.hpp"
#include "dcflex/ingest/job_trace.hpp"
#include "dcflex/ingest/price_series.hpp"
#include "dcflex/market/profit.hpp"
#include "dcflex/prep/preprocess.hpp"
#include "dcflex/report/config.hpp"
#include "dcflex/report/heatmap.hpp"
#include "dcflex/report/synthetic.hpp"
#include "dcflex/scaling/csf.hpp"
#include "dcflex/scaling/scaling.hpp"
#include "dcflex/solve/campaign.hpp"
#include "dcflex/solve/campaign_io.hpp"

namespace dcflex::report {
namespace {

using json = nlohmann::ordered_json;
namespace fs = std::filesystem;

constexpr std::int64_t kDaySeconds = 86400;

// Flags that override one config key each.
struct Bindings {
  struct Entry {
    CLI::Option* option;
    std::string key;
    std::string* value;
    std::string fixed;  // used for plain switches
  };
  std::deque<std::string> storage;
  std::vector<Entry> entries;

  void value(CLI::App* app, const std::string& flag, const std::string& key, const std::string& help) {
    storage.emplace_back();
    entries.push_back({app->add_option(flag, storage.back(), help), key, &storage.back(), {}});
  }
  void toggle(CLI::App* app, const std::string& flag, const std::string& key, const std::string& fixed,
              const std::string& help) {
    entries.push_back({app->add_flag(flag, help), key, nullptr, fixed});
  }
  void apply(Config& cfg) const {
    for (const auto& e : entries) {
      if (e.option->count() == 0) continue;
      cfg.set(e.key, e.value ? *e.value : e.fixed);
    }
  }
};

struct Common {
  std::string config_path;
  std::vector<std::string> assignments;
};

struct Args {
  Common common;
  Bindings bindings;
  std::string trace, jobs, out, csv, pricing, grid, metric, profile, out_prefix;
  std::string device = "all";
  std::vector<std::string> prices;
  std::string price_currency;
  std::string market_names;
  double A = NAN, R = NAN, G = NAN, G0 = NAN, N = NAN, pi = NAN;
  int synth_days = 20;
};

void add_common(CLI::App* app, Args& a) {
  app->add_option("--config", a.common.config_path, "INI file with [section] key=value settings");
  app->add_option("--set", a.common.assignments, "Override a setting: section.key=value")->take_all();
  a.bindings.value(app, "--seed", "run.seed", "Master random seed");
  a.bindings.value(app, "--workers", "run.workers", "Parallel solver workers (0 = all cores)");
}

void add_datacenter(CLI::App* app, Args& a) {
  a.bindings.value(app, "--resources", "datacenter.total_resources", "Total resource units");
  a.bindings.value(app, "--unit-power", "datacenter.unit_power_kw", "kW per fully used unit");
  a.bindings.value(app, "--fixed-power", "datacenter.fixed_power_kw", "Fixed power in kW");
  a.bindings.value(app, "--device-class", "datacenter.device_class", "gpu_ai or cpu_general");
  a.bindings.value(app, "--step-minutes", "grid.step_minutes", "Time step in minutes");
  a.bindings.value(app, "--horizon-steps", "grid.horizon_steps", "Steps per optimization horizon");
}

void add_data(CLI::App* app, Args& a) {
  app->add_option("--trace", a.trace, "Job trace CSV");
  app->add_option("--jobs", a.jobs, "Discretized job table written by `preprocess`");
  a.bindings.value(app, "--schema", "data.schema", "Trace column mapping: field=column,...");
  a.bindings.value(app, "--days", "data.days", "Keep the most recent N whole days (0 = all)");
  a.bindings.value(app, "--clusters-per-day", "data.clusters_per_day", "Job aggregation clusters per day (0 = off)");
}

void add_campaign(CLI::App* app, Args& a, bool cost) {
  add_datacenter(app, a);
  add_data(app, a);
  a.bindings.value(app, "--duration", "service.durations_hours", "Activation durations in hours");
  a.bindings.value(app, "--freq", "service.annual_frequencies", "Activations per year");
  a.bindings.value(app, "--max-delay", "service.max_delays", "Maximum delay fractions");
  a.bindings.toggle(app, "--dq", "dq.enabled", "true", "Enable dynamic quota");
  a.bindings.value(app, "--speedup", "dq.speedup", "Dynamic-quota speed-up coefficient");
  a.bindings.value(app, "--time-limit", "run.time_limit_s", "Solver time limit per instance, seconds");
  if (cost) {
    a.bindings.value(app, "--fractions", "service.fractions_pct", "Percentages of the maximum flexibility");
    a.bindings.value(app, "--price-coeff", "econ.price_reduction_coeff", "Price reduction coefficient A");
    a.bindings.value(app, "--unit-price", "econ.hourly_unit_price", "Price per unit-hour R");
    a.bindings.value(app, "--energy-price", "econ.energy_price", "Energy price per kWh");
    a.bindings.value(app, "--gap", "run.mip_rel_gap", "Relative MIP gap");
    a.bindings.toggle(app, "--no-tighten", "run.tighten", "false", "Skip the cost lower-bound row");
  }
  app->add_option("--out", a.out, "Grid JSON output")->required();
  app->add_option("--csv", a.csv, "Also write the grid as long CSV");
}

Config resolve(const Args& a) {
  Config cfg = Config::defaults();
  if (!a.common.config_path.empty()) cfg.load_file(a.common.config_path);
  cfg.apply_env();
  for (const auto& s : a.common.assignments) cfg.set_assignment(s);
  a.bindings.apply(cfg);
  return cfg;
}

// Resolved settings that determine results (worker count excluded).
std::vector<std::pair<std::string, std::string>> echo(const Config& cfg) {
  auto entries = cfg.entries();
  entries.erase(std::remove_if(entries.begin(), entries.end(), [](auto& e) { return e.first == "run.workers"; }),
                entries.end());
  return entries;
}

json config_json(const Config& cfg) {
  json j = json::object();
  for (const auto& [k, v] : echo(cfg)) j[k] = v;
  return j;
}

void write_text(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path.string());
  out << text;
  if (!out) throw DataError("write failed: " + path.string());
}

// Sidecar with the resolved config for CSV artifacts.
void write_meta(const fs::path& artifact, const std::string& command, const Config& cfg, json summary) {
  json meta;
  meta["command"] = command;
  meta["artifact"] = artifact.filename().string();
  meta["config"] = config_json(cfg);
  meta["summary"] = std::move(summary);
  write_text(artifact.string() + ".meta.json", meta.dump(2) + "\n");
}

TimeGrid grid_from(const Config& cfg) {
  TimeGrid g;
  g.step_minutes = cfg.get_double("grid.step_minutes");
  g.steps = cfg.get_int("grid.horizon_steps");
  g.origin_unix_s = static_cast<std::int64_t>(cfg.get_double("grid.origin_unix_s"));
  g.validate();
  return g;
}

DataCenterSpec spec_from(const Config& cfg) {
  DataCenterSpec s;
  s.total_resources = cfg.get_double("datacenter.total_resources");
  s.unit_power_kw = cfg.get_double("datacenter.unit_power_kw");
  s.fixed_power_kw = cfg.get_double("datacenter.fixed_power_kw");
  s.device_class = parse_device_class(cfg.get("datacenter.device_class"));
  s.preempt_overhead_min = cfg.get("datacenter.preempt_overhead_min") == "auto"
                               ? default_preempt_overhead_min(s.device_class)
                               : cfg.get_double("datacenter.preempt_overhead_min");
  s.preempt_budget_frac = cfg.get_double("datacenter.preempt_budget_frac");
  s.validate();
  return s;
}

EconParams econ_from(const Config& cfg) {
  EconParams e;
  e.price_reduction_coeff = cfg.get_double("econ.price_reduction_coeff");
  e.hourly_unit_price = cfg.get_double("econ.hourly_unit_price");
  e.energy_price = cfg.get_double("econ.energy_price");
  e.validate();
  return e;
}

ingest::RawJobTable load_trace(const Args& a, const Config& cfg, const TimeGrid& grid) {
  const std::string schema_text = cfg.get("data.schema");
  auto schema = schema_text.empty() ? ingest::TraceSchema{} : ingest::TraceSchema::parse(schema_text);
  ingest::RawJobTable raw = ingest::parse_job_trace(a.trace, schema);
  const int days = cfg.get_int("data.days");
  if (days > 0) raw = ingest::select_window(raw, days, grid, cfg.get_double("data.trim_fraction"));
  return raw;
}

// Discretized dataset with step 1 at the window start (or the first whole day).
JobTable load_dataset(const Args& a, const Config& cfg, TimeGrid& grid) {
  if (a.trace.empty() == a.jobs.empty()) throw DomainError("give exactly one of --trace and --jobs");
  if (!a.jobs.empty()) return prep::read_job_table(a.jobs);
  ingest::RawJobTable raw = prep::zero_queue(load_trace(a, cfg, grid));
  if (raw.window) {
    grid.origin_unix_s = raw.window->begin_unix_s;
  } else if (!raw.rows.empty()) {
    std::int64_t first = raw.rows.front().start_unix_s;
    for (const auto& r : raw.rows) first = std::min(first, r.start_unix_s);
    const std::int64_t offset = first - grid.origin_unix_s;
    const std::int64_t day = offset >= 0 ? offset / kDaySeconds : -((-offset + kDaySeconds - 1) / kDaySeconds);
    grid.origin_unix_s += day * kDaySeconds;
  }
  return prep::discretize(raw, grid);
}

std::vector<prep::Horizon> horizons_for(const JobTable& dataset, const Config& cfg, const DataCenterSpec& spec,
                                        const TimeGrid& grid) {
  prep::AggregationOptions agg;
  agg.clusters_per_day = cfg.get_int("data.clusters_per_day");
  agg.seed = cfg.get_uint64("run.seed");
  auto horizons = prep::prepare_horizons(dataset, spec, grid, agg);
  if (horizons.empty()) {
    throw DataError("dataset spans " + std::to_string(dataset.span.length()) + " steps, less than one horizon of " +
                    std::to_string(grid.steps));
  }
  return horizons;
}

solve::CampaignConfig campaign_config(const Config& cfg, const TimeGrid& grid, const DataCenterSpec& spec) {
  solve::CampaignConfig c;
  c.grid = grid;
  c.spec = spec;
  c.econ = econ_from(cfg);
  c.dq.enabled = cfg.get_bool("dq.enabled");
  c.dq.speedup = cfg.get_double("dq.speedup");
  c.durations_hours = cfg.get_list("service.durations_hours");
  c.annual_frequencies = cfg.get_list("service.annual_frequencies");
  c.max_delays = cfg.get_list("service.max_delays");
  c.fractions_pct = cfg.get_list("service.fractions_pct");
  c.master_seed = cfg.get_uint64("run.seed");
  c.workers = cfg.get_int("run.workers");
  c.solver.mip_rel_gap = cfg.get_double("run.mip_rel_gap");
  c.solver.time_limit_s = cfg.get_double("run.time_limit_s");
  c.tighten = cfg.get_bool("run.tighten");
  return c;
}

json cell_summary(const solve::CampaignResult& r) {
  int failed = 0, limit = 0, degenerate = 0;
  for (const auto& [k, v] : r.cells) {
    failed += v.horizons_failed;
    limit += v.limit_hits;
    degenerate += v.degenerate ? 1 : 0;
  }
  return {{"kind", solve::to_string(r.kind)}, {"horizons", r.horizons}, {"cells", r.cells.size()},
          {"failed_solves", failed},          {"limit_hits", limit},    {"degenerate_cells", degenerate}};
}

int cmd_campaign(const Args& a, const Config& cfg, bool cost, std::ostream& out) {
  TimeGrid grid = grid_from(cfg);
  const DataCenterSpec spec = spec_from(cfg);
  const JobTable dataset = load_dataset(a, cfg, grid);
  const auto horizons = horizons_for(dataset, cfg, spec, grid);
  const solve::CampaignConfig cc = campaign_config(cfg, grid, spec);
  solve::HighsBackend backend;
  solve::CampaignResult r =
      cost ? solve::run_costmin_campaign(horizons, cc, backend) : solve::run_flexmax_campaign(horizons, cc, backend);
  r.config = echo(cfg);
  r.config.emplace_back("input", a.trace.empty() ? a.jobs : a.trace);
  solve::write_campaign_json(r, a.out);
  if (!a.csv.empty()) {
    solve::write_campaign_csv(r, fs::path(a.csv));
    write_meta(a.csv, cost ? "costmin" : "flexmax", cfg, cell_summary(r));
  }
  out << cell_summary(r).dump() << "\n";
  return 0;
}

int cmd_ingest(const Args& a, const Config& cfg, std::ostream& out) {
  if (a.trace.empty()) throw DomainError("--trace is required");
  const TimeGrid grid = grid_from(cfg);
  ingest::RawJobTable raw = load_trace(a, cfg, grid);
  ingest::write_job_trace(raw, fs::path(a.out));
  json summary{{"rows", raw.rows.size()}, {"dropped", raw.dropped}};
  if (raw.window) summary["window"] = {raw.window->begin_unix_s, raw.window->end_unix_s};
  write_meta(a.out, "ingest", cfg, summary);
  out << summary.dump() << "\n";
  return 0;
}

int cmd_preprocess(const Args& a, const Config& cfg, std::ostream& out) {
  TimeGrid grid = grid_from(cfg);
  const DataCenterSpec spec = spec_from(cfg);
  const JobTable dataset = load_dataset(a, cfg, grid);
  const auto horizons = horizons_for(dataset, cfg, spec, grid);
  std::ostringstream table;
  prep::write_job_table(dataset, table);
  write_text(a.out, table.str());
  json summary{{"jobs", dataset.jobs.size()}, {"span", {dataset.span.first, dataset.span.last}},
               {"origin_unix_s", grid.origin_unix_s}, {"horizons", json::array()}};
  for (const auto& h : horizons) {
    summary["horizons"].push_back({{"index", h.index},
                                   {"jobs", h.jobs.jobs.size()},
                                   {"mean_util", h.baseline.mean_util},
                                   {"std_util", h.baseline.std_util}});
  }
  write_meta(a.out, "preprocess", cfg, summary);
  out << summary.dump() << "\n";
  return 0;
}

int cmd_csf(const Args& a, const Config& cfg, std::ostream& out) {
  ingest::CloudOptionTable table = ingest::parse_cloud_pricing(a.pricing);
  if (a.device != "all") {
    const ingest::DeviceType want = ingest::parse_device_type(a.device);
    std::erase_if(table.options, [&](const ingest::CloudOption& o) { return o.device_type != want; });
  }
  scaling::CostParams nominal;
  nominal.price_reduction_coeff = cfg.get_double("econ.price_reduction_coeff");
  nominal.hourly_unit_price = cfg.get_double("econ.hourly_unit_price");
  nominal.unit_power_kw = cfg.get_double("datacenter.unit_power_kw");
  const scaling::CsfEstimate est = scaling::estimate_csf(table, nominal);
  const std::vector<double> ps = cfg.get_list("csf.percentiles");

  json summary{{"options", est.options.size()},
               {"duplicates_removed", est.duplicates_removed},
               {"rows_dropped", table.dropped},
               {"pairs_dropped_too_slow", est.dropped_too_slow},
               {"pairs_dropped_slower_and_pricier", est.dropped_slower_and_pricier},
               {"samples", est.samples.size()},
               {"percentiles", json::object()}};
  for (auto type : {ingest::DeviceType::cpu, ingest::DeviceType::gpu}) {
    std::vector<double> values;
    for (const auto& s : est.samples) {
      if (s.device_type == type) values.push_back(s.csf);
    }
    if (values.empty()) continue;
    json row = json::object();
    for (double p : ps) row["P" + format_number(p)] = scaling::percentile(values, p);
    summary["percentiles"][ingest::to_string(type)] = row;
  }
  if (!a.out.empty()) {
    scaling::write_csf_samples(est.samples, fs::path(a.out));
    write_meta(a.out, "csf estimate", cfg, summary);
  }
  out << summary.dump(2) << "\n";
  return 0;
}

int cmd_scale(const Args& a, const Config& cfg, std::ostream& out) {
  const solve::CampaignResult nominal = solve::read_campaign_json(a.grid);
  const scaling::CostParams base = scaling::nominal_params(nominal);
  scaling::ScaleTarget t;
  t.cost.price_reduction_coeff = std::isnan(a.A) ? base.price_reduction_coeff : a.A;
  t.cost.hourly_unit_price = std::isnan(a.R) ? base.hourly_unit_price : a.R;
  t.cost.unit_power_kw = std::isnan(a.G) ? base.unit_power_kw : a.G;
  t.cost.energy_price = std::isnan(a.pi) ? base.energy_price : a.pi;
  t.total_resources = std::isnan(a.N) ? nominal.spec.total_resources : a.N;
  t.fixed_power_kw = std::isnan(a.G0) ? 0.0 : a.G0;
  solve::CampaignResult scaled = scaling::scale_campaign(nominal, t);
  for (const auto& [k, v] : echo(cfg)) scaled.config.emplace_back("scale." + k, v);
  solve::write_campaign_json(scaled, a.out);
  out << json{{"cells", scaled.cells.size()},
              {"cost_scaling_factor", scaling::cost_scaling_factor(t.cost, base)}}
             .dump()
      << "\n";
  return 0;
}

int cmd_profit(const Args& a, const Config& cfg, std::ostream& out) {
  const solve::CampaignResult grid = solve::read_campaign_json(a.grid);
  const std::string currency = cfg.get("econ.currency");
  const std::string price_currency = a.price_currency.empty() ? currency : a.price_currency;
  const double rate = cfg.get_double("market.currency_rate");
  const std::vector<double> ps = cfg.get_list("market.percentiles");
  std::vector<std::string> names = a.market_names.empty() ? std::vector<std::string>{} : split(a.market_names, ',');
  if (!names.empty() && names.size() != a.prices.size()) {
    throw DomainError("--markets needs one name per --prices file");
  }
  std::vector<market::PriceTable> tables;
  for (std::size_t i = 0; i < a.prices.size(); ++i) {
    auto series = ingest::parse_price_series(a.prices[i], rate, names.empty() ? std::string{} : names[i],
                                             price_currency);
    tables.push_back(market::price_percentile_table(series, ps));
  }
  const market::ProfitReport report = market::profitability_report(grid, tables, currency);
  std::string text = market::report_to_json(report);
  if (!a.out.empty()) {
    json j = json::parse(text);
    j["config"] = config_json(cfg);
    write_text(a.out, j.dump(2) + "\n");
  }
  market::write_report_text(report, out);
  return 0;
}

int cmd_report(const Args& a, const Config& cfg, std::ostream& out) {
  const solve::CampaignResult grid = solve::read_campaign_json(a.grid);
  const std::string metric =
      !a.metric.empty() ? a.metric : (grid.kind == solve::CampaignKind::flexmax ? "norm_flex" : "acof");
  const HeatmapFiles files = heatmap_export(grid, metric, a.out_prefix);
  json summary{{"metric", metric}, {"csv", files.csv.string()}, {"svg", json::array()}};
  for (const auto& s : files.svgs) summary["svg"].push_back(s.string());
  write_meta(files.csv, "report", cfg, summary);
  out << summary.dump() << "\n";
  return 0;
}

int cmd_synth(const Args& a, const Config& cfg, std::ostream& out) {
  const TimeGrid grid = grid_from(cfg);
  const DataCenterSpec spec = spec_from(cfg);
  const TraceProfile profile = parse_trace_profile(a.profile);
  ingest::RawJobTable t = generate_synthetic_trace(profile, a.synth_days, cfg.get_uint64("run.seed"), grid, spec);
  ingest::write_job_trace(t, fs::path(a.out));
  json summary{{"profile", to_string(profile)}, {"days", a.synth_days}, {"jobs", t.rows.size()}};
  write_meta(a.out, "synth", cfg, summary);
  out << summary.dump() << "\n";
  return 0;
}

void print_error(std::ostream& err, const std::string& type, const std::string& message,
                 const std::string& command) {
  json j;
  j["error"] = {{"type", type}, {"command", command}, {"message", message}};
  err << j.dump() << "\n";
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Data-center flexibility and cost-of-flexibility toolkit", "dcflex"};
  app.require_subcommand(1, 1);
  Args a;

  auto* ingest_cmd = app.add_subcommand("ingest", "Parse a job trace and select a window of whole days");
  add_common(ingest_cmd, a);
  add_data(ingest_cmd, a);
  a.bindings.value(ingest_cmd, "--trim", "data.trim_fraction", "Trim boundary days below this share of the mean");
  ingest_cmd->add_option("--out", a.out, "Canonical trace CSV")->required();

  auto* prep_cmd = app.add_subcommand("preprocess", "Discretize a trace and report per-horizon utilization");
  add_common(prep_cmd, a);
  add_datacenter(prep_cmd, a);
  add_data(prep_cmd, a);
  prep_cmd->add_option("--out", a.out, "Job table CSV")->required();

  auto* flex_cmd = app.add_subcommand("flexmax", "Maximum flexibility grid");
  add_common(flex_cmd, a);
  add_campaign(flex_cmd, a, false);

  auto* cost_cmd = app.add_subcommand("costmin", "Average cost of flexibility grid");
  add_common(cost_cmd, a);
  add_campaign(cost_cmd, a, true);

  auto* csf_cmd = app.add_subcommand("csf", "Cost scaling factors from cloud pricing");
  csf_cmd->require_subcommand(1, 1);
  auto* csf_est = csf_cmd->add_subcommand("estimate", "Estimate samples and percentiles");
  add_common(csf_est, a);
  csf_est->add_option("--pricing", a.pricing, "Cloud pricing CSV")->required();
  csf_est->add_option("--device", a.device, "gpu, cpu or all")->check(CLI::IsMember({"gpu", "cpu", "all"}));
  a.bindings.value(csf_est, "--percentiles", "csf.percentiles", "Percentiles to report");
  csf_est->add_option("--out", a.out, "Sample CSV");

  auto* scale_cmd = app.add_subcommand("scale", "Rescale a grid to other data-center parameters");
  add_common(scale_cmd, a);
  scale_cmd->add_option("--grid", a.grid, "Grid JSON computed without fixed power")->required();
  scale_cmd->add_option("--A", a.A, "Price reduction coefficient");
  scale_cmd->add_option("--R", a.R, "Price per unit-hour");
  scale_cmd->add_option("--G", a.G, "kW per unit");
  scale_cmd->add_option("--G0", a.G0, "Fixed power in kW");
  scale_cmd->add_option("--N", a.N, "Total resource units");
  scale_cmd->add_option("--pi", a.pi, "Energy price per kWh");
  scale_cmd->add_option("--out", a.out, "Scaled grid JSON")->required();

  auto* profit_cmd = app.add_subcommand("profit", "Compare a cost grid with market price percentiles");
  add_common(profit_cmd, a);
  profit_cmd->add_option("--grid", a.grid, "Cost grid JSON")->required();
  profit_cmd->add_option("--prices", a.prices, "Price series CSV (timestamp,price); repeatable")->required();
  profit_cmd->add_option("--markets", a.market_names, "Market names, one per price file");
  profit_cmd->add_option("--price-currency", a.price_currency, "Currency of the converted prices");
  a.bindings.value(profit_cmd, "--percentiles", "market.percentiles", "Price percentiles");
  a.bindings.value(profit_cmd, "--currency-rate", "market.currency_rate", "Multiplier applied to prices");
  profit_cmd->add_option("--out", a.out, "Report JSON");

  auto* report_cmd = app.add_subcommand("report", "Heatmap CSV and SVG panels of a grid");
  add_common(report_cmd, a);
  report_cmd->add_option("--grid", a.grid, "Grid JSON")->required();
  report_cmd->add_option("--metric", a.metric, "Cell metric (default norm_flex or acof)");
  report_cmd->add_option("--out-prefix", a.out_prefix, "Output path prefix")->required();

  auto* synth_cmd = app.add_subcommand("synth", "Generate a synthetic job trace");
  add_common(synth_cmd, a);
  add_datacenter(synth_cmd, a);
  synth_cmd->add_option("--profile", a.profile, "ai_like or general_like")->required();
  synth_cmd->add_option("--days", a.synth_days, "Trace length in days (>= 10)");
  synth_cmd->add_option("--out", a.out, "Trace CSV")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n\n" << app.help();
    return 2;
  }

  CLI::App* sub = app.get_subcommands().front();
  std::string command = sub->get_name();
  if (sub == csf_cmd) command = "csf estimate";
  try {
    const Config cfg = resolve(a);
    if (sub == ingest_cmd) return cmd_ingest(a, cfg, out);
    if (sub == prep_cmd) return cmd_preprocess(a, cfg, out);
    if (sub == flex_cmd) return cmd_campaign(a, cfg, false, out);
    if (sub == cost_cmd) return cmd_campaign(a, cfg, true, out);
    if (sub == csf_cmd) return cmd_csf(a, cfg, out);
    if (sub == scale_cmd) return cmd_scale(a, cfg, out);
    if (sub == profit_cmd) return cmd_profit(a, cfg, out);
    if (sub == report_cmd) return cmd_report(a, cfg, out);
    if (sub == synth_cmd) return cmd_synth(a, cfg, out);
  } catch (const DataError& e) {
    print_error(err, "data_error", e.what(), command);
    return 1;
  } catch (const DomainError& e) {
    print_error(err, "domain_error", e.what(), command);
    return 1;
  } catch (const Error& e) {
    print_error(err, "error", e.what(), command);
    return 1;
  } catch (const std::exception& e) {
    print_error(err, "internal_error", e.what(), command);
    return 1;
  }
  return 2;
}

}  // namespace dcflex::report
