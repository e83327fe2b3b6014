#include "dcflex/scaling/csf.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>
#include <set>
#include <tuple>

#include "dcflex/core/text.hpp"
#include "dcflex/ingest/csv.hpp"

namespace dcflex::scaling {
namespace {

// Price of running a unit workload on the whole option.
double workload_price(const ingest::CloudOption& o) { return o.unit_price * o.unit_count / o.speed; }

}  // namespace

bool excessively_slow(double delay_frac) { return delay_frac > 1.0; }

std::vector<ingest::CloudOption> deduplicate_options(const std::vector<ingest::CloudOption>& options,
                                                     std::size_t* removed) {
  std::set<std::tuple<std::string, std::string, double, double>> seen;
  std::vector<ingest::CloudOption> out;
  for (const auto& o : options) {
    if (seen.emplace(o.provider, o.model, o.unit_price, o.unit_power_w).second) out.push_back(o);
  }
  if (removed) *removed = options.size() - out.size();
  return out;
}

CsfEstimate estimate_csf(const ingest::CloudOptionTable& table, const CostParams& nominal) {
  if (table.options.empty()) throw DomainError("no cloud options to compare");
  const double nominal_ratio = nominal.price_reduction_coeff * nominal.hourly_unit_price / nominal.unit_power_kw;
  if (!(nominal_ratio > 0.0) || !std::isfinite(nominal_ratio)) {
    throw DomainError("nominal A, R and G must be positive");
  }
  CsfEstimate est;
  est.options = deduplicate_options(table.options, &est.duplicates_removed);
  const auto& opts = est.options;
  for (std::size_t i = 0; i < opts.size(); ++i) {
    for (std::size_t k = 0; k < opts.size(); ++k) {
      const auto& fast = opts[i];
      const auto& slow = opts[k];
      if (i == k || fast.provider != slow.provider || fast.device_type != slow.device_type) continue;
      if (!(fast.speed > slow.speed)) continue;
      const double delay = fast.speed / slow.speed - 1.0;
      if (excessively_slow(delay)) {
        ++est.dropped_too_slow;
        continue;
      }
      const double v1 = workload_price(fast);
      const double v2 = workload_price(slow);
      if (v2 >= v1) {
        ++est.dropped_slower_and_pricier;
        continue;
      }
      CsfSample s;
      s.provider = fast.provider;
      s.device_type = fast.device_type;
      s.fast_model = fast.model;
      s.slow_model = slow.model;
      s.fast_index = i;
      s.slow_index = k;
      s.delay_frac = delay;
      s.cost_reduction = v1 - v2;
      s.price_reduction_coeff = s.cost_reduction / (delay * v1);
      s.unit_price = fast.unit_price;
      s.unit_power_kw = fast.unit_power_w / 1000.0;
      s.csf = s.price_reduction_coeff * s.unit_price / s.unit_power_kw / nominal_ratio;
      est.samples.push_back(std::move(s));
    }
  }
  if (est.samples.empty()) throw DataError("no option pair survives the comparison filters");
  return est;
}

std::vector<CsfSample> estimate_csf_samples(const ingest::CloudOptionTable& table, const CostParams& nominal) {
  return estimate_csf(table, nominal).samples;
}

double percentile(std::span<const double> samples, double p) {
  if (samples.empty()) throw DomainError("percentile of an empty sample");
  if (!(p >= 0.0 && p <= 100.0)) throw DomainError("percentile must lie in [0, 100]");
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  const double h = (static_cast<double>(sorted.size()) - 1.0) * p / 100.0;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

void write_csf_samples(const std::vector<CsfSample>& samples, std::ostream& out) {
  out << "provider,device_type,fast_model,slow_model,A,csf\n";
  for (const auto& s : samples) {
    out << ingest::csv_escape(s.provider) << ',' << ingest::to_string(s.device_type) << ','
        << ingest::csv_escape(s.fast_model) << ',' << ingest::csv_escape(s.slow_model) << ','
        << format_number(s.price_reduction_coeff) << ',' << format_number(s.csf) << '\n';
  }
}

void write_csf_samples(const std::vector<CsfSample>& samples, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path.string());
  write_csf_samples(samples, out);
}

}  // namespace dcflex::scaling
