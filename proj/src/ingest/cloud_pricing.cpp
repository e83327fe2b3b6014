#include "dcflex/ingest/cloud_pricing.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <optional>

#include "dcflex/core/text.hpp"
#include "dcflex/core/types.hpp"
#include "dcflex/ingest/csv.hpp"

namespace dcflex::ingest {
namespace {

enum Col : std::size_t {
  kProvider, kType, kModel, kCount, kMemory, kUnitPrice, kTotalPrice,
  kCpuScore, kGpuFp32, kGpuFp16, kUnitPower, kTotalPower, kNotes
};

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

std::optional<double> positive(const std::string& text) {
  std::string cleaned;
  for (char c : text) {
    if (c != '$' && c != ',') cleaned.push_back(c);
  }
  auto v = parse_number(cleaned);
  if (!v || !std::isfinite(*v) || *v <= 0.0) return std::nullopt;
  return v;
}

}  // namespace

std::string to_string(DeviceType type) { return type == DeviceType::cpu ? "cpu" : "gpu"; }

DeviceType parse_device_type(const std::string& text) {
  auto t = lower(std::string(trim(text)));
  if (t == "cpu") return DeviceType::cpu;
  if (t == "gpu") return DeviceType::gpu;
  throw DomainError("unknown device type '" + text + "'");
}

CloudOptionTable parse_cloud_pricing(const std::filesystem::path& path) {
  CsvTable csv = read_csv(path, true);
  if (csv.header.size() < kNotes) {
    throw DataError(path.string() + ": expected 13 pricing columns, header has " +
                    std::to_string(csv.header.size()));
  }
  CloudOptionTable table;
  for (std::size_t r = 0; r < csv.rows.size(); ++r) {
    const auto& f = csv.rows[r];
    const std::string where = path.string() + ":" + std::to_string(csv.line_numbers[r]);
    if (f.size() < kNotes) throw DataError(where + ": malformed pricing row");

    CloudOption opt;
    opt.provider = f[kProvider];
    try {
      opt.device_type = parse_device_type(f[kType]);
    } catch (const DomainError&) {
      throw DataError(where + ": unknown device type '" + f[kType] + "'");
    }
    opt.model = f[kModel];

    std::string count = f[kCount];
    if (auto star = count.find('*'); star != std::string::npos) {
      opt.estimated = true;
      count.erase(star, 1);
    }
    auto n = parse_number(count);
    if (!n || *n != std::floor(*n) || *n < 0.0) throw DataError(where + ": bad unit count '" + f[kCount] + "'");
    if (*n == 0.0) throw DataError(where + ": zero unit count");
    opt.unit_count = static_cast<int>(*n);

    auto total_price = positive(f[kTotalPrice]);
    auto unit_price = positive(f[kUnitPrice]);
    auto total_power = positive(f[kTotalPower]);
    auto unit_power = positive(f[kUnitPower]);
    std::optional<double> speed;
    if (opt.device_type == DeviceType::cpu) {
      speed = positive(f[kCpuScore]);
    } else {
      auto fp32 = positive(f[kGpuFp32]);
      auto fp16 = positive(f[kGpuFp16]);
      if (fp32 && fp16) speed = 2.0 * *fp32 * *fp16 / (*fp32 + *fp16);
    }
    if (!speed || !(total_price || unit_price) || !(total_power || unit_power)) {
      ++table.dropped;
      continue;
    }
    opt.unit_price = total_price ? *total_price / opt.unit_count : *unit_price;
    opt.unit_power_w = total_power ? *total_power / opt.unit_count : *unit_power;
    opt.speed = *speed;
    table.options.push_back(std::move(opt));
  }
  return table;
}

}  // namespace dcflex::ingest
