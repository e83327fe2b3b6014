#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace dcflex::ingest {

enum class DeviceType { cpu, gpu };

std::string to_string(DeviceType type);
DeviceType parse_device_type(const std::string& text);

/// A cloud rental option expressed per unit (one vCPU or one GPU).
struct CloudOption {
  std::string provider;
  DeviceType device_type = DeviceType::cpu;
  std::string model;
  int unit_count = 1;
  double unit_price = 0.0;    // money per unit-hour
  double unit_power_w = 0.0;  // rated watts per unit
  double speed = 0.0;         // CPU mark, or harmonic mean of GPU FP32/FP16
  bool estimated = false;     // unit count marked with '*'
};

struct CloudOptionTable {
  std::vector<CloudOption> options;
  std::size_t dropped = 0;  // rows without speed, price or power
};

/// Reads the 13-column pricing sheet (header row required):
///   Provider, Type, Model, Number of vCPU/GPU, Memory, Unit Price,
///   Total device price, CPU Score, GPU FP32, GPU FP16,
///   Unit Rated Power, Total Rated Power, Notes
/// Per-unit price and power are total / count when the total is given.
CloudOptionTable parse_cloud_pricing(const std::filesystem::path& path);

}  // namespace dcflex::ingest
