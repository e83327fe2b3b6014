#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace dcflex::ingest {

struct PriceSample {
  std::string timestamp;  // as written in the file
  std::int64_t unix_s = 0;
  double price = 0.0;     // money per kWh after conversion
};

struct PriceSeries {
  std::string market;
  std::string currency = "USD";
  std::vector<PriceSample> samples;  // ascending by time
};

/// Seconds since the epoch for "YYYY-MM-DD[(T| )hh:mm[:ss[.fff]]][Z|(+|-)hh[:]mm]".
/// Throws DataError on anything else.
std::int64_t parse_iso8601(std::string_view text);

/// Reads `timestamp_iso8601,price` rows (an optional header line is skipped)
/// and multiplies every price by `currency_rate`. The market name defaults to
/// the file stem.
PriceSeries parse_price_series(const std::filesystem::path& path, double currency_rate = 1.0,
                               std::string market = {}, std::string currency = "USD");

}  // namespace dcflex::ingest
