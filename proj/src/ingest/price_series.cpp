#include "dcflex/ingest/price_series.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>

#include "dcflex/core/text.hpp"
#include "dcflex/core/types.hpp"
#include "dcflex/ingest/csv.hpp"

namespace dcflex::ingest {
namespace {

class Cursor {
 public:
  explicit Cursor(std::string_view text) : text_(text) {}

  int digits(std::size_t n) {
    if (pos_ + n > text_.size()) fail();
    int value = 0;
    for (std::size_t i = 0; i < n; ++i) {
      char c = text_[pos_ + i];
      if (c < '0' || c > '9') fail();
      value = value * 10 + (c - '0');
    }
    pos_ += n;
    return value;
  }
  void expect(char c) {
    if (!accept(c)) fail();
  }
  bool accept(char c) {
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  bool done() const { return pos_ == text_.size(); }
  bool digit_next() const { return pos_ < text_.size() && text_[pos_] >= '0' && text_[pos_] <= '9'; }
  [[noreturn]] void fail() const { throw DataError("bad ISO-8601 timestamp '" + std::string(text_) + "'"); }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

std::int64_t parse_iso8601(std::string_view text) {
  using namespace std::chrono;
  text = trim(text);
  Cursor c(text);
  int y = c.digits(4);
  c.expect('-');
  int mo = c.digits(2);
  c.expect('-');
  int d = c.digits(2);
  year_month_day ymd{year{y}, month{static_cast<unsigned>(mo)}, day{static_cast<unsigned>(d)}};
  if (!ymd.ok()) c.fail();
  std::int64_t secs = sys_days{ymd}.time_since_epoch() / seconds{1};
  if (c.done()) return secs;
  if (!c.accept('T') && !c.accept(' ')) c.fail();
  int hh = c.digits(2);
  c.expect(':');
  int mm = c.digits(2);
  int ss = 0;
  if (c.accept(':')) {
    ss = c.digits(2);
    if (c.accept('.')) {
      c.digits(1);
      while (c.digit_next()) c.digits(1);  // sub-second part is ignored
    }
  }
  if (hh > 23 || mm > 59 || ss > 60) c.fail();
  secs += hh * 3600 + mm * 60 + ss;
  if (c.done() || c.accept('Z')) {
    if (!c.done()) c.fail();
    return secs;
  }
  int sign = 0;
  if (c.accept('+')) sign = 1;
  else if (c.accept('-')) sign = -1;
  else c.fail();
  int oh = c.digits(2);
  c.accept(':');
  int om = c.digits(2);
  if (!c.done()) c.fail();
  return secs - sign * (oh * 3600 + om * 60);
}

PriceSeries parse_price_series(const std::filesystem::path& path, double currency_rate, std::string market,
                               std::string currency) {
  if (!(currency_rate > 0.0) || !std::isfinite(currency_rate)) throw DomainError("currency rate must be positive");
  CsvTable csv = read_csv(path, false);
  PriceSeries series;
  series.market = market.empty() ? path.stem().string() : std::move(market);
  series.currency = std::move(currency);
  for (std::size_t r = 0; r < csv.rows.size(); ++r) {
    const auto& f = csv.rows[r];
    const std::string where = path.string() + ":" + std::to_string(csv.line_numbers[r]);
    if (r == 0 && !f.empty() && f[0].rfind("timestamp", 0) == 0) continue;  // header
    if (f.size() < 2) throw DataError(where + ": expected timestamp,price");
    auto price = parse_number(f[1]);
    if (!price || !std::isfinite(*price)) throw DataError(where + ": non-numeric price '" + f[1] + "'");
    std::int64_t when = 0;
    try {
      when = parse_iso8601(f[0]);
    } catch (const DataError& e) {
      throw DataError(where + ": " + e.what());
    }
    series.samples.push_back(PriceSample{f[0], when, *price * currency_rate});
  }
  if (series.samples.empty()) throw DataError(path.string() + ": price series is empty");
  std::stable_sort(series.samples.begin(), series.samples.end(),
                   [](const PriceSample& a, const PriceSample& b) { return a.unix_s < b.unix_s; });
  return series;
}

}  // namespace dcflex::ingest
