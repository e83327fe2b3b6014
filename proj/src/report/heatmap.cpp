#include "dcflex/report/heatmap.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "dcflex/core/text.hpp"
#include "dcflex/solve/campaign_io.hpp"

namespace dcflex::report {
namespace {

constexpr int kCell = 72;
constexpr int kLeft = 96;
constexpr int kTop = 64;

std::string label(double v) {
  std::ostringstream ss;
  ss.precision(4);
  ss << v;
  return ss.str();
}

std::string escape(const std::string& text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

// Linear white to dark blue.
std::string color(double t) {
  t = std::clamp(t, 0.0, 1.0);
  auto mix = [t](int a, int b) { return static_cast<int>(std::lround(a + (b - a) * t)); };
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", mix(247, 8), mix(251, 48), mix(255, 107));
  return buf;
}

}  // namespace

std::vector<Panel> make_panels(const solve::CampaignResult& grid, const std::string& metric) {
  const auto& names = solve::cell_metrics();
  if (std::find(names.begin(), names.end(), metric) == names.end()) {
    throw DomainError("unknown metric '" + metric + "'");
  }
  if (grid.cells.empty()) throw DomainError("grid has no cells");

  std::set<std::pair<double, std::optional<double>>> groups;
  std::set<double> durations, frequencies;
  for (const auto& [key, cell] : grid.cells) {
    groups.insert({key.max_delay, key.fraction_pct});
    durations.insert(key.duration_hours);
    frequencies.insert(key.annual_frequency);
  }
  std::vector<Panel> panels;
  for (const auto& [delay, fraction] : groups) {
    Panel p;
    p.max_delay = delay;
    p.fraction_pct = fraction;
    p.durations.assign(durations.begin(), durations.end());
    p.frequencies.assign(frequencies.begin(), frequencies.end());
    double sum = 0.0;
    int n = 0;
    for (double f : p.frequencies) {
      std::vector<std::optional<double>> row;
      for (double d : p.durations) {
        auto it = grid.cells.find(solve::CellKey{d, f, delay, fraction});
        if (it == grid.cells.end() || it->second.windows_evaluated == 0) {
          row.push_back(std::nullopt);
          continue;
        }
        double v = solve::cell_metric(it->second, metric);
        row.push_back(v);
        p.min = n == 0 ? v : std::min(p.min, v);
        p.max = n == 0 ? v : std::max(p.max, v);
        sum += v;
        ++n;
      }
      p.values.push_back(std::move(row));
    }
    if (n > 0) p.mean = sum / n;
    panels.push_back(std::move(p));
  }
  return panels;
}

std::string render_svg(const Panel& p, const std::string& metric) {
  const int cols = static_cast<int>(p.durations.size());
  const int rows = static_cast<int>(p.frequencies.size());
  const int width = kLeft + cols * kCell + 24;
  const int height = kTop + rows * kCell + 72;
  std::ostringstream s;
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
    << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  s << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  std::string title = escape(metric) + ", max delay " + label(p.max_delay);
  if (p.fraction_pct) title += ", " + label(*p.fraction_pct) + "% of maximum";
  s << "<text x=\"" << kLeft << "\" y=\"20\" font-size=\"14\">" << title << "</text>\n";
  s << "<text x=\"" << kLeft << "\" y=\"40\">min " << label(p.min) << "  max " << label(p.max) << "  mean "
    << label(p.mean) << "</text>\n";

  const double span = p.max - p.min;
  for (int r = 0; r < rows; ++r) {
    // Highest frequency on top.
    const int y = kTop + (rows - 1 - r) * kCell;
    for (int c = 0; c < cols; ++c) {
      const int x = kLeft + c * kCell;
      const auto& v = p.values[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
      const double t = v && span > 0.0 ? (*v - p.min) / span : 0.0;
      s << "<rect x=\"" << x << "\" y=\"" << y << "\" width=\"" << kCell << "\" height=\"" << kCell << "\" fill=\""
        << (v ? color(t) : std::string("#dddddd")) << "\" stroke=\"white\"/>\n";
      s << "<text x=\"" << x + kCell / 2 << "\" y=\"" << y + kCell / 2 + 4 << "\" text-anchor=\"middle\" fill=\""
        << (t > 0.5 ? "white" : "black") << "\">" << (v ? label(*v) : std::string("n/a")) << "</text>\n";
    }
    s << "<text x=\"" << kLeft - 6 << "\" y=\"" << y + kCell / 2 + 4 << "\" text-anchor=\"end\">"
      << label(p.frequencies[static_cast<std::size_t>(r)]) << "</text>\n";
  }
  const int axis_y = kTop + rows * kCell;
  for (int c = 0; c < cols; ++c) {
    s << "<text x=\"" << kLeft + c * kCell + kCell / 2 << "\" y=\"" << axis_y + 16 << "\" text-anchor=\"middle\">"
      << label(p.durations[static_cast<std::size_t>(c)]) << "</text>\n";
  }
  s << "<text x=\"" << kLeft + cols * kCell / 2 << "\" y=\"" << axis_y + 40
    << "\" text-anchor=\"middle\">duration (hours)</text>\n";
  s << "<text transform=\"translate(18," << kTop + rows * kCell / 2
    << ") rotate(-90)\" text-anchor=\"middle\">frequency (times/year)</text>\n";
  s << "</svg>\n";
  return s.str();
}

HeatmapFiles heatmap_export(const solve::CampaignResult& grid, const std::string& metric,
                            const std::filesystem::path& out_prefix) {
  std::vector<Panel> panels = make_panels(grid, metric);
  HeatmapFiles files;
  if (out_prefix.has_parent_path()) std::filesystem::create_directories(out_prefix.parent_path());
  files.csv = out_prefix.string() + ".csv";
  solve::write_campaign_csv(grid, files.csv);
  for (const auto& p : panels) {
    std::string name = out_prefix.string() + "_" + metric + "_delay" + format_number(p.max_delay);
    if (p.fraction_pct) name += "_frac" + format_number(*p.fraction_pct);
    std::filesystem::path path = name + ".svg";
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write " + path.string());
    out << render_svg(p, metric);
    files.svgs.push_back(path);
  }
  return files;
}

}  // namespace dcflex::report
