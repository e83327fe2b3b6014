#include "dcflex/prep/kmeans.hpp"

#include <limits>
#include <random>

#include "dcflex/core/types.hpp"

namespace dcflex::prep {
namespace {

double dist2(const Point2& a, const Point2& b) {
  double dx = a[0] - b[0], dy = a[1] - b[1];
  return dx * dx + dy * dy;
}

std::vector<Point2> seed_centers(const std::vector<Point2>& points, int k, std::mt19937_64& rng) {
  std::vector<Point2> centers;
  std::uniform_int_distribution<std::size_t> first(0, points.size() - 1);
  centers.push_back(points[first(rng)]);
  std::vector<double> d2(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) d2[i] = dist2(points[i], centers[0]);
  while (static_cast<int>(centers.size()) < k) {
    double total = 0.0;
    for (double v : d2) total += v;
    if (total <= 0.0) break;
    std::uniform_real_distribution<double> pick(0.0, total);
    double target = pick(rng);
    std::size_t chosen = points.size() - 1;
    double acc = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
      acc += d2[i];
      if (d2[i] > 0.0 && acc >= target) {
        chosen = i;
        break;
      }
    }
    while (d2[chosen] <= 0.0) --chosen;  // guard against rounding at the tail
    centers.push_back(points[chosen]);
    for (std::size_t i = 0; i < points.size(); ++i) d2[i] = std::min(d2[i], dist2(points[i], centers.back()));
  }
  return centers;
}

}  // namespace

std::vector<int> kmeans(const std::vector<Point2>& points, const KMeansOptions& options) {
  if (options.clusters < 1) throw DomainError("k-means needs at least one cluster");
  std::vector<int> labels(points.size(), 0);
  if (points.empty()) return labels;

  std::mt19937_64 rng(options.seed);
  std::vector<Point2> centers = seed_centers(points, options.clusters, rng);
  const std::size_t k = centers.size();

  for (int iter = 0; iter < options.max_iterations; ++iter) {
    bool changed = iter == 0;
    for (std::size_t i = 0; i < points.size(); ++i) {
      int best = 0;
      double best_d = std::numeric_limits<double>::infinity();
      for (std::size_t c = 0; c < k; ++c) {
        double d = dist2(points[i], centers[c]);
        if (d < best_d) {
          best_d = d;
          best = static_cast<int>(c);
        }
      }
      if (labels[i] != best) {
        labels[i] = best;
        changed = true;
      }
    }
    if (!changed) break;
    std::vector<Point2> sums(k, Point2{0.0, 0.0});
    std::vector<std::size_t> counts(k, 0);
    for (std::size_t i = 0; i < points.size(); ++i) {
      auto c = static_cast<std::size_t>(labels[i]);
      sums[c][0] += points[i][0];
      sums[c][1] += points[i][1];
      ++counts[c];
    }
    for (std::size_t c = 0; c < k; ++c) {
      if (counts[c] > 0) centers[c] = {sums[c][0] / counts[c], sums[c][1] / counts[c]};
    }
  }
  return labels;
}

}  // namespace dcflex::prep
