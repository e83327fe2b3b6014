#pragma once

#include <array>
#include <cstdint>
#include <vector>

namespace dcflex::prep {

using Point2 = std::array<double, 2>;

struct KMeansOptions {
  int clusters = 100;
  int max_iterations = 50;
  std::uint64_t seed = 0;
};

/// Lloyd's algorithm with k-means++ seeding. Returns one label per point.
///
/// Seeding stops early once every point coincides with a chosen center, so
/// the number of distinct labels never exceeds the number of distinct points.
/// Assignment ties go to the lowest center index; empty clusters are left
/// empty (callers drop them).
std::vector<int> kmeans(const std::vector<Point2>& points, const KMeansOptions& options);

}  // namespace dcflex::prep
