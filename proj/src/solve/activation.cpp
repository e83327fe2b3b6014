#include "dcflex/solve/activation.hpp"

#include <algorithm>
#include <limits>
#include <random>
#include <set>

namespace dcflex::solve {
namespace {

// Uniform integer in [0, n) by rejection; independent of the standard
// library's distribution implementation.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % n;
  for (;;) {
    std::uint64_t v = rng();
    if (v < limit) return v % n;
  }
}

}  // namespace

ActivationPlan sample_activations(int steps, int count, int duration_steps, std::uint64_t seed) {
  if (count < 0 || duration_steps < 1 || steps < 1) {
    throw DomainError("activation count must be non-negative and duration positive");
  }
  const long long used = static_cast<long long>(count) * duration_steps;
  if (used > steps) {
    throw DomainError("cannot place " + std::to_string(count) + " windows of " + std::to_string(duration_steps) +
                      " steps in " + std::to_string(steps) + " steps");
  }
  ActivationPlan plan;
  if (count == 0) return plan;

  // Placements of k blocks biject with k-subsets of {0, ..., slack + k - 1}.
  const std::uint64_t n = static_cast<std::uint64_t>(steps - used + count);
  const auto k = static_cast<std::uint64_t>(count);
  std::mt19937_64 rng(seed);
  std::set<std::uint64_t> chosen;  // Floyd's algorithm
  for (std::uint64_t j = n - k; j < n; ++j) {
    std::uint64_t t = uniform_below(rng, j + 1);
    if (!chosen.insert(t).second) chosen.insert(j);
  }
  int i = 0;
  for (std::uint64_t q : chosen) {
    int first = static_cast<int>(q) + i * (duration_steps - 1) + 1;
    plan.windows.push_back({first, first + duration_steps - 1});
    ++i;
  }
  return plan;
}

}  // namespace dcflex::solve
