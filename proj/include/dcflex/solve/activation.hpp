#pragma once

#include <cstdint>

#include "dcflex/core/types.hpp"

namespace dcflex::solve {

/// Draws `count` disjoint windows of `duration_steps` consecutive steps inside
/// [1, steps]. Every feasible placement is equally likely. Throws DomainError
/// when the windows cannot fit.
ActivationPlan sample_activations(int steps, int count, int duration_steps, std::uint64_t seed);

inline ActivationPlan sample_activations(const TimeGrid& grid, int count, int duration_steps, std::uint64_t seed) {
  return sample_activations(grid.steps, count, duration_steps, seed);
}

}  // namespace dcflex::solve
