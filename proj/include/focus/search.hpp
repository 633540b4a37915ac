#pragma once

#include <cstddef>
#include <vector>

#include "focus/metrics.hpp"
#include "focus/stack.hpp"

namespace focus {

struct SearchTrace {
  std::vector<std::size_t> probed_indices;  // in probe order, no duplicates
  std::size_t chosen_index = 0;
  std::size_t evaluations = 0;
};

// Scores every position in order and picks the maximum (lowest index on ties).
SearchTrace full_sweep(const FocusStack& stack, MetricId metric, const MetricConfig& config);

// Probes every `coarse_step`-th index plus the last one, then every unprobed
// index strictly between the coarse neighbours of the best coarse probe.
// Matches full_sweep on unimodal curves. Throws Error(BadStep) unless
// 2 <= coarse_step < stack.size().
SearchTrace coarse_to_fine(const FocusStack& stack, MetricId metric, const MetricConfig& config,
                           std::size_t coarse_step);

}  // namespace focus
