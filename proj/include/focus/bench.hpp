#pragma once

#include <chrono>
#include <cstddef>

#include "focus/image.hpp"
#include "focus/metrics.hpp"

namespace focus {

struct TimingReport {
  using Duration = std::chrono::duration<double, std::micro>;

  MetricId metric = MetricId::Eog;
  std::size_t width = 0;
  std::size_t height = 0;
  std::size_t repetitions = 0;
  Duration median{};
  Duration min{};
  Duration mean{};
  // Score of the last timed run, so the metric call cannot be optimised away.
  double checksum = 0.0;
};

inline constexpr std::size_t kWarmupRuns = 3;
inline constexpr std::size_t kDefaultRepetitions = 100;

// Runs the metric kWarmupRuns times untimed, then `repetitions` timed runs.
// Throws Error(InvalidArgument) when repetitions == 0.
TimingReport time_metric(const GrayImage& img, MetricId metric, const MetricConfig& config,
                         std::size_t repetitions);

}  // namespace focus
