#include "focus/bench.hpp"

#include <algorithm>
#include <numeric>
#include <vector>

#include "focus/error.hpp"

namespace focus {
namespace {

template <class T>
inline void do_not_optimize(T& value) {
#if defined(__GNUC__) || defined(__clang__)
  asm volatile("" : "+m"(value) : : "memory");
#else
  volatile T sink = value;
  (void)sink;
#endif
}

}  // namespace

TimingReport time_metric(const GrayImage& img, MetricId metric, const MetricConfig& config,
                         std::size_t repetitions) {
  if (repetitions == 0) throw Error(ErrorCode::InvalidArgument, "repetitions must be >= 1");
  using Clock = std::chrono::steady_clock;

  double result = 0.0;
  for (std::size_t i = 0; i < kWarmupRuns; ++i) {
    result = score(img, metric, config);
    do_not_optimize(result);
  }

  std::vector<TimingReport::Duration> samples;
  samples.reserve(repetitions);
  for (std::size_t i = 0; i < repetitions; ++i) {
    const auto start = Clock::now();
    result = score(img, metric, config);
    do_not_optimize(result);
    const auto stop = Clock::now();
    samples.emplace_back(stop - start);
  }

  std::sort(samples.begin(), samples.end());
  const std::size_t mid = samples.size() / 2;
  TimingReport report;
  report.metric = metric;
  report.width = img.width();
  report.height = img.height();
  report.repetitions = repetitions;
  report.min = samples.front();
  report.median = samples.size() % 2 == 1 ? samples[mid] : (samples[mid - 1] + samples[mid]) / 2.0;
  report.mean = std::accumulate(samples.begin(), samples.end(), TimingReport::Duration{}) /
                static_cast<double>(samples.size());
  report.mean = std::max(report.mean, report.min);  // guard summation rounding
  report.checksum = result;
  return report;
}

}  // namespace focus
