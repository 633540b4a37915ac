#include "focus/stack.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <string>
#include <thread>

#include "focus/error.hpp"

namespace focus {

FocusStack::FocusStack(std::vector<StackEntry> entries) : entries_(std::move(entries)) {
  if (entries_.size() < 2) {
    throw Error(ErrorCode::TooFewPoints, "a focus stack needs at least 2 entries, got " +
                                             std::to_string(entries_.size()));
  }
  const std::size_t w = entries_.front().image.width();
  const std::size_t h = entries_.front().image.height();
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    const StackEntry& e = entries_[i];
    if (!std::isfinite(e.position_mm)) {
      throw Error(ErrorCode::InvalidArgument, "non-finite position at entry " + std::to_string(i));
    }
    if (i > 0 && !(e.position_mm > entries_[i - 1].position_mm)) {
      throw Error(ErrorCode::NonIncreasingPositions,
                  "position at entry " + std::to_string(i) + " does not increase");
    }
    if (e.image.width() != w || e.image.height() != h) {
      throw Error(ErrorCode::InvalidArgument,
                  "entry " + std::to_string(i) + " has different image dimensions");
    }
  }
}

FocusCurve compute_curve(const FocusStack& stack, MetricId metric, const MetricConfig& config,
                         Execution execution) {
  const std::size_t n = stack.size();
  std::vector<double> scores(n, 0.0);
  std::vector<std::exception_ptr> failures(n);

  auto evaluate = [&](std::size_t i) {
    try {
      scores[i] = score(stack[i].image, metric, config);
    } catch (...) {
      failures[i] = std::current_exception();
    }
  };

  std::size_t workers = 1;
  if (execution == Execution::Parallel) {
    workers = std::min<std::size_t>(n, std::max(1u, std::thread::hardware_concurrency()));
  }
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) evaluate(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t t = 0; t < workers; ++t) {
      pool.emplace_back([&] {
        for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) evaluate(i);
      });
    }
  }

  for (std::size_t i = 0; i < n; ++i) {
    if (!failures[i]) continue;
    try {
      std::rethrow_exception(failures[i]);
    } catch (const Error& e) {
      throw Error(e.code(), "image " + std::to_string(i) + ": " + e.detail());
    }
  }

  FocusCurve curve{metric, {}};
  curve.points.reserve(n);
  for (std::size_t i = 0; i < n; ++i) curve.points.push_back({stack[i].position_mm, scores[i]});
  return curve;
}

BestFocus best_focus(const FocusCurve& curve) {
  if (curve.points.empty()) throw Error(ErrorCode::EmptyCurve, "curve has no points");
  std::size_t best = 0;
  for (std::size_t i = 1; i < curve.points.size(); ++i) {
    if (curve.points[i].score > curve.points[best].score) best = i;
  }
  return {curve.points[best].position_mm, best};
}

std::vector<double> smooth(const std::vector<double>& values, std::size_t width) {
  if (width % 2 == 0 || width == 0 || width > values.size()) {
    throw Error(ErrorCode::BadSmoothingWidth,
                "smoothing width must be odd and in [1, " + std::to_string(values.size()) + "]");
  }
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(values.size());
  const std::ptrdiff_t half = static_cast<std::ptrdiff_t>(width / 2);
  std::vector<double> out(values.size());
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    double sum = 0.0;
    for (std::ptrdiff_t k = -half; k <= half; ++k) sum += values[std::clamp(i + k, {}, n - 1)];
    out[i] = sum / static_cast<double>(width);
  }
  return out;
}

std::size_t count_local_maxima(const std::vector<double>& values) {
  std::size_t count = 0;
  const std::size_t n = values.size();
  std::size_t start = 0;
  while (start < n) {
    std::size_t end = start + 1;
    while (end < n && values[end] == values[start]) ++end;
    const bool has_left = start > 0;
    const bool has_right = end < n;
    const bool left_lower = !has_left || values[start - 1] < values[start];
    const bool right_lower = !has_right || values[end] < values[start];
    if ((has_left || has_right) && left_lower && right_lower) ++count;
    start = end;
  }
  return count;
}

CurveDiagnostics diagnose(const FocusCurve& curve, std::size_t smoothing_width) {
  const std::size_t n = curve.points.size();
  if (n < 3) throw Error(ErrorCode::TooFewPoints, "diagnose needs at least 3 points");

  std::vector<double> raw(n);
  for (std::size_t i = 0; i < n; ++i) raw[i] = curve.points[i].score;
  const std::vector<double> smoothed = smooth(raw, smoothing_width);

  CurveDiagnostics d;
  const BestFocus best = best_focus(curve);
  d.best_position = best.position_mm;
  d.best_index = best.index;
  d.local_maxima_count = count_local_maxima(smoothed);
  d.is_unimodal = d.local_maxima_count == 1;

  const std::size_t peak =
      static_cast<std::size_t>(std::max_element(smoothed.begin(), smoothed.end()) - smoothed.begin());
  double mean = 0.0;
  for (double v : smoothed) mean += v;
  mean /= static_cast<double>(n);
  d.peak_sharpness_ratio = mean == 0.0 ? 0.0 : smoothed[peak] / mean;

  std::size_t rising = 0;
  for (std::size_t i = 0; i < peak; ++i) rising += smoothed[i + 1] >= smoothed[i] ? 1 : 0;
  std::size_t falling = 0;
  for (std::size_t i = peak; i + 1 < n; ++i) falling += smoothed[i + 1] <= smoothed[i] ? 1 : 0;
  d.left_monotone_fraction = peak == 0 ? 1.0 : static_cast<double>(rising) / peak;
  d.right_monotone_fraction =
      peak + 1 == n ? 1.0 : static_cast<double>(falling) / static_cast<double>(n - 1 - peak);
  return d;
}

}  // namespace focus
