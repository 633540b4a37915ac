#pragma once

#include <cstddef>
#include <vector>

#include "focus/image.hpp"
#include "focus/metrics.hpp"

namespace focus {

struct StackEntry {
  double position_mm;
  GrayImage image;
};

/// Images of one scene at successive lens positions.
///
/// Invariants (checked on construction, Error(InvalidArgument) /
/// Error(NonIncreasingPositions) / Error(TooFewPoints)): at least two
/// entries, strictly increasing finite positions, identical dimensions.
class FocusStack {
 public:
  explicit FocusStack(std::vector<StackEntry> entries);

  std::size_t size() const noexcept { return entries_.size(); }
  const StackEntry& operator[](std::size_t i) const { return entries_[i]; }
  const std::vector<StackEntry>& entries() const noexcept { return entries_; }
  std::size_t width() const { return entries_.front().image.width(); }
  std::size_t height() const { return entries_.front().image.height(); }

 private:
  std::vector<StackEntry> entries_;
};

struct CurvePoint {
  double position_mm;
  double score;

  friend bool operator==(const CurvePoint&, const CurvePoint&) = default;
};

struct FocusCurve {
  MetricId metric = MetricId::Eog;
  std::vector<CurvePoint> points;

  friend bool operator==(const FocusCurve&, const FocusCurve&) = default;
};

enum class Execution { Sequential, Parallel };

// Scores every image of the stack. Parallel execution assigns images to worker
// threads but the result is identical to the sequential one. Metric errors are
// rethrown with the index of the first failing image in the message.
FocusCurve compute_curve(const FocusStack& stack, MetricId metric, const MetricConfig& config,
                         Execution execution = Execution::Parallel);

struct BestFocus {
  double position_mm;
  std::size_t index;
};

// Global maximum, lowest index on ties. Throws Error(EmptyCurve).
BestFocus best_focus(const FocusCurve& curve);

struct CurveDiagnostics {
  double best_position = 0.0;
  std::size_t best_index = 0;
  std::size_t local_maxima_count = 0;
  bool is_unimodal = false;
  double peak_sharpness_ratio = 0.0;
  double left_monotone_fraction = 1.0;
  double right_monotone_fraction = 1.0;
};

inline constexpr std::size_t kDefaultSmoothingWidth = 3;

// Centered moving average of odd `width` with replicated ends.
std::vector<double> smooth(const std::vector<double>& values, std::size_t width);

// Number of local maxima of `values`. A run of equal values counts once when
// every existing neighbour of the run is strictly lower; the sequence ends do
// not count as neighbours, so a constant sequence has no maximum.
std::size_t count_local_maxima(const std::vector<double>& values);

// Quality summary of a focus curve. best_position/best_index come from the raw
// scores; everything else from the smoothed scores. Requires >= 3 points
// (Error(TooFewPoints)) and an odd width in [1, point count]
// (Error(BadSmoothingWidth)).
CurveDiagnostics diagnose(const FocusCurve& curve, std::size_t smoothing_width);

}  // namespace focus
