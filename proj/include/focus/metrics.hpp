#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string_view>

#include "focus/image.hpp"

namespace focus {

enum class MetricId { Variance, Eog, Tenengrad, Eol, Sml, Crete };

inline constexpr std::array<MetricId, 6> kAllMetrics = {
    MetricId::Variance, MetricId::Eog, MetricId::Tenengrad,
    MetricId::Eol,      MetricId::Sml, MetricId::Crete};

// CLI names: variance, eog, tenengrad, eol, sml, crete.
std::string_view to_string(MetricId id);
std::optional<MetricId> parse_metric(std::string_view name);

struct MetricConfig {
  // Lengths of the averaging filters used to re-blur the image in the
  // Crete measure. Not configurable.
  static constexpr std::size_t kCreteFilterLen = 9;

  double tenengrad_threshold = 0.0;
  double sml_threshold = 0.0;
  std::size_t sml_step = 1;

  // Throws Error(InvalidArgument / InvalidStep) for negative or non-finite
  // thresholds or a zero step.
  void validate() const;
};

// Population variance of all samples.
double variance(const GrayImage& img);

// Energy of gradient: sum of squared forward differences along rows and
// columns, over every pixel that has both a lower and a right neighbour.
// Requires width, height >= 2.
double eog(const GrayImage& img);

// Sum of squared Sobel gradient magnitudes over the interior (1-pixel border
// excluded), counting only pixels whose magnitude is strictly above
// `threshold`. Requires width, height >= 3.
double tenengrad(const GrayImage& img, double threshold);

// Energy of the Laplacian with kernel
//   -1 -4 -1
//   -4 20 -4
//   -1 -4 -1
// summed over the interior. Requires width, height >= 3.
double eol(const GrayImage& img);

// Sum-modified Laplacian over every pixel whose four neighbours at distance
// `step` exist, counting values >= `threshold`. The summation window is the
// whole image. Requires step >= 1 and width, height > 2 * step.
double sml(const GrayImage& img, double threshold, std::size_t step);

// No-reference sharpness S = 1 - max(Bi_v, Bi_h) in [0, 1], built from the
// image and its 9-tap averaging re-blur in each direction. "Vertical" means
// differences between consecutive rows. Returns 0 when a direction has no
// variation at all. Requires width, height >= 2.
double crete_sharpness(const GrayImage& img);

// Uniform dispatch; higher is sharper for every metric.
double score(const GrayImage& img, MetricId metric, const MetricConfig& config);

// Throws the error `score` would throw for these dimensions, without scoring.
void check_preconditions(std::size_t width, std::size_t height, MetricId metric,
                         const MetricConfig& config);

}  // namespace focus
