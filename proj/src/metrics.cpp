#include "focus/metrics.hpp"

#include <cmath>
#include <string>

#include "focus/error.hpp"
#include "focus/kernels.hpp"

namespace focus {
namespace {

void require_min_dims(const GrayImage& img, std::size_t min_side, std::string_view what) {
  if (img.width() < min_side || img.height() < min_side) {
    throw Error(ErrorCode::ImageTooSmall,
                std::string(what) + " needs at least " + std::to_string(min_side) + "x" +
                    std::to_string(min_side) + " pixels, got " + std::to_string(img.width()) +
                    "x" + std::to_string(img.height()));
  }
}

void require_threshold(double threshold, std::string_view what) {
  if (!std::isfinite(threshold) || threshold < 0.0) {
    throw Error(ErrorCode::InvalidArgument,
                std::string(what) + " threshold must be finite and non-negative");
  }
}

void require_sml_geometry(std::size_t width, std::size_t height, std::size_t step) {
  if (step < 1) throw Error(ErrorCode::InvalidStep, "sml step must be >= 1");
  if (width <= 2 * step || height <= 2 * step) {
    throw Error(ErrorCode::ImageTooSmall, "sml with step " + std::to_string(step) +
                                              " needs width and height > " +
                                              std::to_string(2 * step));
  }
}

}  // namespace

std::string_view to_string(MetricId id) {
  switch (id) {
    case MetricId::Variance: return "variance";
    case MetricId::Eog: return "eog";
    case MetricId::Tenengrad: return "tenengrad";
    case MetricId::Eol: return "eol";
    case MetricId::Sml: return "sml";
    case MetricId::Crete: return "crete";
  }
  return "unknown";
}

std::optional<MetricId> parse_metric(std::string_view name) {
  for (MetricId id : kAllMetrics) {
    if (to_string(id) == name) return id;
  }
  return std::nullopt;
}

void MetricConfig::validate() const {
  require_threshold(tenengrad_threshold, "tenengrad");
  require_threshold(sml_threshold, "sml");
  if (sml_step < 1) throw Error(ErrorCode::InvalidStep, "sml step must be >= 1");
}

double variance(const GrayImage& img) { return kernels::active().variance(img.view()); }

double eog(const GrayImage& img) {
  require_min_dims(img, 2, "eog");
  return kernels::active().eog(img.view());
}

double tenengrad(const GrayImage& img, double threshold) {
  require_min_dims(img, 3, "tenengrad");
  require_threshold(threshold, "tenengrad");
  return kernels::active().tenengrad(img.view(), threshold);
}

double eol(const GrayImage& img) {
  require_min_dims(img, 3, "eol");
  return kernels::active().eol(img.view());
}

double sml(const GrayImage& img, double threshold, std::size_t step) {
  require_threshold(threshold, "sml");
  require_sml_geometry(img.width(), img.height(), step);
  return kernels::active().sml(img.view(), threshold, step);
}

double crete_sharpness(const GrayImage& img) {
  require_min_dims(img, 2, "crete");
  return kernels::active().crete(img.view());
}

double score(const GrayImage& img, MetricId metric, const MetricConfig& config) {
  switch (metric) {
    case MetricId::Variance: return variance(img);
    case MetricId::Eog: return eog(img);
    case MetricId::Tenengrad: return tenengrad(img, config.tenengrad_threshold);
    case MetricId::Eol: return eol(img);
    case MetricId::Sml: return sml(img, config.sml_threshold, config.sml_step);
    case MetricId::Crete: return crete_sharpness(img);
  }
  throw Error(ErrorCode::InvalidArgument, "unknown metric");
}

void check_preconditions(std::size_t width, std::size_t height, MetricId metric,
                         const MetricConfig& config) {
  config.validate();
  auto need = [&](std::size_t side) {
    if (width < side || height < side) {
      throw Error(ErrorCode::ImageTooSmall, std::string(to_string(metric)) + " needs at least " +
                                                std::to_string(side) + "x" +
                                                std::to_string(side) + " pixels");
    }
  };
  switch (metric) {
    case MetricId::Variance: need(1); break;
    case MetricId::Eog:
    case MetricId::Crete: need(2); break;
    case MetricId::Tenengrad:
    case MetricId::Eol: need(3); break;
    case MetricId::Sml: require_sml_geometry(width, height, config.sml_step); break;
  }
}

}  // namespace focus
