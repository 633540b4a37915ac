#include "focus/image.hpp"

#include <cmath>
#include <string>

#include "focus/error.hpp"

namespace focus {

GrayImage::GrayImage(std::size_t width, std::size_t height, std::vector<double> samples)
    : width_(width), height_(height), samples_(std::move(samples)) {
  if (width_ == 0 || height_ == 0) {
    throw Error(ErrorCode::InvalidArgument, "image dimensions must be positive");
  }
  if (samples_.size() != width_ * height_) {
    throw Error(ErrorCode::InvalidArgument,
                "expected " + std::to_string(width_ * height_) + " samples, got " +
                    std::to_string(samples_.size()));
  }
  for (std::size_t i = 0; i < samples_.size(); ++i) {
    const double s = samples_[i];
    if (!std::isfinite(s) || s < 0.0 || s > kMaxSample) {
      throw Error(ErrorCode::InvalidArgument,
                  "sample " + std::to_string(i) + " outside [0, 255]: " + std::to_string(s));
    }
  }
}

GrayImage::GrayImage(std::size_t width, std::size_t height, double fill)
    : GrayImage(width, height, std::vector<double>(width * height, fill)) {}

}  // namespace focus
