#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace focus {

// Read-only view of a row-major sample plane. Row index runs over the image
// height, column index over its width.
struct PlaneView {
  const double* data = nullptr;
  std::size_t rows = 0;
  std::size_t cols = 0;

  double at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
  const double* row(std::size_t r) const { return data + r * cols; }
};

/// Grayscale luminance image with samples in [0, 255], stored row-major as
/// doubles.
///
/// The constructor validates the invariants (non-empty, sample count equals
/// width * height, every sample finite and in range) and throws
/// focus::Error(InvalidArgument) otherwise, so a constructed GrayImage is
/// always valid.
class GrayImage {
 public:
  static constexpr double kMaxSample = 255.0;

  GrayImage(std::size_t width, std::size_t height, std::vector<double> samples);
  GrayImage(std::size_t width, std::size_t height, double fill);

  std::size_t width() const noexcept { return width_; }
  std::size_t height() const noexcept { return height_; }
  std::size_t size() const noexcept { return samples_.size(); }

  double at(std::size_t row, std::size_t col) const { return samples_[row * width_ + col]; }
  std::span<const double> samples() const noexcept { return samples_; }
  PlaneView view() const noexcept { return {samples_.data(), height_, width_}; }

  friend bool operator==(const GrayImage&, const GrayImage&) = default;

 private:
  std::size_t width_;
  std::size_t height_;
  std::vector<double> samples_;
};

}  // namespace focus
