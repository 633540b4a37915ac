// Portable reference kernels. These define the results the SIMD variants are
// tested against.

#include <algorithm>
#include <cmath>
#include <cstddef>

#include "focus/kernels.hpp"
#include "kernels/common.hpp"

namespace focus::kernels {
namespace {

double variance_scalar(PlaneView img) {
  const std::size_t n = img.rows * img.cols;
  // Deviations are taken from the first sample so a constant image yields
  // exactly zero regardless of how its mean rounds.
  const double pivot = img.data[0];
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) sum += img.data[i] - pivot;
  const double mean = sum / static_cast<double>(n);
  double ss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = (img.data[i] - pivot) - mean;
    ss += d * d;
  }
  return ss / static_cast<double>(n);
}

double eog_scalar(PlaneView img) {
  double sum = 0.0;
  for (std::size_t r = 0; r + 1 < img.rows; ++r) {
    const double* row = img.row(r);
    const double* below = img.row(r + 1);
    for (std::size_t c = 0; c + 1 < img.cols; ++c) {
      const double fx = below[c] - row[c];
      const double fy = row[c + 1] - row[c];
      sum += fx * fx + fy * fy;
    }
  }
  return sum;
}

double tenengrad_scalar(PlaneView img, double threshold) {
  double sum = 0.0;
  for (std::size_t r = 1; r + 1 < img.rows; ++r) {
    const double* up = img.row(r - 1);
    const double* mid = img.row(r);
    const double* dn = img.row(r + 1);
    for (std::size_t c = 1; c + 1 < img.cols; ++c) {
      const double gx = (up[c + 1] + 2.0 * mid[c + 1] + dn[c + 1]) -
                        (up[c - 1] + 2.0 * mid[c - 1] + dn[c - 1]);
      const double gy = (dn[c - 1] + 2.0 * dn[c] + dn[c + 1]) -
                        (up[c - 1] + 2.0 * up[c] + up[c + 1]);
      const double g2 = gx * gx + gy * gy;
      if (std::sqrt(g2) > threshold) sum += g2;
    }
  }
  return sum;
}

double eol_scalar(PlaneView img) {
  double sum = 0.0;
  for (std::size_t r = 1; r + 1 < img.rows; ++r) {
    const double* up = img.row(r - 1);
    const double* mid = img.row(r);
    const double* dn = img.row(r + 1);
    for (std::size_t c = 1; c + 1 < img.cols; ++c) {
      // Written as differences from the center so flat regions cancel exactly.
      const double m = mid[c];
      const double edges = (m - up[c]) + (m - dn[c]) + (m - mid[c - 1]) + (m - mid[c + 1]);
      const double corners = (m - up[c - 1]) + (m - up[c + 1]) + (m - dn[c - 1]) + (m - dn[c + 1]);
      const double response = 4.0 * edges + corners;
      sum += response * response;
    }
  }
  return sum;
}

double sml_scalar(PlaneView img, double threshold, std::size_t step) {
  double sum = 0.0;
  for (std::size_t r = step; r + step < img.rows; ++r) {
    const double* up = img.row(r - step);
    const double* mid = img.row(r);
    const double* dn = img.row(r + step);
    for (std::size_t c = step; c + step < img.cols; ++c) {
      const double twice = 2.0 * mid[c];
      const double ml = std::abs(twice - mid[c - step] - mid[c + step]) +
                        std::abs(twice - up[c] - dn[c]);
      if (ml >= threshold) sum += ml;
    }
  }
  return sum;
}

// The 9-tap box re-blur never has to be materialised: with replicated edges,
// b(i) - b(i-1) = (I(min(i+4, n-1)) - I(max(i-5, 0))) / 9 along the blurred
// axis.
double crete_scalar(PlaneView img) {
  const std::ptrdiff_t rows = static_cast<std::ptrdiff_t>(img.rows);
  const std::ptrdiff_t cols = static_cast<std::ptrdiff_t>(img.cols);
  double si_v = 0.0, sv_v = 0.0, si_h = 0.0, sv_h = 0.0;
  for (std::ptrdiff_t r = 1; r < rows; ++r) {
    const double* row = img.row(r);
    const double* prev = img.row(r - 1);
    const double* ahead = img.row(std::min(r + 4, rows - 1));
    const double* behind = img.row(std::max<std::ptrdiff_t>(r - 5, 0));
    for (std::ptrdiff_t c = 1; c < cols; ++c) {
      const double di_v = std::abs(row[c] - prev[c]);
      const double db_v = std::abs(ahead[c] - behind[c]) / 9.0;
      si_v += di_v;
      sv_v += std::max(0.0, di_v - db_v);

      const double di_h = std::abs(row[c] - row[c - 1]);
      const double db_h =
          std::abs(row[std::min(c + 4, cols - 1)] - row[std::max<std::ptrdiff_t>(c - 5, 0)]) / 9.0;
      si_h += di_h;
      sv_h += std::max(0.0, di_h - db_h);
    }
  }
  return crete_from_sums(si_v, sv_v, si_h, sv_h);
}

constexpr KernelSet kScalar{
    SimdLevel::Scalar, variance_scalar, eog_scalar, tenengrad_scalar,
    eol_scalar,        sml_scalar,      crete_scalar,
};

}  // namespace

const KernelSet& scalar_kernels() { return kScalar; }

}  // namespace focus::kernels
