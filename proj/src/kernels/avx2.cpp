// AVX2 variants of the reference kernels in scalar.cpp. This file is compiled
// with -mavx2; nothing in it may run before dispatch.cpp has checked the CPU.
//
// Per-pixel arithmetic mirrors the scalar code operation for operation, so
// only the order of the final summation differs.

#include <immintrin.h>

#include <algorithm>
#include <cmath>
#include <cstddef>

#include "focus/kernels.hpp"
#include "kernels/common.hpp"

namespace focus::kernels {
namespace {

constexpr std::size_t kLanes = 4;

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d pair = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(pair, _mm_unpackhi_pd(pair, pair)));
}

inline __m256d vabs(__m256d v) { return _mm256_andnot_pd(_mm256_set1_pd(-0.0), v); }

double variance_avx2(PlaneView img) {
  const std::size_t n = img.rows * img.cols;
  const double* p = img.data;
  const double pivot = p[0];
  const __m256d vpivot = _mm256_set1_pd(pivot);

  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 * kLanes <= n; i += 2 * kLanes) {
    acc0 = _mm256_add_pd(acc0, _mm256_sub_pd(_mm256_loadu_pd(p + i), vpivot));
    acc1 = _mm256_add_pd(acc1, _mm256_sub_pd(_mm256_loadu_pd(p + i + kLanes), vpivot));
  }
  double sum = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) sum += p[i] - pivot;
  const double mean = sum / static_cast<double>(n);

  const __m256d vmean = _mm256_set1_pd(mean);
  acc0 = _mm256_setzero_pd();
  acc1 = _mm256_setzero_pd();
  i = 0;
  for (; i + 2 * kLanes <= n; i += 2 * kLanes) {
    const __m256d d0 = _mm256_sub_pd(_mm256_sub_pd(_mm256_loadu_pd(p + i), vpivot), vmean);
    const __m256d d1 =
        _mm256_sub_pd(_mm256_sub_pd(_mm256_loadu_pd(p + i + kLanes), vpivot), vmean);
    acc0 = _mm256_add_pd(acc0, _mm256_mul_pd(d0, d0));
    acc1 = _mm256_add_pd(acc1, _mm256_mul_pd(d1, d1));
  }
  double ss = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) {
    const double d = (p[i] - pivot) - mean;
    ss += d * d;
  }
  return ss / static_cast<double>(n);
}

double eog_avx2(PlaneView img) {
  __m256d acc = _mm256_setzero_pd();
  double tail = 0.0;
  const std::size_t last = img.cols - 1;  // columns [0, last) have a right neighbour
  for (std::size_t r = 0; r + 1 < img.rows; ++r) {
    const double* row = img.row(r);
    const double* below = img.row(r + 1);
    std::size_t c = 0;
    for (; c + kLanes <= last; c += kLanes) {
      const __m256d here = _mm256_loadu_pd(row + c);
      const __m256d fx = _mm256_sub_pd(_mm256_loadu_pd(below + c), here);
      const __m256d fy = _mm256_sub_pd(_mm256_loadu_pd(row + c + 1), here);
      acc = _mm256_add_pd(acc, _mm256_add_pd(_mm256_mul_pd(fx, fx), _mm256_mul_pd(fy, fy)));
    }
    for (; c < last; ++c) {
      const double fx = below[c] - row[c];
      const double fy = row[c + 1] - row[c];
      tail += fx * fx + fy * fy;
    }
  }
  return hsum(acc) + tail;
}

double tenengrad_avx2(PlaneView img, double threshold) {
  const __m256d two = _mm256_set1_pd(2.0);
  const __m256d vthr = _mm256_set1_pd(threshold);
  __m256d acc = _mm256_setzero_pd();
  double tail = 0.0;
  for (std::size_t r = 1; r + 1 < img.rows; ++r) {
    const double* up = img.row(r - 1);
    const double* mid = img.row(r);
    const double* dn = img.row(r + 1);
    std::size_t c = 1;
    for (; c + kLanes < img.cols; c += kLanes) {
      const __m256d ul = _mm256_loadu_pd(up + c - 1);
      const __m256d uc = _mm256_loadu_pd(up + c);
      const __m256d ur = _mm256_loadu_pd(up + c + 1);
      const __m256d ml = _mm256_loadu_pd(mid + c - 1);
      const __m256d mr = _mm256_loadu_pd(mid + c + 1);
      const __m256d dl = _mm256_loadu_pd(dn + c - 1);
      const __m256d dc = _mm256_loadu_pd(dn + c);
      const __m256d dr = _mm256_loadu_pd(dn + c + 1);
      const __m256d gx =
          _mm256_sub_pd(_mm256_add_pd(_mm256_add_pd(ur, _mm256_mul_pd(two, mr)), dr),
                        _mm256_add_pd(_mm256_add_pd(ul, _mm256_mul_pd(two, ml)), dl));
      const __m256d gy =
          _mm256_sub_pd(_mm256_add_pd(_mm256_add_pd(dl, _mm256_mul_pd(two, dc)), dr),
                        _mm256_add_pd(_mm256_add_pd(ul, _mm256_mul_pd(two, uc)), ur));
      const __m256d g2 = _mm256_add_pd(_mm256_mul_pd(gx, gx), _mm256_mul_pd(gy, gy));
      const __m256d keep = _mm256_cmp_pd(_mm256_sqrt_pd(g2), vthr, _CMP_GT_OQ);
      acc = _mm256_add_pd(acc, _mm256_and_pd(keep, g2));
    }
    for (; c + 1 < img.cols; ++c) {
      const double gx = (up[c + 1] + 2.0 * mid[c + 1] + dn[c + 1]) -
                        (up[c - 1] + 2.0 * mid[c - 1] + dn[c - 1]);
      const double gy = (dn[c - 1] + 2.0 * dn[c] + dn[c + 1]) -
                        (up[c - 1] + 2.0 * up[c] + up[c + 1]);
      const double g2 = gx * gx + gy * gy;
      if (std::sqrt(g2) > threshold) tail += g2;
    }
  }
  return hsum(acc) + tail;
}

double eol_avx2(PlaneView img) {
  const __m256d four = _mm256_set1_pd(4.0);
  __m256d acc = _mm256_setzero_pd();
  double tail = 0.0;
  for (std::size_t r = 1; r + 1 < img.rows; ++r) {
    const double* up = img.row(r - 1);
    const double* mid = img.row(r);
    const double* dn = img.row(r + 1);
    std::size_t c = 1;
    for (; c + kLanes < img.cols; c += kLanes) {
      const __m256d m = _mm256_loadu_pd(mid + c);
      auto d = [&](const double* p) { return _mm256_sub_pd(m, _mm256_loadu_pd(p)); };
      const __m256d edges = _mm256_add_pd(
          _mm256_add_pd(_mm256_add_pd(d(up + c), d(dn + c)), d(mid + c - 1)), d(mid + c + 1));
      const __m256d corners = _mm256_add_pd(
          _mm256_add_pd(_mm256_add_pd(d(up + c - 1), d(up + c + 1)), d(dn + c - 1)),
          d(dn + c + 1));
      const __m256d response = _mm256_add_pd(_mm256_mul_pd(four, edges), corners);
      acc = _mm256_add_pd(acc, _mm256_mul_pd(response, response));
    }
    for (; c + 1 < img.cols; ++c) {
      const double m = mid[c];
      const double edges = (m - up[c]) + (m - dn[c]) + (m - mid[c - 1]) + (m - mid[c + 1]);
      const double corners = (m - up[c - 1]) + (m - up[c + 1]) + (m - dn[c - 1]) + (m - dn[c + 1]);
      const double response = 4.0 * edges + corners;
      tail += response * response;
    }
  }
  return hsum(acc) + tail;
}

double sml_avx2(PlaneView img, double threshold, std::size_t step) {
  const __m256d two = _mm256_set1_pd(2.0);
  const __m256d vthr = _mm256_set1_pd(threshold);
  __m256d acc = _mm256_setzero_pd();
  double tail = 0.0;
  for (std::size_t r = step; r + step < img.rows; ++r) {
    const double* up = img.row(r - step);
    const double* mid = img.row(r);
    const double* dn = img.row(r + step);
    std::size_t c = step;
    for (; c + step + kLanes <= img.cols; c += kLanes) {
      const __m256d twice = _mm256_mul_pd(two, _mm256_loadu_pd(mid + c));
      const __m256d horiz = vabs(_mm256_sub_pd(
          _mm256_sub_pd(twice, _mm256_loadu_pd(mid + c - step)), _mm256_loadu_pd(mid + c + step)));
      const __m256d vert = vabs(_mm256_sub_pd(_mm256_sub_pd(twice, _mm256_loadu_pd(up + c)),
                                              _mm256_loadu_pd(dn + c)));
      const __m256d ml = _mm256_add_pd(horiz, vert);
      const __m256d keep = _mm256_cmp_pd(ml, vthr, _CMP_GE_OQ);
      acc = _mm256_add_pd(acc, _mm256_and_pd(keep, ml));
    }
    for (; c + step < img.cols; ++c) {
      const double twice = 2.0 * mid[c];
      const double ml = std::abs(twice - mid[c - step] - mid[c + step]) +
                        std::abs(twice - up[c] - dn[c]);
      if (ml >= threshold) tail += ml;
    }
  }
  return hsum(acc) + tail;
}

double crete_avx2(PlaneView img) {
  const std::ptrdiff_t rows = static_cast<std::ptrdiff_t>(img.rows);
  const std::ptrdiff_t cols = static_cast<std::ptrdiff_t>(img.cols);
  const __m256d nine = _mm256_set1_pd(9.0);
  const __m256d zero = _mm256_setzero_pd();
  __m256d vsi_v = zero, vsv_v = zero, vsi_h = zero, vsv_h = zero;
  double si_v = 0.0, sv_v = 0.0, si_h = 0.0, sv_h = 0.0;

  auto horizontal_scalar = [&](const double* row, std::ptrdiff_t c) {
    const double di_h = std::abs(row[c] - row[c - 1]);
    const double db_h =
        std::abs(row[std::min(c + 4, cols - 1)] - row[std::max<std::ptrdiff_t>(c - 5, 0)]) / 9.0;
    si_h += di_h;
    sv_h += std::max(0.0, di_h - db_h);
  };

  for (std::ptrdiff_t r = 1; r < rows; ++r) {
    const double* row = img.row(r);
    const double* prev = img.row(r - 1);
    const double* ahead = img.row(std::min(r + 4, rows - 1));
    const double* behind = img.row(std::max<std::ptrdiff_t>(r - 5, 0));

    // Differences between rows: every column is contiguous.
    std::ptrdiff_t c = 1;
    for (; c + static_cast<std::ptrdiff_t>(kLanes) <= cols; c += kLanes) {
      const __m256d di = vabs(_mm256_sub_pd(_mm256_loadu_pd(row + c), _mm256_loadu_pd(prev + c)));
      const __m256d db = _mm256_div_pd(
          vabs(_mm256_sub_pd(_mm256_loadu_pd(ahead + c), _mm256_loadu_pd(behind + c))), nine);
      vsi_v = _mm256_add_pd(vsi_v, di);
      vsv_v = _mm256_add_pd(vsv_v, _mm256_max_pd(zero, _mm256_sub_pd(di, db)));
    }
    for (; c < cols; ++c) {
      const double di_v = std::abs(row[c] - prev[c]);
      const double db_v = std::abs(ahead[c] - behind[c]) / 9.0;
      si_v += di_v;
      sv_v += std::max(0.0, di_v - db_v);
    }

    // Differences within the row: columns [5, cols - 4) need no clamping.
    c = 1;
    for (; c < std::min<std::ptrdiff_t>(5, cols); ++c) horizontal_scalar(row, c);
    for (; c + 4 + static_cast<std::ptrdiff_t>(kLanes) <= cols; c += kLanes) {
      const __m256d di = vabs(_mm256_sub_pd(_mm256_loadu_pd(row + c), _mm256_loadu_pd(row + c - 1)));
      const __m256d db = _mm256_div_pd(
          vabs(_mm256_sub_pd(_mm256_loadu_pd(row + c + 4), _mm256_loadu_pd(row + c - 5))), nine);
      vsi_h = _mm256_add_pd(vsi_h, di);
      vsv_h = _mm256_add_pd(vsv_h, _mm256_max_pd(zero, _mm256_sub_pd(di, db)));
    }
    for (; c < cols; ++c) horizontal_scalar(row, c);
  }

  return crete_from_sums(hsum(vsi_v) + si_v, hsum(vsv_v) + sv_v, hsum(vsi_h) + si_h,
                         hsum(vsv_h) + sv_h);
}

constexpr KernelSet kAvx2{
    SimdLevel::Avx2, variance_avx2, eog_avx2, tenengrad_avx2, eol_avx2, sml_avx2, crete_avx2,
};

}  // namespace

const KernelSet& avx2_kernels() { return kAvx2; }

}  // namespace focus::kernels
