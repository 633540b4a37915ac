#pragma once

#include <algorithm>

namespace focus::kernels {

// Final step of the Crete measure from the four accumulated sums. A direction
// without any variation yields 0.
inline double crete_from_sums(double si_v, double sv_v, double si_h, double sv_h) {
  if (si_v == 0.0 || si_h == 0.0) return 0.0;
  const double blur_v = (si_v - sv_v) / si_v;
  const double blur_h = (si_h - sv_h) / si_h;
  return std::clamp(1.0 - std::max(blur_v, blur_h), 0.0, 1.0);
}

}  // namespace focus::kernels
