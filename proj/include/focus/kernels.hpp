#pragma once

// Low-level focus-measure kernels. Each kernel exists as a portable scalar
// reference and, where the build and CPU allow it, an AVX2 variant. The two
// must agree to within floating-point reassociation error; the public
// functions in metrics.hpp validate their arguments and then call the
// kernels of the active level.
//
// Kernels assume validated input (see the preconditions in metrics.hpp).

#include <cstddef>
#include <string_view>

#include "focus/image.hpp"

namespace focus::kernels {

enum class SimdLevel { Scalar, Avx2 };

std::string_view to_string(SimdLevel level);

struct KernelSet {
  SimdLevel level;
  double (*variance)(PlaneView);
  double (*eog)(PlaneView);
  double (*tenengrad)(PlaneView, double threshold);
  double (*eol)(PlaneView);
  double (*sml)(PlaneView, double threshold, std::size_t step);
  double (*crete)(PlaneView);
};

const KernelSet& scalar_kernels();
#if defined(FOCUS_HAVE_AVX2)
const KernelSet& avx2_kernels();
#endif

// Best level compiled in and supported by the running CPU.
SimdLevel detected_level();

// True if `level` was compiled in and the running CPU can execute it.
bool is_available(SimdLevel level);

// Kernels for `level`; throws focus::Error(InvalidArgument) if unavailable.
const KernelSet& kernels_for(SimdLevel level);

// The kernel set the metric functions use. Defaults to detected_level(); the
// environment variable FOCUS_SIMD=scalar forces the reference kernels.
const KernelSet& active();
void set_active_level(SimdLevel level);

}  // namespace focus::kernels
