#include "focus/synth.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "focus/error.hpp"

namespace focus::synth {
namespace {

// Uniform in [0, 1) from the top 53 bits of one 64-bit draw.
double unit_draw(std::mt19937_64& gen) { return static_cast<double>(gen() >> 11) * 0x1.0p-53; }

GrayImage checkerboard(const SceneSpec& spec, std::size_t cell) {
  std::vector<double> samples(spec.width * spec.height);
  for (std::size_t r = 0; r < spec.height; ++r) {
    for (std::size_t c = 0; c < spec.width; ++c) {
      samples[r * spec.width + c] = ((r / cell + c / cell) % 2 == 0) ? 0.0 : 255.0;
    }
  }
  return GrayImage(spec.width, spec.height, std::move(samples));
}

GrayImage random_texture(const SceneSpec& spec, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::vector<double> samples(spec.width * spec.height);
  for (double& s : samples) s = 255.0 * unit_draw(gen);
  return GrayImage(spec.width, spec.height, std::move(samples));
}

GrayImage low_detail(const SceneSpec& spec, std::uint64_t seed) {
  struct Blob {
    double row, col, radius, amplitude;
  };
  std::mt19937_64 gen(seed);
  const double w = static_cast<double>(spec.width);
  const double h = static_cast<double>(spec.height);
  const double short_side = std::min(w, h);

  std::vector<Blob> blobs(3 + gen() % 3);
  for (Blob& b : blobs) {
    b.row = h * unit_draw(gen);
    b.col = w * unit_draw(gen);
    b.radius = short_side * (0.12 + 0.15 * unit_draw(gen));
    b.amplitude = (unit_draw(gen) < 0.5 ? -1.0 : 1.0) * (30.0 + 50.0 * unit_draw(gen));
  }

  std::vector<double> samples(spec.width * spec.height);
  for (std::size_t r = 0; r < spec.height; ++r) {
    for (std::size_t c = 0; c < spec.width; ++c) {
      double v = 90.0 + 70.0 * (static_cast<double>(c) / (w - 1.0)) +
                 30.0 * (static_cast<double>(r) / (h - 1.0));
      for (const Blob& b : blobs) {
        const double dr = static_cast<double>(r) - b.row;
        const double dc = static_cast<double>(c) - b.col;
        v += b.amplitude * std::exp(-(dr * dr + dc * dc) / (2.0 * b.radius * b.radius));
      }
      samples[r * spec.width + c] = std::clamp(v, 0.0, 255.0);
    }
  }
  return GrayImage(spec.width, spec.height, std::move(samples));
}

std::vector<double> gaussian_weights(double sigma) {
  const auto radius = static_cast<std::ptrdiff_t>(std::ceil(3.0 * sigma));
  std::vector<double> w(2 * radius + 1);
  double total = 0.0;
  for (std::ptrdiff_t k = -radius; k <= radius; ++k) {
    const double x = static_cast<double>(k);
    w[k + radius] = std::exp(-(x * x) / (2.0 * sigma * sigma));
    total += w[k + radius];
  }
  for (double& v : w) v /= total;
  return w;
}

}  // namespace

void SceneSpec::validate() const {
  if (width < 16 || height < 16) {
    throw Error(ErrorCode::InvalidArgument, "scene must be at least 16x16");
  }
  if (const auto* cb = std::get_if<Checkerboard>(&kind); cb && cb->cell < 1) {
    throw Error(ErrorCode::InvalidArgument, "checkerboard cell must be >= 1");
  }
}

void StackSpec::validate() const {
  scene.validate();
  if (n_positions < 3) throw Error(ErrorCode::InvalidArgument, "need at least 3 positions");
  if (true_focus_index >= n_positions) {
    throw Error(ErrorCode::InvalidArgument,
                "true focus index " + std::to_string(true_focus_index) + " outside [0, " +
                    std::to_string(n_positions) + ")");
  }
  if (!std::isfinite(position_step) || position_step <= 0.0) {
    throw Error(ErrorCode::InvalidArgument, "position step must be finite and > 0");
  }
  if (!std::isfinite(blur_rate) || blur_rate <= 0.0) {
    throw Error(ErrorCode::InvalidArgument, "blur rate must be finite and > 0");
  }
}

double StackSpec::sigma_at(std::size_t index) const {
  const double offset = index > true_focus_index ? static_cast<double>(index - true_focus_index)
                                                 : static_cast<double>(true_focus_index - index);
  return blur_rate * offset * position_step;
}

GrayImage generate_scene(const SceneSpec& spec) {
  spec.validate();
  return std::visit(
      [&](const auto& kind) -> GrayImage {
        using T = std::decay_t<decltype(kind)>;
        if constexpr (std::is_same_v<T, Checkerboard>) {
          return checkerboard(spec, kind.cell);
        } else if constexpr (std::is_same_v<T, RandomTexture>) {
          return random_texture(spec, kind.seed);
        } else {
          return low_detail(spec, kind.seed);
        }
      },
      spec.kind);
}

GrayImage gaussian_blur(const GrayImage& img, double sigma) {
  if (!std::isfinite(sigma) || sigma < 0.0) {
    throw Error(ErrorCode::InvalidArgument, "blur sigma must be finite and >= 0");
  }
  if (sigma == 0.0) return img;

  const std::vector<double> w = gaussian_weights(sigma);
  const std::ptrdiff_t radius = static_cast<std::ptrdiff_t>(w.size() / 2);
  const std::ptrdiff_t rows = static_cast<std::ptrdiff_t>(img.height());
  const std::ptrdiff_t cols = static_cast<std::ptrdiff_t>(img.width());
  const PlaneView src = img.view();

  std::vector<double> tmp(img.size());
  for (std::ptrdiff_t r = 0; r < rows; ++r) {
    const double* in = src.row(r);
    for (std::ptrdiff_t c = 0; c < cols; ++c) {
      double acc = 0.0;
      for (std::ptrdiff_t k = -radius; k <= radius; ++k) {
        acc += w[k + radius] * in[std::clamp(c + k, {}, cols - 1)];
      }
      tmp[r * cols + c] = acc;
    }
  }

  std::vector<double> out(img.size());
  for (std::ptrdiff_t r = 0; r < rows; ++r) {
    for (std::ptrdiff_t c = 0; c < cols; ++c) {
      double acc = 0.0;
      for (std::ptrdiff_t k = -radius; k <= radius; ++k) {
        acc += w[k + radius] * tmp[std::clamp(r + k, {}, rows - 1) * cols + c];
      }
      out[r * cols + c] = std::clamp(acc, 0.0, GrayImage::kMaxSample);
    }
  }
  return GrayImage(img.width(), img.height(), std::move(out));
}

FocusStack generate_stack(const StackSpec& spec) {
  spec.validate();
  const GrayImage scene = generate_scene(spec.scene);
  std::vector<StackEntry> entries;
  entries.reserve(spec.n_positions);
  for (std::size_t i = 0; i < spec.n_positions; ++i) {
    entries.push_back({static_cast<double>(i) * spec.position_step,
                       gaussian_blur(scene, spec.sigma_at(i))});
  }
  return FocusStack(std::move(entries));
}

}  // namespace focus::synth
