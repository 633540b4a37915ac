#pragma once

#include <cstddef>
#include <cstdint>
#include <variant>

#include "focus/image.hpp"
#include "focus/stack.hpp"

namespace focus::synth {

struct Checkerboard {
  std::size_t cell = 8;
};
struct RandomTexture {
  std::uint64_t seed = 1;
};
// Smooth ramp plus a few wide blobs: very few sharp edges.
struct LowDetail {
  std::uint64_t seed = 1;
};

using SceneKind = std::variant<Checkerboard, RandomTexture, LowDetail>;

struct SceneSpec {
  SceneKind kind = RandomTexture{};
  std::size_t width = 160;
  std::size_t height = 120;

  void validate() const;
};

struct StackSpec {
  SceneSpec scene;
  std::size_t n_positions = 96;
  std::size_t true_focus_index = 48;
  double position_step = 1.0;  // mm
  double blur_rate = 0.15;     // Gaussian sigma (px) per mm of defocus

  void validate() const;
  double sigma_at(std::size_t index) const;
};

// Deterministic for a given spec. Random scenes draw from std::mt19937_64
// seeded with the scene seed; each draw keeps its top 53 bits and is scaled
// to [0, 255].
GrayImage generate_scene(const SceneSpec& spec);

// Separable Gaussian, radius ceil(3 sigma), normalized weights, replicated
// edges. sigma == 0 returns the input unchanged.
GrayImage gaussian_blur(const GrayImage& img, double sigma);

FocusStack generate_stack(const StackSpec& spec);

}  // namespace focus::synth
