#include <gtest/gtest.h>

#include <random>
#include <set>

#include "focus/error.hpp"
#include "focus/search.hpp"
#include "focus/synth.hpp"

namespace focus {
namespace {

// Stack whose images have increasing contrast up to `peak` and decreasing
// after, so every metric sees a known curve shape cheaply.
FocusStack contrast_stack(const std::vector<double>& contrast) {
  std::vector<StackEntry> entries;
  for (std::size_t i = 0; i < contrast.size(); ++i) {
    std::vector<double> s(8 * 8);
    for (std::size_t p = 0; p < s.size(); ++p) s[p] = 127.5 + ((p / 8 + p % 8) % 2 ? 1 : -1) * contrast[i];
    entries.push_back({static_cast<double>(i), GrayImage(8, 8, s)});
  }
  return FocusStack(std::move(entries));
}

TEST(FullSweep, ProbesEverything) {
  const FocusStack stack = contrast_stack({1, 5, 9, 4});
  const SearchTrace t = full_sweep(stack, MetricId::Eog, {});
  EXPECT_EQ(t.probed_indices, (std::vector<std::size_t>{0, 1, 2, 3}));
  EXPECT_EQ(t.evaluations, 4u);
  EXPECT_EQ(t.chosen_index, 2u);
}

TEST(FullSweep, TwoEntriesPickLarger) {
  EXPECT_EQ(full_sweep(contrast_stack({3, 7}), MetricId::Variance, {}).chosen_index, 1u);
  EXPECT_EQ(full_sweep(contrast_stack({7, 3}), MetricId::Variance, {}).chosen_index, 0u);
}

TEST(FullSweep, MatchesBestFocusOnNinetySixPositions) {
  synth::StackSpec spec;
  spec.scene = {synth::RandomTexture{3}, 32, 24};
  spec.true_focus_index = 61;
  const FocusStack stack = synth::generate_stack(spec);
  const SearchTrace t = full_sweep(stack, MetricId::Eol, {});
  EXPECT_EQ(t.evaluations, 96u);
  EXPECT_EQ(t.chosen_index, best_focus(compute_curve(stack, MetricId::Eol, {})).index);
}

TEST(CoarseToFine, ThreeEntries) {
  const SearchTrace t = coarse_to_fine(contrast_stack({1, 5, 2}), MetricId::Eog, {}, 2);
  EXPECT_EQ(t.probed_indices, (std::vector<std::size_t>{0, 2, 1}));
  EXPECT_EQ(t.evaluations, 3u);
  EXPECT_EQ(t.chosen_index, 1u);
}

TEST(CoarseToFine, PeakOnCoarseGrid) {
  std::vector<double> c(30);
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = 50.0 - std::abs(double(i) - 10.0);
  const SearchTrace t = coarse_to_fine(contrast_stack(c), MetricId::Variance, {}, 5);
  EXPECT_EQ(t.chosen_index, 10u);
  EXPECT_LT(t.evaluations, 30u);
}

TEST(CoarseToFine, PeakAtEnds) {
  std::vector<double> up(25), down(25);
  for (std::size_t i = 0; i < 25; ++i) {
    up[i] = 1.0 + double(i);
    down[i] = 30.0 - double(i);
  }
  EXPECT_EQ(coarse_to_fine(contrast_stack(up), MetricId::Eog, {}, 4).chosen_index, 24u);
  EXPECT_EQ(coarse_to_fine(contrast_stack(down), MetricId::Eog, {}, 4).chosen_index, 0u);
}

TEST(CoarseToFine, BadStep) {
  const FocusStack stack = contrast_stack({1, 2, 3, 2});
  EXPECT_THROW(coarse_to_fine(stack, MetricId::Eog, {}, 1), Error);
  EXPECT_THROW(coarse_to_fine(stack, MetricId::Eog, {}, 4), Error);
}

TEST(CoarseToFineProperties, EquivalentToFullSweepOnUnimodalCurves) {
  std::mt19937_64 gen(555);
  std::uniform_real_distribution<double> inc(0.5, 4.0);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 5 + gen() % 60;
    const std::size_t peak = gen() % n;
    std::vector<double> c(n);
    c[peak] = 120.0;
    for (std::size_t i = peak; i-- > 0;) c[i] = std::max(0.5, c[i + 1] - inc(gen));
    for (std::size_t i = peak + 1; i < n; ++i) c[i] = std::max(0.25, c[i - 1] - inc(gen));
    const FocusStack stack = contrast_stack(c);
    const FocusCurve curve = compute_curve(stack, MetricId::Variance, {});
    if (!diagnose(curve, 1).is_unimodal) continue;

    const SearchTrace full = full_sweep(stack, MetricId::Variance, {});
    for (std::size_t step = 2; step <= n / 2; ++step) {
      const SearchTrace fast = coarse_to_fine(stack, MetricId::Variance, {}, step);
      EXPECT_EQ(fast.chosen_index, full.chosen_index) << "n=" << n << " step=" << step;
      EXPECT_LE(fast.evaluations, full.evaluations);
      if (n > 3 * step) EXPECT_LT(fast.evaluations, full.evaluations);
      EXPECT_EQ(std::set<std::size_t>(fast.probed_indices.begin(), fast.probed_indices.end()).size(),
                fast.probed_indices.size());
      EXPECT_EQ(fast.evaluations, fast.probed_indices.size());
    }
  }
}

}  // namespace
}  // namespace focus
