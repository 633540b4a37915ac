#include <gtest/gtest.h>

#include "focus/bench.hpp"
#include "focus/error.hpp"
#include "focus/synth.hpp"

namespace focus {
namespace {

TEST(TimeMetric, SingleRepetition) {
  const GrayImage img = synth::generate_scene({synth::RandomTexture{1}, 32, 32});
  const TimingReport r = time_metric(img, MetricId::Eol, {}, 1);
  EXPECT_EQ(r.repetitions, 1u);
  EXPECT_EQ(r.min, r.median);
  EXPECT_EQ(r.min, r.mean);
  EXPECT_EQ(r.width, 32u);
}

TEST(TimeMetric, ReportInvariantsAndChecksum) {
  const GrayImage img = synth::generate_scene({synth::RandomTexture{2}, 160, 120});
  MetricConfig cfg;
  cfg.sml_step = 2;
  for (MetricId m : kAllMetrics) {
    const TimingReport r = time_metric(img, m, cfg, 10);
    EXPECT_EQ(r.metric, m);
    EXPECT_LE(r.min, r.median);
    EXPECT_LE(r.min, r.mean);
    EXPECT_GT(r.min.count(), 0.0);
    EXPECT_EQ(r.checksum, score(img, m, cfg));  // bit-identical
  }
}

TEST(TimeMetric, Errors) {
  const GrayImage img(8, 8, 1.0);
  EXPECT_THROW(time_metric(img, MetricId::Eog, {}, 0), Error);
  EXPECT_THROW(time_metric(GrayImage(2, 2, 1.0), MetricId::Eol, {}, 5), Error);
}

}  // namespace
}  // namespace focus
