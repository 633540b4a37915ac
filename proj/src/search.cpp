#include "focus/search.hpp"

#include <optional>
#include <string>

#include "focus/error.hpp"

namespace focus {
namespace {

// Scores stack positions on demand, each at most once, recording probe order.
class Prober {
 public:
  Prober(const FocusStack& stack, MetricId metric, const MetricConfig& config)
      : stack_(stack), metric_(metric), config_(config), cache_(stack.size()) {}

  double probe(std::size_t index) {
    if (!cache_[index]) {
      cache_[index] = score(stack_[index].image, metric_, config_);
      trace_.probed_indices.push_back(index);
    }
    return *cache_[index];
  }

  // Best probed index, lowest index on ties.
  std::size_t best_probed() const {
    std::optional<std::size_t> best;
    for (std::size_t i = 0; i < cache_.size(); ++i) {
      if (cache_[i] && (!best || *cache_[i] > *cache_[*best])) best = i;
    }
    return *best;
  }

  SearchTrace finish() {
    trace_.chosen_index = best_probed();
    trace_.evaluations = trace_.probed_indices.size();
    return std::move(trace_);
  }

 private:
  const FocusStack& stack_;
  MetricId metric_;
  const MetricConfig& config_;
  std::vector<std::optional<double>> cache_;
  SearchTrace trace_;
};

}  // namespace

SearchTrace full_sweep(const FocusStack& stack, MetricId metric, const MetricConfig& config) {
  Prober prober(stack, metric, config);
  for (std::size_t i = 0; i < stack.size(); ++i) prober.probe(i);
  return prober.finish();
}

SearchTrace coarse_to_fine(const FocusStack& stack, MetricId metric, const MetricConfig& config,
                           std::size_t coarse_step) {
  const std::size_t n = stack.size();
  if (coarse_step < 2 || coarse_step >= n) {
    throw Error(ErrorCode::BadStep, "coarse step must be in [2, " + std::to_string(n - 1) +
                                        "], got " + std::to_string(coarse_step));
  }
  Prober prober(stack, metric, config);

  std::vector<std::size_t> grid;
  for (std::size_t i = 0; i < n; i += coarse_step) grid.push_back(i);
  if (grid.back() != n - 1) grid.push_back(n - 1);

  std::size_t best = 0;
  double best_score = 0.0;
  for (std::size_t g = 0; g < grid.size(); ++g) {
    const double s = prober.probe(grid[g]);
    if (g == 0 || s > best_score) {
      best = g;
      best_score = s;
    }
  }

  const std::size_t lo = best == 0 ? grid[best] : grid[best - 1];
  const std::size_t hi = best + 1 == grid.size() ? grid[best] : grid[best + 1];
  for (std::size_t i = lo + 1; i < hi; ++i) prober.probe(i);
  return prober.finish();
}

}  // namespace focus
