#include "focus/cli.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <optional>
#include <string>

#include "focus/bench.hpp"
#include "focus/error.hpp"
#include "focus/imageio.hpp"
#include "focus/metrics.hpp"
#include "focus/search.hpp"
#include "focus/stack.hpp"
#include "focus/synth.hpp"

namespace focus::cli {
namespace {

namespace fs = std::filesystem;

struct MetricFlags {
  std::string metric;
  MetricConfig config;

  void add_to(CLI::App& cmd, bool with_metric) {
    if (with_metric) {
      cmd.add_option("--metric", metric, "variance|eog|tenengrad|eol|sml|crete")->required();
    }
    cmd.add_option("--tenengrad-threshold", config.tenengrad_threshold,
                   "Sobel magnitude threshold (strict)");
    cmd.add_option("--sml-threshold", config.sml_threshold, "modified-Laplacian threshold");
    cmd.add_option("--sml-step", config.sml_step, "modified-Laplacian pixel spacing");
  }

  MetricId resolve() const {
    config.validate();
    if (auto id = parse_metric(metric)) return *id;
    throw Error(ErrorCode::InvalidArgument, "unknown metric '" + metric + "'");
  }
};

struct SynthFlags {
  std::size_t positions = 96;
  std::size_t true_focus = 48;
  double rate = 0.15;
  double step_mm = 1.0;
  std::string scene = "texture";
  std::uint64_t seed = 1;
  std::size_t width = 160;
  std::size_t height = 120;
  std::size_t cell = 8;
  std::string out;

  synth::StackSpec spec() const {
    synth::StackSpec s;
    if (scene == "checker") {
      s.scene.kind = synth::Checkerboard{cell};
    } else if (scene == "texture") {
      s.scene.kind = synth::RandomTexture{seed};
    } else if (scene == "lowdetail") {
      s.scene.kind = synth::LowDetail{seed};
    } else {
      throw Error(ErrorCode::InvalidArgument, "unknown scene '" + scene + "'");
    }
    s.scene.width = width;
    s.scene.height = height;
    s.n_positions = positions;
    s.true_focus_index = true_focus;
    s.position_step = step_mm;
    s.blur_rate = rate;
    s.validate();
    return s;
  }
};

std::string join_indices(const std::vector<std::size_t>& indices) {
  std::string out;
  for (std::size_t i = 0; i < indices.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(indices[i]);
  }
  return out;
}

std::string fixed3(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

int cmd_score(const std::string& image_path, const MetricFlags& flags, std::ostream& out) {
  const MetricId metric = flags.resolve();
  const GrayImage img = io::load_image(image_path);
  check_preconditions(img.width(), img.height(), metric, flags.config);
  out << to_string(metric) << ',' << io::format_number(score(img, metric, flags.config)) << '\n';
  return kExitOk;
}

void check_stack(const FocusStack& stack, MetricId metric, const MetricConfig& config) {
  check_preconditions(stack.width(), stack.height(), metric, config);
}

int cmd_curve(const std::string& manifest, const MetricFlags& flags, std::size_t smoothing,
              const std::string& out_csv, std::ostream& out, std::ostream& err) {
  const MetricId metric = flags.resolve();
  if (smoothing == 0 || smoothing % 2 == 0) {
    throw Error(ErrorCode::BadSmoothingWidth, "--smoothing must be an odd number >= 1");
  }
  const FocusStack stack = io::load_stack(manifest);
  check_stack(stack, metric, flags.config);
  if (smoothing > stack.size()) {
    throw Error(ErrorCode::BadSmoothingWidth, "--smoothing exceeds the number of positions");
  }

  const FocusCurve curve = compute_curve(stack, metric, flags.config);
  const std::string csv = io::write_curve_csv(curve);

  std::string summary;
  if (curve.points.size() >= 3) {
    const CurveDiagnostics d = diagnose(curve, smoothing);
    summary = "best_position=" + io::format_number(d.best_position) +
              " index=" + std::to_string(d.best_index) +
              " unimodal=" + (d.is_unimodal ? "true" : "false") +
              " maxima=" + std::to_string(d.local_maxima_count) +
              " sharpness=" + io::format_number(d.peak_sharpness_ratio);
  } else {
    const BestFocus best = best_focus(curve);
    summary = "best_position=" + io::format_number(best.position_mm) +
              " index=" + std::to_string(best.index) + " unimodal=n/a maxima=n/a sharpness=n/a";
  }

  if (out_csv.empty()) {
    out << csv << '\n';
    err << summary << '\n';
  } else {
    io::write_text_file(out_csv, csv + "\n");
    out << summary << '\n';
  }
  return kExitOk;
}

int cmd_synth(const SynthFlags& flags, std::ostream& out) {
  if (flags.out.empty()) throw Error(ErrorCode::InvalidArgument, "--out is required");
  const synth::StackSpec spec = flags.spec();
  const FocusStack stack = synth::generate_stack(spec);
  const fs::path manifest = io::save_stack(stack, flags.out);
  out << "wrote " << stack.size() << " images and " << manifest.generic_string() << '\n';
  return kExitOk;
}

int cmd_search(const std::string& manifest, const MetricFlags& flags, const std::string& strategy,
               std::size_t coarse_step, std::ostream& out) {
  const MetricId metric = flags.resolve();
  if (strategy != "full" && strategy != "coarse") {
    throw Error(ErrorCode::InvalidArgument, "unknown strategy '" + strategy + "'");
  }
  const FocusStack stack = io::load_stack(manifest);
  check_stack(stack, metric, flags.config);
  const SearchTrace trace = strategy == "full"
                                ? full_sweep(stack, metric, flags.config)
                                : coarse_to_fine(stack, metric, flags.config, coarse_step);
  out << "chosen_index=" << trace.chosen_index << '\n'
      << "chosen_position=" << io::format_number(stack[trace.chosen_index].position_mm) << '\n'
      << "evaluations=" << trace.evaluations << '\n'
      << "probed=" << join_indices(trace.probed_indices) << '\n';
  return kExitOk;
}

int cmd_bench(const std::string& image_path, const MetricFlags& flags, std::size_t reps,
              std::ostream& out) {
  flags.config.validate();
  if (reps == 0) throw Error(ErrorCode::InvalidArgument, "--reps must be >= 1");
  const GrayImage img = io::load_image(image_path);
  for (MetricId m : kAllMetrics) check_preconditions(img.width(), img.height(), m, flags.config);

  out << "metric,width,height,reps,min_us,median_us,mean_us\n";
  for (MetricId m : kAllMetrics) {
    const TimingReport r = time_metric(img, m, flags.config, reps);
    out << to_string(m) << ',' << r.width << ',' << r.height << ',' << r.repetitions << ','
        << fixed3(r.min.count()) << ',' << fixed3(r.median.count()) << ','
        << fixed3(r.mean.count()) << '\n';
  }
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Focus measures for grayscale focus stacks", "focusctl"};
  app.require_subcommand(1);

  std::string input;
  std::string out_path;
  std::size_t smoothing = kDefaultSmoothingWidth;
  std::string strategy = "full";
  std::size_t coarse_step = 8;
  std::size_t reps = kDefaultRepetitions;

  MetricFlags score_flags, curve_flags, search_flags, bench_flags;
  SynthFlags synth_flags;

  auto* score_cmd = app.add_subcommand("score", "Score one image");
  score_cmd->add_option("image", input, "PGM or BMP image")->required();
  score_flags.add_to(*score_cmd, true);

  auto* curve_cmd = app.add_subcommand("curve", "Focus curve of a stack manifest");
  curve_cmd->add_option("manifest", input, "manifest CSV (position_mm,filename)")->required();
  curve_flags.add_to(*curve_cmd, true);
  curve_cmd->add_option("--smoothing", smoothing, "odd moving-average width for diagnostics");
  curve_cmd->add_option("--out", out_path, "curve CSV path (stdout if omitted)");

  auto* synth_cmd = app.add_subcommand("synth", "Write a synthetic focus stack");
  synth_cmd->add_option("--positions", synth_flags.positions, "number of lens positions");
  synth_cmd->add_option("--true-focus", synth_flags.true_focus, "index of the sharp image");
  synth_cmd->add_option("--rate", synth_flags.rate, "blur sigma (px) per mm of defocus");
  synth_cmd->add_option("--step-mm", synth_flags.step_mm, "lens step between positions");
  synth_cmd->add_option("--scene", synth_flags.scene, "checker|texture|lowdetail");
  synth_cmd->add_option("--seed", synth_flags.seed, "scene seed");
  synth_cmd->add_option("--width", synth_flags.width, "image width");
  synth_cmd->add_option("--height", synth_flags.height, "image height");
  synth_cmd->add_option("--cell", synth_flags.cell, "checkerboard cell size");
  synth_cmd->add_option("--out", synth_flags.out, "output directory")->required();

  auto* search_cmd = app.add_subcommand("search", "Autofocus search over a stack manifest");
  search_cmd->add_option("manifest", input, "manifest CSV")->required();
  search_flags.add_to(*search_cmd, true);
  search_cmd->add_option("--strategy", strategy, "full|coarse");
  search_cmd->add_option("--coarse-step", coarse_step, "coarse grid spacing (coarse strategy)");

  auto* bench_cmd = app.add_subcommand("bench", "Time every metric on one image");
  bench_cmd->add_option("image", input, "PGM or BMP image")->required();
  bench_flags.add_to(*bench_cmd, false);
  bench_cmd->add_option("--reps", reps, "timed repetitions per metric");

  try {
    app.parse(std::vector<std::string>(args.rbegin(), args.rend()));
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitValidation;
  }

  try {
    if (*score_cmd) return cmd_score(input, score_flags, out);
    if (*curve_cmd) return cmd_curve(input, curve_flags, smoothing, out_path, out, err);
    if (*synth_cmd) return cmd_synth(synth_flags, out);
    if (*search_cmd) return cmd_search(input, search_flags, strategy, coarse_step, out);
    if (*bench_cmd) return cmd_bench(input, bench_flags, reps, out);
  } catch (const Error& e) {
    err << "focusctl: " << e.what() << '\n';
    return is_io_error(e.code()) ? kExitIo : kExitValidation;
  } catch (const std::exception& e) {
    err << "focusctl: " << e.what() << '\n';
    return kExitIo;
  }
  return kExitValidation;
}

}  // namespace focus::cli
