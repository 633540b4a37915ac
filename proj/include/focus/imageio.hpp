#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "focus/image.hpp"
#include "focus/stack.hpp"

namespace focus::io {

enum class ImageFormat { Auto, Pgm, Bmp };

// Decodes binary PGM (P5, maxval 255), or uncompressed BMP with 8-bit palette
// or 24-bit pixels. Colour pixels are converted with BT.601 luma weights.
// Errors: UnsupportedFormat, CorruptFile.
GrayImage decode_image(std::span<const std::uint8_t> bytes,
                       ImageFormat format_hint = ImageFormat::Auto);

// P5 with maxval 255; samples are rounded to the nearest integer.
std::vector<std::uint8_t> encode_pgm(const GrayImage& img);

struct ManifestEntry {
  double position_mm;
  std::filesystem::path file;  // resolved against the manifest's base directory

  friend bool operator==(const ManifestEntry&, const ManifestEntry&) = default;
};

// Lines of `position_mm,filename`; '#' comment lines and blank lines are
// skipped. Errors: MalformedLine, NonIncreasingPositions, EmptyManifest.
std::vector<ManifestEntry> read_manifest(std::string_view text,
                                         const std::filesystem::path& base_dir);

std::string write_manifest(const std::vector<ManifestEntry>& entries);

// `position,score` header plus one row per point, shortest round-trip
// formatting. Error: EmptyCurve.
std::string write_curve_csv(const FocusCurve& curve);

// Inverse of write_curve_csv (metric is not stored and is left defaulted).
FocusCurve read_curve_csv(std::string_view text);

// Shortest decimal that parses back to exactly `value`.
std::string format_number(double value);

// File helpers; failures throw Error(Io).
std::vector<std::uint8_t> read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);
void write_text_file(const std::filesystem::path& path, std::string_view text);

GrayImage load_image(const std::filesystem::path& path);
FocusStack load_stack(const std::filesystem::path& manifest_path);

// Writes pos_NNN.pgm files and manifest.csv into `dir` (created if needed).
// Returns the manifest path.
std::filesystem::path save_stack(const FocusStack& stack, const std::filesystem::path& dir);

}  // namespace focus::io
