#include "focus/imageio.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>

#include "focus/error.hpp"

namespace focus::io {
namespace {

[[noreturn]] void corrupt(const std::string& what) { throw Error(ErrorCode::CorruptFile, what); }
[[noreturn]] void unsupported(const std::string& what) {
  throw Error(ErrorCode::UnsupportedFormat, what);
}

double luma(double r, double g, double b) { return 0.299 * r + 0.587 * g + 0.114 * b; }

// ---------------------------------------------------------------------------
// PGM (P5)

class PgmHeaderReader {
 public:
  explicit PgmHeaderReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  // Next whitespace-delimited decimal token, skipping '#' comments.
  long next_number() {
    skip_space_and_comments();
    const std::size_t begin = pos_;
    while (pos_ < bytes_.size() && std::isdigit(bytes_[pos_])) ++pos_;
    if (begin == pos_) corrupt("PGM header: expected a number");
    long value = 0;
    const char* first = reinterpret_cast<const char*>(bytes_.data() + begin);
    const char* last = reinterpret_cast<const char*>(bytes_.data() + pos_);
    if (std::from_chars(first, last, value).ec != std::errc{}) corrupt("PGM header: bad number");
    return value;
  }

  // Exactly one whitespace byte separates maxval from the raster.
  std::size_t raster_offset() {
    if (pos_ >= bytes_.size() || !std::isspace(bytes_[pos_])) {
      corrupt("PGM header: missing whitespace before raster");
    }
    return pos_ + 1;
  }

 private:
  void skip_space_and_comments() {
    while (pos_ < bytes_.size()) {
      if (std::isspace(bytes_[pos_])) {
        ++pos_;
      } else if (bytes_[pos_] == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 2;  // past the magic
};

GrayImage decode_pgm(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 2 || bytes[0] != 'P') unsupported("not a PGM file");
  if (bytes[1] != '5') unsupported("only binary P5 PGM is supported");
  PgmHeaderReader header(bytes);
  const long width = header.next_number();
  const long height = header.next_number();
  const long maxval = header.next_number();
  if (width <= 0 || height <= 0) corrupt("PGM dimensions must be positive");
  if (maxval != 255) unsupported("PGM maxval must be 255, got " + std::to_string(maxval));
  const std::size_t offset = header.raster_offset();
  const std::size_t count = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  if (bytes.size() - std::min(offset, bytes.size()) < count) corrupt("PGM raster is truncated");

  std::vector<double> samples(count);
  for (std::size_t i = 0; i < count; ++i) samples[i] = bytes[offset + i];
  return GrayImage(static_cast<std::size_t>(width), static_cast<std::size_t>(height),
                   std::move(samples));
}

// ---------------------------------------------------------------------------
// BMP (BITMAPINFOHEADER, uncompressed, 8 or 24 bit)

std::uint32_t le32(std::span<const std::uint8_t> b, std::size_t at) {
  return static_cast<std::uint32_t>(b[at]) | (static_cast<std::uint32_t>(b[at + 1]) << 8) |
         (static_cast<std::uint32_t>(b[at + 2]) << 16) |
         (static_cast<std::uint32_t>(b[at + 3]) << 24);
}
std::uint16_t le16(std::span<const std::uint8_t> b, std::size_t at) {
  return static_cast<std::uint16_t>(b[at] | (b[at + 1] << 8));
}

GrayImage decode_bmp(std::span<const std::uint8_t> bytes) {
  constexpr std::size_t kFileHeader = 14;
  constexpr std::size_t kInfoHeader = 40;
  if (bytes.size() < 2 || bytes[0] != 'B' || bytes[1] != 'M') unsupported("not a BMP file");
  if (bytes.size() < kFileHeader + kInfoHeader) corrupt("BMP headers are truncated");

  const std::uint32_t data_offset = le32(bytes, 10);
  const std::uint32_t info_size = le32(bytes, 14);
  const auto width = static_cast<std::int32_t>(le32(bytes, 18));
  const auto raw_height = static_cast<std::int32_t>(le32(bytes, 22));
  const std::uint16_t bit_count = le16(bytes, 28);
  const std::uint32_t compression = le32(bytes, 30);
  const std::uint32_t colors_used = le32(bytes, 46);

  if (info_size < kInfoHeader) unsupported("only BITMAPINFOHEADER or later BMP headers are supported");
  if (compression != 0) unsupported("compressed BMP is not supported");
  if (bit_count != 8 && bit_count != 24) {
    unsupported("BMP bit depth " + std::to_string(bit_count) + " is not supported");
  }
  if (width <= 0 || raw_height == 0) corrupt("BMP dimensions must be positive");
  // Negative height marks top-down row order.
  const bool bottom_up = raw_height > 0;
  const std::size_t w = static_cast<std::size_t>(width);
  const std::size_t h = static_cast<std::size_t>(bottom_up ? static_cast<std::int64_t>(raw_height)
                                                           : -static_cast<std::int64_t>(raw_height));

  std::vector<double> palette;
  if (bit_count == 8) {
    const std::size_t entries = colors_used == 0 ? 256 : colors_used;
    if (entries > 256) corrupt("BMP palette has more than 256 entries");
    const std::size_t palette_at = kFileHeader + info_size;
    if (bytes.size() < palette_at + 4 * entries) corrupt("BMP palette is truncated");
    palette.resize(entries);
    for (std::size_t i = 0; i < entries; ++i) {
      const std::size_t at = palette_at + 4 * i;  // B, G, R, reserved
      palette[i] = luma(bytes[at + 2], bytes[at + 1], bytes[at]);
    }
  }

  const std::size_t row_bytes = (w * bit_count / 8 + 3) & ~static_cast<std::size_t>(3);
  if (data_offset > bytes.size() || bytes.size() - data_offset < row_bytes * h) {
    corrupt("BMP pixel data is truncated");
  }

  std::vector<double> samples(w * h);
  for (std::size_t file_row = 0; file_row < h; ++file_row) {
    const std::size_t out_row = bottom_up ? h - 1 - file_row : file_row;
    const std::uint8_t* src = bytes.data() + data_offset + file_row * row_bytes;
    double* dst = samples.data() + out_row * w;
    for (std::size_t c = 0; c < w; ++c) {
      if (bit_count == 8) {
        if (src[c] >= palette.size()) corrupt("BMP pixel references a missing palette entry");
        dst[c] = palette[src[c]];
      } else {
        const std::uint8_t* px = src + 3 * c;  // B, G, R
        dst[c] = luma(px[2], px[1], px[0]);
      }
      dst[c] = std::clamp(dst[c], 0.0, GrayImage::kMaxSample);
    }
  }
  return GrayImage(w, h, std::move(samples));
}

std::string_view trim(std::string_view s) {
  const auto not_space = [](char ch) { return !std::isspace(static_cast<unsigned char>(ch)); };
  const auto first = std::find_if(s.begin(), s.end(), not_space);
  const auto last = std::find_if(s.rbegin(), s.rend(), not_space).base();
  return first < last ? std::string_view(first, last) : std::string_view{};
}

bool parse_double(std::string_view text, double& out) {
  const char* first = text.data();
  const char* last = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc{} && ptr == last && std::isfinite(out);
}

template <class Fn>
void for_each_line(std::string_view text, Fn&& fn) {
  std::size_t line_no = 0;
  while (!text.empty()) {
    const std::size_t nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    fn(line, line_no);
    if (nl == std::string_view::npos) break;
    text.remove_prefix(nl + 1);
  }
}

}  // namespace

GrayImage decode_image(std::span<const std::uint8_t> bytes, ImageFormat format_hint) {
  if (format_hint == ImageFormat::Auto) {
    if (bytes.size() >= 2 && bytes[0] == 'B' && bytes[1] == 'M') {
      format_hint = ImageFormat::Bmp;
    } else if (bytes.size() >= 2 && bytes[0] == 'P') {
      format_hint = ImageFormat::Pgm;
    } else {
      unsupported("unrecognised image format");
    }
  }
  return format_hint == ImageFormat::Bmp ? decode_bmp(bytes) : decode_pgm(bytes);
}

std::vector<std::uint8_t> encode_pgm(const GrayImage& img) {
  const std::string header =
      "P5\n" + std::to_string(img.width()) + " " + std::to_string(img.height()) + "\n255\n";
  std::vector<std::uint8_t> out(header.begin(), header.end());
  out.reserve(header.size() + img.size());
  for (double s : img.samples()) out.push_back(static_cast<std::uint8_t>(std::lround(s)));
  return out;
}

std::vector<ManifestEntry> read_manifest(std::string_view text,
                                         const std::filesystem::path& base_dir) {
  std::vector<ManifestEntry> entries;
  for_each_line(text, [&](std::string_view raw, std::size_t line_no) {
    const std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#') return;
    const std::size_t comma = line.find(',');
    const auto fail = [&](const std::string& why) {
      throw Error(ErrorCode::MalformedLine,
                  "manifest line " + std::to_string(line_no) + ": " + why);
    };
    if (comma == std::string_view::npos) fail("expected 'position_mm,filename'");
    double position = 0.0;
    if (!parse_double(trim(line.substr(0, comma)), position)) fail("bad position");
    const std::string_view file = trim(line.substr(comma + 1));
    if (file.empty()) fail("missing filename");
    if (!entries.empty() && !(position > entries.back().position_mm)) {
      throw Error(ErrorCode::NonIncreasingPositions,
                  "manifest line " + std::to_string(line_no) + ": position " +
                      format_number(position) + " does not increase");
    }
    entries.push_back({position, base_dir / std::filesystem::path(std::string(file))});
  });
  if (entries.empty()) throw Error(ErrorCode::EmptyManifest, "manifest lists no images");
  if (entries.size() < 2) {
    throw Error(ErrorCode::TooFewPoints, "manifest lists a single image; a stack needs 2 or more");
  }
  return entries;
}

std::string write_manifest(const std::vector<ManifestEntry>& entries) {
  std::string out = "# position_mm,filename\n";
  for (const ManifestEntry& e : entries) {
    out += format_number(e.position_mm) + "," + e.file.generic_string() + "\n";
  }
  return out;
}

std::string format_number(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, ptr);
}

std::string write_curve_csv(const FocusCurve& curve) {
  if (curve.points.empty()) throw Error(ErrorCode::EmptyCurve, "curve has no points");
  std::string out = "position,score";
  for (const CurvePoint& p : curve.points) {
    out += '\n';
    out += format_number(p.position_mm);
    out += ',';
    out += format_number(p.score);
  }
  return out;
}

FocusCurve read_curve_csv(std::string_view text) {
  FocusCurve curve;
  bool header_seen = false;
  for_each_line(text, [&](std::string_view raw, std::size_t line_no) {
    const std::string_view line = trim(raw);
    if (line.empty()) return;
    if (!header_seen) {
      if (line != "position,score") {
        throw Error(ErrorCode::MalformedLine, "curve CSV must start with 'position,score'");
      }
      header_seen = true;
      return;
    }
    const std::size_t comma = line.find(',');
    CurvePoint p{};
    if (comma == std::string_view::npos || !parse_double(line.substr(0, comma), p.position_mm) ||
        !parse_double(line.substr(comma + 1), p.score)) {
      throw Error(ErrorCode::MalformedLine, "curve CSV line " + std::to_string(line_no));
    }
    curve.points.push_back(p);
  });
  if (curve.points.empty()) throw Error(ErrorCode::EmptyCurve, "curve CSV has no rows");
  return curve;
}

std::vector<std::uint8_t> read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  if (in.bad()) throw Error(ErrorCode::Io, "cannot read " + path.string());
  return bytes;
}

void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::Io, "cannot create " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorCode::Io, "cannot write " + path.string());
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  write_file(path, {reinterpret_cast<const std::uint8_t*>(text.data()), text.size()});
}

GrayImage load_image(const std::filesystem::path& path) {
  try {
    return decode_image(read_file(path));
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.detail());
  }
}

FocusStack load_stack(const std::filesystem::path& manifest_path) {
  const std::vector<std::uint8_t> bytes = read_file(manifest_path);
  const std::string_view text(reinterpret_cast<const char*>(bytes.data()), bytes.size());
  const auto entries = read_manifest(text, manifest_path.parent_path());
  std::vector<StackEntry> stack;
  stack.reserve(entries.size());
  for (const ManifestEntry& e : entries) stack.push_back({e.position_mm, load_image(e.file)});
  return FocusStack(std::move(stack));
}

std::filesystem::path save_stack(const FocusStack& stack, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::Io, "cannot create directory " + dir.string() + ": " + ec.message());

  const int digits = std::max<int>(3, static_cast<int>(std::to_string(stack.size() - 1).size()));
  std::vector<ManifestEntry> entries;
  for (std::size_t i = 0; i < stack.size(); ++i) {
    std::string index = std::to_string(i);
    index.insert(0, static_cast<std::size_t>(digits) - index.size(), '0');
    const std::string name = "pos_" + index + ".pgm";
    write_file(dir / name, encode_pgm(stack[i].image));
    entries.push_back({stack[i].position_mm, name});
  }
  const auto manifest = dir / "manifest.csv";
  write_text_file(manifest, write_manifest(entries));
  return manifest;
}

}  // namespace focus::io
