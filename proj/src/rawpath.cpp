#include "acutance/rawpath.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <random>

namespace acut::raw {

namespace {

void require_even(int width, int height, const char* what) {
  if (width <= 0 || height <= 0 || width % 2 != 0 || height % 2 != 0) {
    throw DomainError(std::string(what) + ": dimensions must be positive and even, got " + std::to_string(width) +
                      "x" + std::to_string(height));
  }
}

// Channel sampled at (x, y) of an RGGB tile: 0 = R, 1 = G, 2 = B.
int cfa_channel(int x, int y) {
  if (y % 2 == 0) return x % 2 == 0 ? 0 : 1;
  return x % 2 == 0 ? 1 : 2;
}

// Packed plane holding (x, y): R, G1, G2, B.
int cfa_plane(int x, int y) { return (y % 2) * 2 + (x % 2); }

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

std::uint32_t get_u32(std::span<const std::uint8_t> in, std::size_t offset) {
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(in[offset + static_cast<std::size_t>(i)]) << (8 * i);
  return v;
}

void put_f32(std::vector<std::uint8_t>& out, double v) { put_u32(out, std::bit_cast<std::uint32_t>(static_cast<float>(v))); }

double get_f32(std::span<const std::uint8_t> in, std::size_t offset) {
  return static_cast<double>(std::bit_cast<float>(get_u32(in, offset)));
}

}  // namespace

void WhiteBalance::validate() const {
  for (double gain : {r, g, b}) {
    if (!(gain > 0.0) || !std::isfinite(gain)) throw DomainError("white-balance gains must be finite and positive");
  }
}

RawImage::RawImage(int width, int height, std::vector<double> data, WhiteBalance wb)
    : width_(width), height_(height), data_(std::move(data)), wb_(wb) {
  require_even(width, height, "RawImage");
  wb_.validate();
  if (data_.size() != static_cast<std::size_t>(width) * height) throw DomainError("RawImage: data length mismatch");
  for (double v : data_) {
    if (!std::isfinite(v)) throw DomainError("RawImage contains a non-finite value");
  }
}

PackedRggb pack_rggb(const RawImage& raw) {
  PackedRggb p;
  p.width = raw.width() / 2;
  p.height = raw.height() / 2;
  for (auto& plane : p.planes) plane.resize(static_cast<std::size_t>(p.width) * p.height);
  for (int y = 0; y < raw.height(); ++y) {
    for (int x = 0; x < raw.width(); ++x) {
      p.planes[static_cast<std::size_t>(cfa_plane(x, y))][static_cast<std::size_t>(y / 2) * p.width + x / 2] =
          raw.at(x, y);
    }
  }
  return p;
}

RawImage unpack_rggb(const PackedRggb& packed, const WhiteBalance& wb) {
  const int w = packed.width * 2;
  const int h = packed.height * 2;
  require_even(w, h, "unpack_rggb");
  for (const auto& plane : packed.planes) {
    if (plane.size() != static_cast<std::size_t>(packed.width) * packed.height) {
      throw DomainError("unpack_rggb: plane size mismatch");
    }
  }
  std::vector<double> data(static_cast<std::size_t>(w) * h);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x)
      data[static_cast<std::size_t>(y) * w + x] = packed.at(cfa_plane(x, y), x / 2, y / 2);
  return RawImage(w, h, std::move(data), wb);
}

GreyImage raw_to_grey(const PackedRggb& packed, const WhiteBalance& wb) {
  wb.validate();
  std::vector<double> grey(static_cast<std::size_t>(packed.width) * packed.height);
  const auto& [r, g1, g2, b] = packed.planes;
  for (std::size_t i = 0; i < grey.size(); ++i) {
    grey[i] = (wb.r * r[i] + wb.g * g1[i] + wb.g * g2[i] + wb.b * b[i]) / 4.0;
  }
  return GreyImage(packed.width, packed.height, std::move(grey));
}

RawImage mosaic_from_rgb(const Image& img, const WhiteBalance& wb) {
  if (img.channels() != 3) throw DomainError("mosaic_from_rgb: expected a 3-channel image");
  require_even(img.width(), img.height(), "mosaic_from_rgb");
  wb.validate();
  const std::array<double, 3> gains{wb.r, wb.g, wb.b};
  std::vector<double> data(img.pixel_count());
  for (int y = 0; y < img.height(); ++y) {
    for (int x = 0; x < img.width(); ++x) {
      const int c = cfa_channel(x, y);
      data[static_cast<std::size_t>(y) * img.width() + x] =
          std::clamp(img.at(x, y, c) / gains[static_cast<std::size_t>(c)], 0.0, 1.0);
    }
  }
  return RawImage(img.width(), img.height(), std::move(data), wb);
}

RawImage add_poisson_gaussian(const RawImage& raw, double shot_a, double read_b, std::uint64_t seed) {
  if (!(shot_a >= 0.0) || !(read_b >= 0.0) || !std::isfinite(shot_a) || !std::isfinite(read_b)) {
    throw DomainError("poisson-gaussian: shot and read parameters must be >= 0");
  }
  if (shot_a == 0.0 && read_b == 0.0) return raw;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> unit(0.0, 1.0);
  std::vector<double> out(raw.data().begin(), raw.data().end());
  for (double& x : out) {
    const double variance = std::max(shot_a * x + read_b, 0.0);
    x += std::sqrt(variance) * unit(rng);
  }
  return RawImage(raw.width(), raw.height(), std::move(out), raw.wb());
}

double raw_acutance(const RawImage& ref, const RawImage& test, const acutance::CsfParams& csf,
                    const acutance::ViewingConditions& v, const spectrum::MeasureOptions& options) {
  if (ref.width() != test.width() || ref.height() != test.height()) throw DomainError("raw_acutance: size mismatch");
  if (!(ref.wb() == test.wb())) throw DomainError("raw_acutance: white-balance gains differ");
  const auto ref_grey = raw_to_grey(pack_rggb(ref), ref.wb());
  const auto test_grey = raw_to_grey(pack_rggb(test), test.wb());
  return acutance::acutance_score(spectrum::measure_mtf(ref_grey, test_grey, options), csf, v);
}

std::vector<std::uint8_t> encode_rawf(const RawImage& raw) {
  std::vector<std::uint8_t> out;
  out.reserve(kRawfHeaderSize + 4 * raw.data().size());
  for (char c : {'R', 'A', 'W', 'F'}) out.push_back(static_cast<std::uint8_t>(c));
  put_u32(out, static_cast<std::uint32_t>(raw.width()));
  put_u32(out, static_cast<std::uint32_t>(raw.height()));
  put_f32(out, raw.wb().r);
  put_f32(out, raw.wb().g);
  put_f32(out, raw.wb().b);
  out.resize(kRawfHeaderSize, 0);
  for (double v : raw.data()) put_f32(out, v);
  return out;
}

RawImage decode_rawf(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < kRawfHeaderSize || std::memcmp(bytes.data(), "RAWF", 4) != 0) {
    throw IoError("RAWF: missing magic or truncated header");
  }
  const std::uint32_t w = get_u32(bytes, 4);
  const std::uint32_t h = get_u32(bytes, 8);
  const WhiteBalance wb{get_f32(bytes, 12), get_f32(bytes, 16), get_f32(bytes, 20)};
  const std::uint64_t samples = static_cast<std::uint64_t>(w) * h;
  if (w > (1u << 30) || h > (1u << 30) || bytes.size() != kRawfHeaderSize + 4 * samples) {
    throw IoError("RAWF: payload size does not match header dimensions");
  }
  if (w == 0 || h == 0 || w % 2 != 0 || h % 2 != 0) throw IoError("RAWF: dimensions must be positive and even");
  std::vector<double> data(samples);
  for (std::size_t i = 0; i < samples; ++i) data[i] = get_f32(bytes, kRawfHeaderSize + 4 * i);
  return RawImage(static_cast<int>(w), static_cast<int>(h), std::move(data), wb);
}

void write_rawf(const std::filesystem::path& path, const RawImage& raw) {
  const auto bytes = encode_rawf(raw);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("failed writing " + path.string());
}

RawImage read_rawf(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return decode_rawf(bytes);
}

}  // namespace acut::raw
