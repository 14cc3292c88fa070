#include "acutance/image.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "acutance/kernels.hpp"

namespace acut {

namespace {

void check_dimensions(int width, int height) {
  if (width <= 0 || height <= 0) {
    throw DomainError("image dimensions must be positive, got " + std::to_string(width) + "x" +
                      std::to_string(height));
  }
}

void check_finite(std::span<const double> data) {
  for (double v : data) {
    if (!std::isfinite(v)) throw DomainError("image contains a non-finite value");
  }
}

}  // namespace

Image::Image(int width, int height, int channels, double fill)
    : Image(width, height, channels,
            std::vector<double>(static_cast<std::size_t>(std::max(width, 0)) * std::max(height, 0) *
                                    std::max(channels, 0),
                                fill)) {}

Image::Image(int width, int height, int channels, std::vector<double> data)
    : width_(width), height_(height), channels_(channels), data_(std::move(data)) {
  check_dimensions(width, height);
  if (channels != 1 && channels != 3) {
    throw DomainError("channel count must be 1 or 3, got " + std::to_string(channels));
  }
  if (data_.size() != static_cast<std::size_t>(width) * height * channels) {
    throw DomainError("image data length does not match width*height*channels");
  }
  check_finite(data_);
}

GreyImage::GreyImage(int width, int height, double fill)
    : GreyImage(width, height,
                std::vector<double>(static_cast<std::size_t>(std::max(width, 0)) * std::max(height, 0), fill)) {}

GreyImage::GreyImage(int width, int height, std::vector<double> data)
    : width_(width), height_(height), data_(std::move(data)) {
  check_dimensions(width, height);
  if (data_.size() != static_cast<std::size_t>(width) * height) {
    throw DomainError("grey image data length does not match width*height");
  }
  check_finite(data_);
}

GreyImage to_grey(const Image& img) {
  if (img.channels() == 1) {
    return GreyImage(img.width(), img.height(), std::vector<double>(img.data().begin(), img.data().end()));
  }
  if (img.channels() != 3) throw DomainError("to_grey expects 1 or 3 channels");
  std::vector<double> grey(img.pixel_count());
  kernels::omp::to_grey(img.data(), grey);
  return GreyImage(img.width(), img.height(), std::move(grey));
}

void require_same_shape(const Image& a, const Image& b, const std::string& what) {
  if (!a.same_shape(b)) {
    throw DomainError(what + ": shape mismatch (" + std::to_string(a.width()) + "x" + std::to_string(a.height()) +
                      "x" + std::to_string(a.channels()) + " vs " + std::to_string(b.width()) + "x" +
                      std::to_string(b.height()) + "x" + std::to_string(b.channels()) + ")");
  }
}

Image linear_combination(double a, const Image& x, double b, const Image& y) {
  require_same_shape(x, y, "linear_combination");
  std::vector<double> out(x.size());
  auto xs = x.data();
  auto ys = y.data();
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a * xs[i] + b * ys[i];
  return Image(x.width(), x.height(), x.channels(), std::move(out));
}

Image scaled(const Image& img, double factor) {
  std::vector<double> out(img.data().begin(), img.data().end());
  for (double& v : out) v *= factor;
  return Image(img.width(), img.height(), img.channels(), std::move(out));
}

Image offset(const Image& img, double delta) {
  std::vector<double> out(img.data().begin(), img.data().end());
  for (double& v : out) v += delta;
  return Image(img.width(), img.height(), img.channels(), std::move(out));
}

Image clipped(const Image& img) {
  std::vector<double> out(img.data().begin(), img.data().end());
  for (double& v : out) v = std::clamp(v, 0.0, 1.0);
  return Image(img.width(), img.height(), img.channels(), std::move(out));
}

double mean_squared_error(const Image& a, const Image& b) {
  require_same_shape(a, b, "mean_squared_error");
  auto as = a.data();
  auto bs = b.data();
  double sum = 0.0;
  for (std::size_t i = 0; i < as.size(); ++i) {
    const double d = as[i] - bs[i];
    sum += d * d;
  }
  return sum / static_cast<double>(as.size());
}

double mean_absolute_error(const Image& a, const Image& b) {
  require_same_shape(a, b, "mean_absolute_error");
  auto as = a.data();
  auto bs = b.data();
  double sum = 0.0;
  for (std::size_t i = 0; i < as.size(); ++i) sum += std::abs(as[i] - bs[i]);
  return sum / static_cast<double>(as.size());
}

double psnr(const Image& a, const Image& b, double peak) {
  if (!(peak > 0.0)) throw DomainError("psnr peak must be positive");
  const double mse = mean_squared_error(a, b);
  if (mse == 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(peak * peak / mse);
}

}  // namespace acut
