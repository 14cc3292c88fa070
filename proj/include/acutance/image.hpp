#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace acut {

/// Raised when an input violates a numeric precondition (shape, range, finiteness).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised for unreadable/unwritable files and malformed containers.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/**
 * Row-major interleaved raster with 1 or 3 channels.
 *
 * Values are stored unclipped; NaN and Inf are rejected whenever an Image is
 * constructed from data. Clipping to [0,1] happens only on export.
 */
class Image {
 public:
  Image() = default;
  Image(int width, int height, int channels, double fill = 0.0);
  Image(int width, int height, int channels, std::vector<double> data);

  int width() const { return width_; }
  int height() const { return height_; }
  int channels() const { return channels_; }
  std::size_t pixel_count() const { return static_cast<std::size_t>(width_) * height_; }
  std::size_t size() const { return data_.size(); }
  bool is_square() const { return width_ == height_; }

  double at(int x, int y, int c = 0) const { return data_[index(x, y, c)]; }
  double& at(int x, int y, int c = 0) { return data_[index(x, y, c)]; }

  std::span<const double> data() const { return data_; }
  std::span<double> data() { return data_; }

  bool same_shape(const Image& other) const {
    return width_ == other.width_ && height_ == other.height_ && channels_ == other.channels_;
  }

  friend bool operator==(const Image&, const Image&) = default;

 private:
  std::size_t index(int x, int y, int c) const {
    return (static_cast<std::size_t>(y) * width_ + x) * channels_ + c;
  }

  int width_ = 0;
  int height_ = 0;
  int channels_ = 1;
  std::vector<double> data_;
};

/// Single-channel raster, the input of every spectral measurement.
class GreyImage {
 public:
  GreyImage() = default;
  GreyImage(int width, int height, double fill = 0.0);
  GreyImage(int width, int height, std::vector<double> data);

  int width() const { return width_; }
  int height() const { return height_; }
  std::size_t size() const { return data_.size(); }
  bool is_square() const { return width_ == height_; }

  double at(int x, int y) const { return data_[static_cast<std::size_t>(y) * width_ + x]; }
  double& at(int x, int y) { return data_[static_cast<std::size_t>(y) * width_ + x]; }

  std::span<const double> data() const { return data_; }
  std::span<double> data() { return data_; }

  Image to_image() const { return Image(width_, height_, 1, data_); }

  friend bool operator==(const GreyImage&, const GreyImage&) = default;

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<double> data_;
};

/// Rec. 709 luma weights: 0.2126 R + 0.7152 G + 0.0722 B. One channel passes through.
GreyImage to_grey(const Image& img);

/// Per-element a*x + b*y on same-shaped images.
Image linear_combination(double a, const Image& x, double b, const Image& y);
Image scaled(const Image& img, double factor);
Image offset(const Image& img, double delta);

/// Clamp every value to [0,1]; used only before writing display-referred files.
Image clipped(const Image& img);

double mean_squared_error(const Image& a, const Image& b);
double mean_absolute_error(const Image& a, const Image& b);

/// 10*log10(peak^2 / MSE). Returns +infinity when the images are identical.
double psnr(const Image& a, const Image& b, double peak = 1.0);

/// Throws DomainError unless a and b share width, height and channel count.
void require_same_shape(const Image& a, const Image& b, const std::string& what);

}  // namespace acut
