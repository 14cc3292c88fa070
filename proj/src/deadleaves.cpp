#include "acutance/deadleaves.hpp"

#include <algorithm>
#include <cmath>

namespace acut::deadleaves {

std::string to_string(ColorMode mode) {
  switch (mode) {
    case ColorMode::uniform_rgb: return "uniform-rgb";
    case ColorMode::grey_uniform: return "grey-uniform";
    case ColorMode::palette: return "palette";
  }
  return "unknown";
}

ColorMode color_mode_from_string(const std::string& name) {
  if (name == "uniform-rgb") return ColorMode::uniform_rgb;
  if (name == "grey-uniform") return ColorMode::grey_uniform;
  if (name == "palette") return ColorMode::palette;
  throw DomainError("unknown color mode '" + name + "'");
}

Params Params::square(int n, std::uint64_t seed) {
  Params p;
  p.width = n;
  p.height = n;
  p.r_min = 1.0;
  p.r_max = n / 4.0;
  p.seed = seed;
  return p;
}

void Params::validate() const {
  if (width <= 0 || height <= 0) throw DomainError("dead leaves: width and height must be positive");
  if (!(alpha > 1.0)) throw DomainError("dead leaves: alpha must be > 1");
  if (!(r_min > 0.0) || !(r_min <= r_max)) throw DomainError("dead leaves: need 0 < r_min <= r_max");
  if (r_max > std::max(width, height)) throw DomainError("dead leaves: r_max must not exceed max(width, height)");
  if (color_mode == ColorMode::palette && palette.empty()) {
    throw DomainError("dead leaves: palette mode needs at least one color");
  }
  if (disk_budget == 0) throw DomainError("dead leaves: disk budget must be positive");
}

double radius_quantile(const Params& params, double u) {
  if (params.r_min == params.r_max) return params.r_min;
  const double e = 1.0 - params.alpha;
  const double lo = std::pow(params.r_min, e);
  const double hi = std::pow(params.r_max, e);
  const double r = std::pow(lo - u * (lo - hi), 1.0 / e);
  return std::clamp(r, params.r_min, params.r_max);
}

double sample_radius(const Params& params, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  return radius_quantile(params, unit(rng));
}

namespace {

Rgb sample_color(const Params& params, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  switch (params.color_mode) {
    case ColorMode::uniform_rgb: {
      const double r = unit(rng);
      const double g = unit(rng);
      const double b = unit(rng);
      return {r, g, b};
    }
    case ColorMode::grey_uniform: {
      const double v = unit(rng);
      return {v, v, v};
    }
    case ColorMode::palette: {
      std::uniform_int_distribution<std::size_t> pick(0, params.palette.size() - 1);
      return params.palette[pick(rng)];
    }
  }
  return {0.0, 0.0, 0.0};
}

Generated run(const Params& params, bool trace) {
  params.validate();
  const int w = params.width;
  const int h = params.height;
  const int channels = params.color_mode == ColorMode::grey_uniform ? 1 : 3;

  std::vector<double> pixels(static_cast<std::size_t>(w) * h * channels, 0.0);
  std::vector<std::uint8_t> covered(static_cast<std::size_t>(w) * h, 0);
  std::size_t uncovered = covered.size();

  std::mt19937_64 rng(params.seed);
  std::uniform_real_distribution<double> cx_dist(-params.r_max, w + params.r_max);
  std::uniform_real_distribution<double> cy_dist(-params.r_max, h + params.r_max);

  Generated out;
  std::uint64_t drawn = 0;
  while (uncovered > 0) {
    if (drawn >= params.disk_budget) {
      throw DomainError("dead leaves: disk budget of " + std::to_string(params.disk_budget) +
                        " exhausted with " + std::to_string(uncovered) + " pixels uncovered");
    }
    Disk d;
    d.cx = cx_dist(rng);
    d.cy = cy_dist(rng);
    d.radius = sample_radius(params, rng);
    d.color = sample_color(params, rng);
    ++drawn;
    if (trace) out.disks.push_back(d);

    const int x0 = std::max(0, static_cast<int>(std::floor(d.cx - d.radius)));
    const int x1 = std::min(w - 1, static_cast<int>(std::ceil(d.cx + d.radius)));
    const int y0 = std::max(0, static_cast<int>(std::floor(d.cy - d.radius)));
    const int y1 = std::min(h - 1, static_cast<int>(std::ceil(d.cy + d.radius)));
    for (int y = y0; y <= y1; ++y) {
      for (int x = x0; x <= x1; ++x) {
        const std::size_t p = static_cast<std::size_t>(y) * w + x;
        if (covered[p] || !covers(d, x, y)) continue;
        covered[p] = 1;
        --uncovered;
        for (int c = 0; c < channels; ++c) pixels[p * channels + c] = d.color[static_cast<std::size_t>(c)];
      }
    }
  }
  out.image = Image(w, h, channels, std::move(pixels));
  return out;
}

}  // namespace

Generated generate_traced(const Params& params) { return run(params, true); }

Image generate(const Params& params) { return run(params, false).image; }

}  // namespace acut::deadleaves
