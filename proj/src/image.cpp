#include "lrsb/image.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

namespace lrsb {

Image::Image(std::size_t w, std::size_t h, Rgb fill)
    : width(w), height(h), pixels(w * h * 3) {
  for (std::size_t p = 0; p < w * h; ++p) {
    std::copy(fill.begin(), fill.end(), pixels.begin() + static_cast<std::ptrdiff_t>(p * 3));
  }
}

Rgb Image::At(std::size_t x, std::size_t y) const {
  const std::size_t o = (y * width + x) * 3;
  return {pixels[o], pixels[o + 1], pixels[o + 2]};
}

void Image::Set(std::size_t x, std::size_t y, Rgb c) {
  const std::size_t o = (y * width + x) * 3;
  pixels[o] = c[0];
  pixels[o + 1] = c[1];
  pixels[o + 2] = c[2];
}

std::string Image::EncodePpm() const {
  std::string out = "P6\n" + std::to_string(width) + " " +
                    std::to_string(height) + "\n255\n";
  out.append(pixels.begin(), pixels.end());
  return out;
}

void Image::WritePpm(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidArgument("cannot write image: " + path);
  const std::string bytes = EncodePpm();
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

Rgb Colormap(double t) {
  static constexpr std::array<std::array<double, 3>, 5> kStops = {{
      {68, 1, 84},
      {59, 82, 139},
      {33, 145, 140},
      {94, 201, 98},
      {253, 231, 37},
  }};
  if (!(t > 0.0)) t = 0.0;
  if (t > 1.0) t = 1.0;
  const double pos = t * static_cast<double>(kStops.size() - 1);
  const auto lo = std::min<std::size_t>(static_cast<std::size_t>(pos), kStops.size() - 2);
  const double f = pos - static_cast<double>(lo);
  Rgb c{};
  for (std::size_t k = 0; k < 3; ++k) {
    const double v = kStops[lo][k] + f * (kStops[lo + 1][k] - kStops[lo][k]);
    c[k] = static_cast<std::uint8_t>(std::lround(v));
  }
  return c;
}

Image RenderHeatmap(const DenseMatrix& m, std::size_t cell) {
  if (cell < 1) throw InvalidArgument("heatmap cell size must be >= 1");
  Image img(m.cols() * cell, m.rows() * cell, Colormap(0.0));
  if (m.empty()) return img;
  const double lo = m.values().minCoeff();
  const double hi = m.values().maxCoeff();
  const double span = hi - lo;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const double t = span > 0.0 ? (m(i, j) - lo) / span : 0.0;
      const Rgb c = Colormap(t);
      for (std::size_t dy = 0; dy < cell; ++dy) {
        for (std::size_t dx = 0; dx < cell; ++dx) {
          img.Set(j * cell + dx, i * cell + dy, c);
        }
      }
    }
  }
  return img;
}

Image RenderScatter(const DenseMatrix& points, std::size_t size) {
  if (points.cols() < 2) {
    throw InvalidArgument("scatter needs at least two embedding dimensions");
  }
  if (size < 16) throw InvalidArgument("scatter canvas too small");
  Image img(size, size, {255, 255, 255});
  if (points.rows() == 0) return img;
  const Eigen::MatrixXd& v = points.values();
  const double x_lo = v.col(0).minCoeff(), x_hi = v.col(0).maxCoeff();
  const double y_lo = v.col(1).minCoeff(), y_hi = v.col(1).maxCoeff();
  const double margin = 8.0;
  const double span = static_cast<double>(size) - 2.0 * margin - 1.0;
  const Rgb ink = Colormap(0.0);
  for (Eigen::Index p = 0; p < v.rows(); ++p) {
    const double tx = x_hi > x_lo ? (v(p, 0) - x_lo) / (x_hi - x_lo) : 0.5;
    const double ty = y_hi > y_lo ? (v(p, 1) - y_lo) / (y_hi - y_lo) : 0.5;
    const auto cx = static_cast<long>(std::lround(margin + tx * span));
    // Image y grows downward.
    const auto cy = static_cast<long>(std::lround(margin + (1.0 - ty) * span));
    for (long dy = -2; dy <= 2; ++dy) {
      for (long dx = -2; dx <= 2; ++dx) {
        img.Set(static_cast<std::size_t>(cx + dx), static_cast<std::size_t>(cy + dy), ink);
      }
    }
  }
  return img;
}

}  // namespace lrsb
