#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "lrsb/matrix.hpp"

namespace lrsb {

using Rgb = std::array<std::uint8_t, 3>;

/// 8-bit RGB raster, written as binary PPM (P6).
struct Image {
  std::size_t width = 0;
  std::size_t height = 0;
  std::vector<std::uint8_t> pixels;  // row-major RGB triples

  Image() = default;
  Image(std::size_t w, std::size_t h, Rgb fill);

  Rgb At(std::size_t x, std::size_t y) const;
  void Set(std::size_t x, std::size_t y, Rgb c);

  std::string EncodePpm() const;
  void WritePpm(const std::string& path) const;
};

/// Five-stop sequential colormap (dark purple -> blue -> teal -> green ->
/// yellow), linear interpolation between stops, t clamped to [0, 1].
Rgb Colormap(double t);

/// Heatmap with one `cell` x `cell` square per entry. Values are scaled
/// linearly from [min, max] to [0, 1]; a constant matrix maps to t = 0.
Image RenderHeatmap(const DenseMatrix& m, std::size_t cell = 4);

/// Scatter of the first two columns of `points` on a white square canvas.
Image RenderScatter(const DenseMatrix& points, std::size_t size = 256);

}  // namespace lrsb
