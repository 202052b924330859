#pragma once

#include <vector>

#include "sivt/common.hpp"

namespace sivt {

// Dense H x W x C tensor, row-major with channel fastest:
// index(y, x, ch) = (y * w + x) * c + ch.
struct Tensor3 {
  int h = 0, w = 0, c = 0;
  std::vector<double> data;

  Tensor3() = default;
  Tensor3(int h_, int w_, int c_, double fill = 0.0)
      : h(h_), w(w_), c(c_), data(static_cast<std::size_t>(h_) * w_ * c_, fill) {}

  double& at(int y, int x, int ch) {
    return data[(static_cast<std::size_t>(y) * w + x) * c + ch];
  }
  double at(int y, int x, int ch) const {
    return data[(static_cast<std::size_t>(y) * w + x) * c + ch];
  }
  std::size_t size() const { return data.size(); }
  bool all_finite() const;
  bool same_shape(const Tensor3& o) const {
    return h == o.h && w == o.w && c == o.c;
  }
};

// Bilinear resize with half-pixel centers (source sample at
// (i + 0.5) * in/out - 0.5, clamped). Constants map to constants.
Tensor3 bilinear_resize(const Tensor3& in, int out_h, int out_w);
Mat bilinear_resize(const Mat& in, int out_h, int out_w);

// Normalized 1-D Gaussian kernel sampled at integers in [-r, r],
// r = ceil(3 * sigma).
Vec gaussian_kernel(double sigma);

// Separable Gaussian blur with symmetric (edge-including) border
// reflection. sigma <= 0 returns the input unchanged.
Mat gaussian_blur(const Mat& in, double sigma);

}  // namespace sivt
