#include "sivt/tensor.hpp"

#include <algorithm>
#include <cmath>

namespace sivt {

bool Tensor3::all_finite() const {
  for (double v : data) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

namespace {

struct LerpCoord {
  int lo, hi;
  double t;  // weight of hi
};

LerpCoord lerp_coord(int out_i, int out_n, int in_n) {
  const double scale = static_cast<double>(in_n) / out_n;
  double src = (out_i + 0.5) * scale - 0.5;
  src = std::clamp(src, 0.0, static_cast<double>(in_n - 1));
  const int lo = static_cast<int>(std::floor(src));
  const int hi = std::min(lo + 1, in_n - 1);
  return {lo, hi, src - lo};
}

// Symmetric reflection including the edge sample: ... 2 1 0 | 0 1 2 ...
int reflect_index(int i, int n) {
  if (n == 1) return 0;
  const int period = 2 * n;
  int m = ((i % period) + period) % period;
  return m < n ? m : period - 1 - m;
}

}  // namespace

Tensor3 bilinear_resize(const Tensor3& in, int out_h, int out_w) {
  if (in.h <= 0 || in.w <= 0) throw ShapeError("bilinear_resize: empty input");
  if (out_h <= 0 || out_w <= 0) throw ShapeError("bilinear_resize: empty output");
  if (in.h == out_h && in.w == out_w) return in;
  Tensor3 out(out_h, out_w, in.c);
  for (int y = 0; y < out_h; ++y) {
    const LerpCoord yy = lerp_coord(y, out_h, in.h);
    for (int x = 0; x < out_w; ++x) {
      const LerpCoord xx = lerp_coord(x, out_w, in.w);
      for (int ch = 0; ch < in.c; ++ch) {
        const double top = (1.0 - xx.t) * in.at(yy.lo, xx.lo, ch) + xx.t * in.at(yy.lo, xx.hi, ch);
        const double bot = (1.0 - xx.t) * in.at(yy.hi, xx.lo, ch) + xx.t * in.at(yy.hi, xx.hi, ch);
        out.at(y, x, ch) = (1.0 - yy.t) * top + yy.t * bot;
      }
    }
  }
  return out;
}

Mat bilinear_resize(const Mat& in, int out_h, int out_w) {
  if (in.rows() <= 0 || in.cols() <= 0) throw ShapeError("bilinear_resize: empty input");
  if (out_h <= 0 || out_w <= 0) throw ShapeError("bilinear_resize: empty output");
  if (in.rows() == out_h && in.cols() == out_w) return in;
  Mat out(out_h, out_w);
  for (int y = 0; y < out_h; ++y) {
    const LerpCoord yy = lerp_coord(y, out_h, static_cast<int>(in.rows()));
    for (int x = 0; x < out_w; ++x) {
      const LerpCoord xx = lerp_coord(x, out_w, static_cast<int>(in.cols()));
      const double top = (1.0 - xx.t) * in(yy.lo, xx.lo) + xx.t * in(yy.lo, xx.hi);
      const double bot = (1.0 - xx.t) * in(yy.hi, xx.lo) + xx.t * in(yy.hi, xx.hi);
      out(y, x) = (1.0 - yy.t) * top + yy.t * bot;
    }
  }
  return out;
}

Vec gaussian_kernel(double sigma) {
  if (sigma <= 0.0) {
    Vec k(1);
    k[0] = 1.0;
    return k;
  }
  const int r = static_cast<int>(std::ceil(3.0 * sigma));
  Vec k(2 * r + 1);
  double sum = 0.0;
  for (int i = -r; i <= r; ++i) {
    const double v = std::exp(-0.5 * (i * i) / (sigma * sigma));
    k[i + r] = v;
    sum += v;
  }
  k /= sum;
  return k;
}

Mat gaussian_blur(const Mat& in, double sigma) {
  if (sigma <= 0.0) return in;
  const Vec k = gaussian_kernel(sigma);
  const int r = (static_cast<int>(k.size()) - 1) / 2;
  const int h = static_cast<int>(in.rows());
  const int w = static_cast<int>(in.cols());

  Mat tmp(h, w);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      double acc = 0.0;
      for (int d = -r; d <= r; ++d) {
        acc += k[d + r] * in(y, reflect_index(x + d, w));
      }
      tmp(y, x) = acc;
    }
  }
  Mat out(h, w);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      double acc = 0.0;
      for (int d = -r; d <= r; ++d) {
        acc += k[d + r] * tmp(reflect_index(y + d, h), x);
      }
      out(y, x) = acc;
    }
  }
  return out;
}

}  // namespace sivt
