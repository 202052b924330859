#include "sivt/tokenizer.hpp"

#include <cmath>

namespace sivt {

Mat patchify(const Tensor3& feature, int patch) {
  if (patch <= 0 || feature.h % patch != 0 || feature.w % patch != 0)
    throw ShapeError("patch size " + std::to_string(patch) + " does not divide feature map " +
                     std::to_string(feature.h) + "x" + std::to_string(feature.w));
  const int gh = feature.h / patch;
  const int gw = feature.w / patch;
  const int cols = patch * patch * feature.c;
  Mat out(gh * gw, cols);
  for (int gy = 0; gy < gh; ++gy) {
    for (int gx = 0; gx < gw; ++gx) {
      double* row = out.row(gy * gw + gx).data();
      int k = 0;
      for (int py = 0; py < patch; ++py) {
        for (int px = 0; px < patch; ++px) {
          for (int ch = 0; ch < feature.c; ++ch) {
            row[k++] = feature.at(gy * patch + py, gx * patch + px, ch);
          }
        }
      }
    }
  }
  return out;
}

Mat patchify_embed(const Tensor3& feature, int patch, const Mat& proj, const Vec& bias,
                   const Mat& pos) {
  const Mat patches = patchify(feature, patch);
  if (patches.cols() != proj.rows())
    throw ShapeError("patch projection expects " + std::to_string(patches.cols()) +
                     " inputs, got " + std::to_string(proj.rows()));
  Mat tokens = patches * proj;
  tokens.rowwise() += bias.transpose();
  if (pos.size() != 0) {
    if (pos.rows() != tokens.rows() || pos.cols() != tokens.cols())
      throw ShapeError("positional table shape does not match token sequence");
    tokens += pos;
  }
  return tokens;
}

Tensor3 unpatchify(const Mat& rows, const TokenGrid& grid, int channels) {
  if (rows.rows() != grid.token_count())
    throw ShapeError("token count " + std::to_string(rows.rows()) + " does not match grid " +
                     std::to_string(grid.gh) + "x" + std::to_string(grid.gw));
  const int patch = grid.patch;
  if (rows.cols() != static_cast<Eigen::Index>(patch) * patch * channels)
    throw ShapeError("token width does not match patch * patch * channels");
  Tensor3 out(grid.gh * patch, grid.gw * patch, channels);
  for (int gy = 0; gy < grid.gh; ++gy) {
    for (int gx = 0; gx < grid.gw; ++gx) {
      const double* row = rows.row(gy * grid.gw + gx).data();
      int k = 0;
      for (int py = 0; py < patch; ++py) {
        for (int px = 0; px < patch; ++px) {
          for (int ch = 0; ch < channels; ++ch) {
            out.at(gy * patch + py, gx * patch + px, ch) = row[k++];
          }
        }
      }
    }
  }
  return out;
}

Mat sinusoidal_pos_2d(int gh, int gw, int dim) {
  if (dim % 4 != 0) throw ShapeError("sinusoidal positions require dim divisible by 4");
  const int half = dim / 2;     // per-axis width
  const int quarter = dim / 4;  // sin/cos pairs per axis
  Mat pos(gh * gw, dim);
  for (int gy = 0; gy < gh; ++gy) {
    for (int gx = 0; gx < gw; ++gx) {
      const int row = gy * gw + gx;
      for (int i = 0; i < quarter; ++i) {
        const double omega = std::pow(10000.0, -static_cast<double>(i) / quarter);
        pos(row, i) = std::sin(gy * omega);
        pos(row, quarter + i) = std::cos(gy * omega);
        pos(row, half + i) = std::sin(gx * omega);
        pos(row, half + quarter + i) = std::cos(gx * omega);
      }
    }
  }
  return pos;
}

}  // namespace sivt
