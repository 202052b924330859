#pragma once

#include "sivt/common.hpp"
#include "sivt/tensor.hpp"

namespace sivt {

struct TokenGrid {
  int gh = 0, gw = 0;  // grid cells per side
  int patch = 1;       // patch side P
  int token_count() const { return gh * gw; }
};

// Row-major grid order; within a patch the layout is (py, px, channel)
// with channel fastest, matching Tensor3 storage.
// Returns L x (P*P*C), token i = flattened i-th patch.
Mat patchify(const Tensor3& feature, int patch);

// proj: (P*P*C) x D, bias: D, pos: L x D table (pass an empty matrix to
// disable positions). Token i = patch_i * proj + bias + pos.row(i).
Mat patchify_embed(const Tensor3& feature, int patch, const Mat& proj, const Vec& bias,
                   const Mat& pos);

// Inverse spatial arrangement of patchify: row i of `rows` fills grid
// cell i. rows: L x (P*P*C).
Tensor3 unpatchify(const Mat& rows, const TokenGrid& grid, int channels);

// Fixed 2-D sinusoidal table (L x D, row-major grid order). Half the width
// encodes the row coordinate, half the column; D must be divisible by 4.
Mat sinusoidal_pos_2d(int gh, int gw, int dim);

}  // namespace sivt
