#pragma once

#include <memory>
#include <string>
#include <vector>

#include "sivt/checkpoint.hpp"
#include "sivt/config.hpp"
#include "sivt/image_io.hpp"
#include "sivt/tensor.hpp"

namespace sivt {

// Decoded RGB raster -> resized, per-channel normalized image tensor in the
// configured resolution. Values are scaled to [0,1] before (v - mean) / std.
Tensor3 preprocess(const ImageU8& raw, const ModelConfig& cfg);

// One frozen stage: 3x3 convolution, stride 2, zero padding 1, tanh.
struct ConvStage {
  std::string name;
  int in_ch = 0, out_ch = 0;
  std::vector<double> weight;  // [out][in][3][3]
  std::vector<double> bias;    // [out]

  Tensor3 apply(const Tensor3& x) const;
};

// Frozen multi-scale feature extractor: runs a stage chain, taps the
// selected stage outputs, resizes each tap to the target spatial size and
// concatenates along channels.
class FeatureExtractor {
 public:
  virtual ~FeatureExtractor() = default;
  virtual Tensor3 extract(const Tensor3& image) const = 0;
  // Every parameter, serialized; used for frozenness checks and for saving
  // a backbone as a loadable weights file.
  virtual Archive parameter_archive() const = 0;
  virtual int output_channels() const = 0;
  virtual int target_size() const = 0;
};

// Stage-stack extractor shared by both backbone kinds; construction
// validates that the selected stages exist and their channel counts sum to
// expected_channels.
class ConvStackExtractor : public FeatureExtractor {
 public:
  ConvStackExtractor(std::vector<ConvStage> stages, std::vector<std::string> selection,
                     int target_spatial_size, int expected_channels);

  Tensor3 extract(const Tensor3& image) const override;
  Archive parameter_archive() const override;
  int output_channels() const override { return channels_; }
  int target_size() const override { return target_; }

 private:
  std::vector<ConvStage> stages_;
  std::vector<std::string> selection_;
  int target_;
  int channels_;
};

// Seeded random stage stack; parameters are a pure function of
// (seed, spec). One stage per selected layer name, channel counts split
// near-equally to sum to spec.expected_channels.
std::unique_ptr<FeatureExtractor> make_synthetic_backbone(std::uint64_t seed,
                                                          const BackboneConfig& spec);

// Dispatch on spec.kind; the pretrained kind loads a stage stack from
// spec.weights_file (an Archive with "<stage>/weight" and "<stage>/bias"
// tensors, applied in archive order).
std::unique_ptr<FeatureExtractor> make_backbone(const BackboneConfig& spec);

}  // namespace sivt
