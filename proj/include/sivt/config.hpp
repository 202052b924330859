#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "sivt/common.hpp"

namespace sivt {

enum class BackboneKind { PretrainedCnn, SyntheticDeterministic };
enum class PosScheme { FixedSinusoidal, Learnable };
enum class Variant { Sivt, Vanilla };

struct BackboneConfig {
  BackboneKind kind = BackboneKind::PretrainedCnn;
  // Stage identifiers tapped for the multi-scale fusion. The default names
  // the four stages whose channel counts sum to 272.
  std::vector<std::string> layer_selection = {"stage1", "stage2", "stage3", "stage4"};
  int target_spatial_size = 32;
  int expected_channels = 272;
  std::uint64_t seed = 0;      // synthetic-deterministic kind only
  std::string weights_file;    // pretrained-cnn kind only
};

struct OptimizerConfig {
  std::string kind = "adamw";
  double lr = 1e-4;
  double weight_decay = 0.05;
  double beta1 = 0.9;
  double beta2 = 0.95;
};

struct PartitionConfig {
  bool fresh_each_step = true;      // training draws a new partition per step
  std::uint64_t inference_seed = 1; // fixed partition seed at inference
  int ensemble_k = 1;               // >1 averages K single-partition maps
};

struct ModelConfig {
  BackboneConfig backbone;
  int input_resolution = 256;
  std::array<double, 3> normalize_mean = {0.485, 0.456, 0.406};
  std::array<double, 3> normalize_std = {0.229, 0.224, 0.225};

  int patch_size = 2;    // feature patch side P
  int num_subsets = 4;   // N disjoint induction subsets
  int embed_dim = 240;   // token width D
  int encoder_depth = 12;
  int decoder_depth = 8;
  int heads = 8;
  double mlp_ratio = 4.0;
  double ln_eps = 1e-6;
  PosScheme pos_scheme = PosScheme::FixedSinusoidal;

  double lambda = 1.0;          // cosine-term weight in the loss
  double gaussian_sigma = 4.0;  // anomaly map smoothing, image pixels

  PartitionConfig partition;
  OptimizerConfig optimizer;
  int epochs = 400;
  int batch_size = 8;
  std::uint64_t global_seed = 0;
  Variant variant = Variant::Sivt;
  double grad_clip = 0.0;     // 0 disables clipping; non-finite loss aborts
  int checkpoint_every = 0;   // epochs between snapshots; 0 = final only
  bool skip_unreadable = false;

  int grid_side() const { return backbone.target_spatial_size / patch_size; }
  int token_count() const { return grid_side() * grid_side(); }

  // Throws ConfigError on any inconsistent field combination.
  void validate() const;

  // JSON round-trip. Parsing fills missing keys with defaults and rejects
  // unknown keys.
  static ModelConfig from_json_text(const std::string& text);
  std::string to_json_text() const;
  static ModelConfig load(const std::filesystem::path& path);
  void save(const std::filesystem::path& path) const;
};

std::string to_string(BackboneKind k);
std::string to_string(PosScheme s);
std::string to_string(Variant v);

}  // namespace sivt
