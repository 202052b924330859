#include "sivt/config.hpp"

#include <fstream>
#include <set>

#include <json.hpp>

namespace sivt {

using nlohmann::json;

std::string to_string(BackboneKind k) {
  return k == BackboneKind::PretrainedCnn ? "pretrained-cnn" : "synthetic-deterministic";
}
std::string to_string(PosScheme s) {
  return s == PosScheme::FixedSinusoidal ? "fixed-sinusoidal" : "learnable";
}
std::string to_string(Variant v) { return v == Variant::Sivt ? "sivt" : "vanilla"; }

namespace {

BackboneKind backbone_kind_from(const std::string& s) {
  if (s == "pretrained-cnn") return BackboneKind::PretrainedCnn;
  if (s == "synthetic-deterministic") return BackboneKind::SyntheticDeterministic;
  throw ConfigError("unknown backbone kind: " + s);
}
PosScheme pos_scheme_from(const std::string& s) {
  if (s == "fixed-sinusoidal") return PosScheme::FixedSinusoidal;
  if (s == "learnable") return PosScheme::Learnable;
  throw ConfigError("unknown positional scheme: " + s);
}
Variant variant_from(const std::string& s) {
  if (s == "sivt") return Variant::Sivt;
  if (s == "vanilla") return Variant::Vanilla;
  throw ConfigError("unknown model variant: " + s);
}

// Applies known keys from `j` onto defaults; rejects unknown keys so typos
// never silently fall back to defaults.
void check_keys(const json& j, const std::set<std::string>& known, const std::string& scope) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!known.count(it.key()))
      throw ConfigError("unknown config key '" + scope + it.key() + "'");
  }
}

template <typename T>
void get_if(const json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

}  // namespace

void ModelConfig::validate() const {
  if (input_resolution <= 0) throw ConfigError("input_resolution must be positive");
  if (backbone.layer_selection.empty())
    throw ConfigError("backbone.layer_selection must be non-empty");
  if (backbone.target_spatial_size <= 0)
    throw ConfigError("backbone.target_spatial_size must be positive");
  if (backbone.expected_channels <= 0)
    throw ConfigError("backbone.expected_channels must be positive");
  if (patch_size <= 0) throw ConfigError("patch_size must be positive");
  if (backbone.target_spatial_size % patch_size != 0)
    throw ConfigError("patch_size must divide backbone.target_spatial_size");
  const int tokens = token_count();
  if (num_subsets < 1 || num_subsets > tokens)
    throw ConfigError("num_subsets must lie in [1, " + std::to_string(tokens) + "]");
  if (embed_dim <= 0) throw ConfigError("embed_dim must be positive");
  if (heads <= 0 || embed_dim % heads != 0)
    throw ConfigError("heads must divide embed_dim");
  if (pos_scheme == PosScheme::FixedSinusoidal && embed_dim % 4 != 0)
    throw ConfigError("fixed-sinusoidal positions require embed_dim divisible by 4");
  if (encoder_depth < 1 || decoder_depth < 1)
    throw ConfigError("encoder_depth and decoder_depth must be >= 1");
  if (mlp_ratio <= 0.0) throw ConfigError("mlp_ratio must be positive");
  if (ln_eps <= 0.0) throw ConfigError("ln_eps must be positive");
  if (lambda < 0.0) throw ConfigError("lambda must be >= 0");
  if (gaussian_sigma < 0.0) throw ConfigError("gaussian_sigma must be >= 0");
  if (partition.ensemble_k < 1) throw ConfigError("partition.ensemble_k must be >= 1");
  if (optimizer.kind != "adamw") throw ConfigError("unsupported optimizer kind: " + optimizer.kind);
  if (optimizer.lr < 0.0 || optimizer.weight_decay < 0.0)
    throw ConfigError("optimizer lr and weight_decay must be >= 0");
  if (optimizer.beta1 < 0.0 || optimizer.beta1 >= 1.0 || optimizer.beta2 < 0.0 ||
      optimizer.beta2 >= 1.0)
    throw ConfigError("optimizer betas must lie in [0, 1)");
  if (epochs < 0) throw ConfigError("epochs must be >= 0");
  if (batch_size < 1) throw ConfigError("batch_size must be >= 1");
  if (grad_clip < 0.0) throw ConfigError("grad_clip must be >= 0");
  if (checkpoint_every < 0) throw ConfigError("checkpoint_every must be >= 0");
}

ModelConfig ModelConfig::from_json_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  ModelConfig c;
  try {
    check_keys(j, {"backbone", "input_resolution", "normalize_mean", "normalize_std",
                   "patch_size", "num_subsets", "embed_dim", "encoder_depth", "decoder_depth",
                   "heads", "mlp_ratio", "ln_eps", "pos_scheme", "lambda", "gaussian_sigma",
                   "partition", "optimizer", "epochs", "batch_size", "global_seed", "variant",
                   "grad_clip", "checkpoint_every", "skip_unreadable"},
               "");
    if (j.contains("backbone")) {
      const json& b = j.at("backbone");
      check_keys(b, {"kind", "layer_selection", "target_spatial_size", "expected_channels",
                     "seed", "weights_file"},
                 "backbone.");
      if (b.contains("kind")) c.backbone.kind = backbone_kind_from(b.at("kind").get<std::string>());
      get_if(b, "layer_selection", c.backbone.layer_selection);
      get_if(b, "target_spatial_size", c.backbone.target_spatial_size);
      get_if(b, "expected_channels", c.backbone.expected_channels);
      get_if(b, "seed", c.backbone.seed);
      get_if(b, "weights_file", c.backbone.weights_file);
    }
    get_if(j, "input_resolution", c.input_resolution);
    get_if(j, "normalize_mean", c.normalize_mean);
    get_if(j, "normalize_std", c.normalize_std);
    get_if(j, "patch_size", c.patch_size);
    get_if(j, "num_subsets", c.num_subsets);
    get_if(j, "embed_dim", c.embed_dim);
    get_if(j, "encoder_depth", c.encoder_depth);
    get_if(j, "decoder_depth", c.decoder_depth);
    get_if(j, "heads", c.heads);
    get_if(j, "mlp_ratio", c.mlp_ratio);
    get_if(j, "ln_eps", c.ln_eps);
    if (j.contains("pos_scheme")) c.pos_scheme = pos_scheme_from(j.at("pos_scheme").get<std::string>());
    get_if(j, "lambda", c.lambda);
    get_if(j, "gaussian_sigma", c.gaussian_sigma);
    if (j.contains("partition")) {
      const json& p = j.at("partition");
      check_keys(p, {"fresh_each_step", "inference_seed", "ensemble_k"}, "partition.");
      get_if(p, "fresh_each_step", c.partition.fresh_each_step);
      get_if(p, "inference_seed", c.partition.inference_seed);
      get_if(p, "ensemble_k", c.partition.ensemble_k);
    }
    if (j.contains("optimizer")) {
      const json& o = j.at("optimizer");
      check_keys(o, {"kind", "lr", "weight_decay", "beta1", "beta2"}, "optimizer.");
      get_if(o, "kind", c.optimizer.kind);
      get_if(o, "lr", c.optimizer.lr);
      get_if(o, "weight_decay", c.optimizer.weight_decay);
      get_if(o, "beta1", c.optimizer.beta1);
      get_if(o, "beta2", c.optimizer.beta2);
    }
    get_if(j, "epochs", c.epochs);
    get_if(j, "batch_size", c.batch_size);
    get_if(j, "global_seed", c.global_seed);
    if (j.contains("variant")) c.variant = variant_from(j.at("variant").get<std::string>());
    get_if(j, "grad_clip", c.grad_clip);
    get_if(j, "checkpoint_every", c.checkpoint_every);
    get_if(j, "skip_unreadable", c.skip_unreadable);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad config value: ") + e.what());
  }
  c.validate();
  return c;
}

std::string ModelConfig::to_json_text() const {
  json j;
  j["backbone"] = {{"kind", to_string(backbone.kind)},
                   {"layer_selection", backbone.layer_selection},
                   {"target_spatial_size", backbone.target_spatial_size},
                   {"expected_channels", backbone.expected_channels},
                   {"seed", backbone.seed},
                   {"weights_file", backbone.weights_file}};
  j["input_resolution"] = input_resolution;
  j["normalize_mean"] = normalize_mean;
  j["normalize_std"] = normalize_std;
  j["patch_size"] = patch_size;
  j["num_subsets"] = num_subsets;
  j["embed_dim"] = embed_dim;
  j["encoder_depth"] = encoder_depth;
  j["decoder_depth"] = decoder_depth;
  j["heads"] = heads;
  j["mlp_ratio"] = mlp_ratio;
  j["ln_eps"] = ln_eps;
  j["pos_scheme"] = to_string(pos_scheme);
  j["lambda"] = lambda;
  j["gaussian_sigma"] = gaussian_sigma;
  j["partition"] = {{"fresh_each_step", partition.fresh_each_step},
                    {"inference_seed", partition.inference_seed},
                    {"ensemble_k", partition.ensemble_k}};
  j["optimizer"] = {{"kind", optimizer.kind},
                    {"lr", optimizer.lr},
                    {"weight_decay", optimizer.weight_decay},
                    {"beta1", optimizer.beta1},
                    {"beta2", optimizer.beta2}};
  j["epochs"] = epochs;
  j["batch_size"] = batch_size;
  j["global_seed"] = global_seed;
  j["variant"] = to_string(variant);
  j["grad_clip"] = grad_clip;
  j["checkpoint_every"] = checkpoint_every;
  j["skip_unreadable"] = skip_unreadable;
  return j.dump(2);
}

ModelConfig ModelConfig::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file: " + path.string());
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return from_json_text(text);
}

void ModelConfig::save(const std::filesystem::path& path) const {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write config file: " + path.string());
  out << to_json_text() << "\n";
}

}  // namespace sivt
