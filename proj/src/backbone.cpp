#include "sivt/backbone.hpp"

#include <algorithm>
#include <cmath>

#include "sivt/rng.hpp"

namespace sivt {

Tensor3 preprocess(const ImageU8& raw, const ModelConfig& cfg) {
  if (raw.c != 3) throw DecodeError("preprocess expects an RGB raster");
  if (raw.h < 1 || raw.w < 1) throw DecodeError("preprocess expects a non-empty raster");
  Tensor3 img(raw.h, raw.w, 3);
  for (std::size_t i = 0; i < raw.data.size(); ++i) {
    img.data[i] = raw.data[i] / 255.0;
  }
  const int res = cfg.input_resolution;
  img = bilinear_resize(img, res, res);
  for (int y = 0; y < res; ++y) {
    for (int x = 0; x < res; ++x) {
      for (int ch = 0; ch < 3; ++ch) {
        img.at(y, x, ch) = (img.at(y, x, ch) - cfg.normalize_mean[ch]) / cfg.normalize_std[ch];
      }
    }
  }
  return img;
}

Tensor3 ConvStage::apply(const Tensor3& x) const {
  if (x.c != in_ch)
    throw ShapeError("stage '" + name + "' expects " + std::to_string(in_ch) + " channels, got " +
                     std::to_string(x.c));
  const int oh = (x.h + 1) / 2;
  const int ow = (x.w + 1) / 2;
  Tensor3 out(oh, ow, out_ch);
  const int kk = 3;
  for (int oy = 0; oy < oh; ++oy) {
    for (int ox = 0; ox < ow; ++ox) {
      const int y0 = 2 * oy - 1;
      const int x0 = 2 * ox - 1;
      for (int oc = 0; oc < out_ch; ++oc) {
        double acc = bias[oc];
        const double* wW = &weight[static_cast<std::size_t>(oc) * in_ch * kk * kk];
        for (int ic = 0; ic < in_ch; ++ic) {
          for (int ky = 0; ky < kk; ++ky) {
            const int yy = y0 + ky;
            if (yy < 0 || yy >= x.h) continue;
            for (int kx = 0; kx < kk; ++kx) {
              const int xx = x0 + kx;
              if (xx < 0 || xx >= x.w) continue;
              acc += wW[(ic * kk + ky) * kk + kx] * x.at(yy, xx, ic);
            }
          }
        }
        out.at(oy, ox, oc) = std::tanh(acc);
      }
    }
  }
  return out;
}

ConvStackExtractor::ConvStackExtractor(std::vector<ConvStage> stages,
                                       std::vector<std::string> selection, int target_spatial_size,
                                       int expected_channels)
    : stages_(std::move(stages)), selection_(std::move(selection)), target_(target_spatial_size) {
  if (selection_.empty()) throw ConfigError("backbone layer selection is empty");
  if (target_ <= 0) throw ConfigError("backbone target spatial size must be positive");
  int sum = 0;
  for (const std::string& name : selection_) {
    auto it = std::find_if(stages_.begin(), stages_.end(),
                           [&](const ConvStage& s) { return s.name == name; });
    if (it == stages_.end())
      throw ConfigError("selected backbone stage '" + name + "' does not exist");
    sum += it->out_ch;
  }
  if (sum != expected_channels)
    throw ConfigError("backbone stage channels sum to " + std::to_string(sum) + ", expected " +
                      std::to_string(expected_channels));
  channels_ = sum;
}

Tensor3 ConvStackExtractor::extract(const Tensor3& image) const {
  // Run the chain once, keep the taps we need.
  std::vector<const ConvStage*> order;
  std::vector<Tensor3> taps(selection_.size());
  Tensor3 cur = image;
  std::vector<bool> filled(selection_.size(), false);
  for (const ConvStage& stage : stages_) {
    cur = stage.apply(cur);
    for (std::size_t i = 0; i < selection_.size(); ++i) {
      if (selection_[i] == stage.name) {
        taps[i] = bilinear_resize(cur, target_, target_);
        filled[i] = true;
      }
    }
  }
  for (bool f : filled) {
    if (!f) throw ConfigError("backbone stage selection not satisfied");
  }
  Tensor3 fused(target_, target_, channels_);
  int ch_off = 0;
  for (const Tensor3& tap : taps) {
    for (int y = 0; y < target_; ++y) {
      for (int x = 0; x < target_; ++x) {
        for (int ch = 0; ch < tap.c; ++ch) {
          fused.at(y, x, ch_off + ch) = tap.at(y, x, ch);
        }
      }
    }
    ch_off += tap.c;
  }
  return fused;
}

Archive ConvStackExtractor::parameter_archive() const {
  Archive a;
  for (const ConvStage& s : stages_) {
    a.add(s.name + "/weight",
          {static_cast<std::size_t>(s.out_ch), static_cast<std::size_t>(s.in_ch), 3, 3}, s.weight);
    a.add(s.name + "/bias", {static_cast<std::size_t>(s.out_ch)}, s.bias);
  }
  return a;
}

std::unique_ptr<FeatureExtractor> make_synthetic_backbone(std::uint64_t seed,
                                                          const BackboneConfig& spec) {
  const int n = static_cast<int>(spec.layer_selection.size());
  if (n < 1) throw ConfigError("backbone layer selection is empty");
  const int base = spec.expected_channels / n;
  const int rem = spec.expected_channels % n;
  std::vector<ConvStage> stages;
  int in_ch = 3;
  for (int i = 0; i < n; ++i) {
    ConvStage s;
    s.name = spec.layer_selection[i];
    s.in_ch = in_ch;
    s.out_ch = base + (i < rem ? 1 : 0);
    if (s.out_ch < 1) throw ConfigError("backbone stage would have zero channels");
    Rng rng(mix_seed({seed, 0x5ba5eULL, static_cast<std::uint64_t>(i)}));
    const double fan_in = s.in_ch * 9.0;
    const double fan_out = s.out_ch * 9.0;
    const double a = std::sqrt(6.0 / (fan_in + fan_out));
    s.weight.resize(static_cast<std::size_t>(s.out_ch) * s.in_ch * 9);
    for (double& w : s.weight) w = (2.0 * rng.uniform() - 1.0) * a;
    s.bias.resize(s.out_ch);
    for (double& b : s.bias) b = (2.0 * rng.uniform() - 1.0) * 0.1;
    in_ch = s.out_ch;
    stages.push_back(std::move(s));
  }
  return std::make_unique<ConvStackExtractor>(std::move(stages), spec.layer_selection,
                                              spec.target_spatial_size, spec.expected_channels);
}

namespace {

std::unique_ptr<FeatureExtractor> load_pretrained_backbone(const BackboneConfig& spec) {
  if (spec.weights_file.empty())
    throw IoError("pretrained backbone requires backbone.weights_file");
  if (!std::filesystem::exists(spec.weights_file))
    throw IoError("backbone weights file not found: " + spec.weights_file);
  const Archive a = Archive::load(spec.weights_file);
  std::vector<ConvStage> stages;
  for (const NamedTensor& t : a.tensors) {
    const std::string suffix = "/weight";
    if (t.name.size() <= suffix.size() ||
        t.name.compare(t.name.size() - suffix.size(), suffix.size(), suffix) != 0)
      continue;
    if (t.shape.size() != 4 || t.shape[2] != 3 || t.shape[3] != 3)
      throw ShapeError("backbone weight tensor '" + t.name + "' must be [out, in, 3, 3]");
    ConvStage s;
    s.name = t.name.substr(0, t.name.size() - suffix.size());
    s.out_ch = static_cast<int>(t.shape[0]);
    s.in_ch = static_cast<int>(t.shape[1]);
    s.weight = t.data;
    s.bias = a.require(s.name + "/bias", {t.shape[0]}).data;
    stages.push_back(std::move(s));
  }
  if (stages.empty()) throw IoError("backbone weights file holds no stages: " + spec.weights_file);
  return std::make_unique<ConvStackExtractor>(std::move(stages), spec.layer_selection,
                                              spec.target_spatial_size, spec.expected_channels);
}

}  // namespace

std::unique_ptr<FeatureExtractor> make_backbone(const BackboneConfig& spec) {
  switch (spec.kind) {
    case BackboneKind::SyntheticDeterministic:
      return make_synthetic_backbone(spec.seed, spec);
    case BackboneKind::PretrainedCnn:
      return load_pretrained_backbone(spec);
  }
  throw ConfigError("unknown backbone kind");
}

}  // namespace sivt
