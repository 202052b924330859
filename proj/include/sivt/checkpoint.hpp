#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "sivt/common.hpp"

namespace sivt {

struct NamedTensor {
  std::string name;
  std::vector<std::size_t> shape;
  std::vector<double> data;

  std::size_t count() const {
    std::size_t n = 1;
    for (std::size_t d : shape) n *= d;
    return n;
  }
};

// Self-describing binary container: format version, an embedded textual
// config, and named f64 tensors (name -> shape -> row-major values).
// Encoding is explicit little-endian, independent of host order.
struct Archive {
  static constexpr std::uint32_t kFormatVersion = 1;

  std::uint32_t version = kFormatVersion;
  std::string config_json;
  std::vector<NamedTensor> tensors;

  void add(std::string name, std::vector<std::size_t> shape, std::vector<double> data);
  void add_scalar(std::string name, double value);

  const NamedTensor* find(const std::string& name) const;
  // Lookup that throws IoError if missing and ShapeError on shape mismatch.
  const NamedTensor& require(const std::string& name,
                             const std::vector<std::size_t>& shape) const;
  double require_scalar(const std::string& name) const;

  std::vector<std::uint8_t> serialize() const;
  static Archive deserialize(const std::vector<std::uint8_t>& bytes);

  void save(const std::filesystem::path& path) const;
  static Archive load(const std::filesystem::path& path);
};

}  // namespace sivt
