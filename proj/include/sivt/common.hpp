#pragma once

#include <Eigen/Core>
#include <stdexcept>
#include <string>

namespace sivt {

// Row-major throughout: token sequences are L x D with one token per row,
// spatial maps are H x W. Row-major keeps serialization and patch
// extraction order trivial.
using Mat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vec = Eigen::VectorXd;
using MatMap = Eigen::Map<Mat>;
using ConstMatMap = Eigen::Map<const Mat>;

// All errors carry a short machine-parseable kind ("config", "shape", ...)
// used verbatim by the CLI error line.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& msg)
      : std::runtime_error(msg), kind_(std::move(kind)) {}
  const std::string& kind() const { return kind_; }

 private:
  std::string kind_;
};

struct ConfigError : Error {
  explicit ConfigError(const std::string& m) : Error("config", m) {}
};
struct ShapeError : Error {
  explicit ShapeError(const std::string& m) : Error("shape", m) {}
};
struct ParamError : Error {
  explicit ParamError(const std::string& m) : Error("param", m) {}
};
struct IoError : Error {
  explicit IoError(const std::string& m) : Error("io", m) {}
};
struct DecodeError : Error {
  explicit DecodeError(const std::string& m) : Error("decode", m) {}
};
struct NumericError : Error {
  explicit NumericError(const std::string& m) : Error("numeric", m) {}
};
struct MetricError : Error {
  explicit MetricError(const std::string& m) : Error("metric", m) {}
};
struct IndexError : Error {
  explicit IndexError(const std::string& m) : Error("index", m) {}
};
struct InvariantError : Error {
  explicit InvariantError(const std::string& m) : Error("invariant", m) {}
};

}  // namespace sivt
