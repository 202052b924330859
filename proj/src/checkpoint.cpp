#include "sivt/checkpoint.hpp"

#include <cstring>
#include <fstream>

namespace sivt {

namespace {

constexpr char kMagic[8] = {'S', 'I', 'V', 'T', 'A', 'R', 'C', 'H'};

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}
void put_u64(std::vector<std::uint8_t>& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}
void put_f64(std::vector<std::uint8_t>& out, double d) {
  std::uint64_t v;
  std::memcpy(&v, &d, 8);
  put_u64(out, v);
}

struct Reader {
  const std::vector<std::uint8_t>& buf;
  std::size_t pos = 0;

  void need(std::size_t n) const {
    if (pos + n > buf.size()) throw IoError("archive truncated");
  }
  std::uint32_t u32() {
    need(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(buf[pos + i]) << (8 * i);
    pos += 4;
    return v;
  }
  std::uint64_t u64() {
    need(8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(buf[pos + i]) << (8 * i);
    pos += 8;
    return v;
  }
  double f64() {
    const std::uint64_t v = u64();
    double d;
    std::memcpy(&d, &v, 8);
    return d;
  }
  std::string str(std::size_t n) {
    need(n);
    std::string s(reinterpret_cast<const char*>(buf.data() + pos), n);
    pos += n;
    return s;
  }
};

std::string shape_str(const std::vector<std::size_t>& shape) {
  std::string s = "[";
  for (std::size_t i = 0; i < shape.size(); ++i) {
    if (i) s += "x";
    s += std::to_string(shape[i]);
  }
  return s + "]";
}

}  // namespace

void Archive::add(std::string name, std::vector<std::size_t> shape, std::vector<double> data) {
  NamedTensor t{std::move(name), std::move(shape), std::move(data)};
  if (t.count() != t.data.size())
    throw ShapeError("archive tensor '" + t.name + "': shape " + shape_str(t.shape) +
                     " does not match " + std::to_string(t.data.size()) + " values");
  tensors.push_back(std::move(t));
}

void Archive::add_scalar(std::string name, double value) {
  add(std::move(name), {1}, {value});
}

const NamedTensor* Archive::find(const std::string& name) const {
  for (const NamedTensor& t : tensors) {
    if (t.name == name) return &t;
  }
  return nullptr;
}

const NamedTensor& Archive::require(const std::string& name,
                                    const std::vector<std::size_t>& shape) const {
  const NamedTensor* t = find(name);
  if (!t) throw IoError("archive is missing tensor '" + name + "'");
  if (t->shape != shape)
    throw ShapeError("archive tensor '" + name + "' has shape " + shape_str(t->shape) +
                     ", expected " + shape_str(shape));
  return *t;
}

double Archive::require_scalar(const std::string& name) const {
  return require(name, {1}).data[0];
}

std::vector<std::uint8_t> Archive::serialize() const {
  std::vector<std::uint8_t> out;
  out.insert(out.end(), kMagic, kMagic + 8);
  put_u32(out, version);
  put_u64(out, config_json.size());
  out.insert(out.end(), config_json.begin(), config_json.end());
  put_u64(out, tensors.size());
  for (const NamedTensor& t : tensors) {
    put_u32(out, static_cast<std::uint32_t>(t.name.size()));
    out.insert(out.end(), t.name.begin(), t.name.end());
    out.push_back(0);  // dtype: f64
    put_u32(out, static_cast<std::uint32_t>(t.shape.size()));
    for (std::size_t d : t.shape) put_u64(out, d);
    for (double v : t.data) put_f64(out, v);
  }
  return out;
}

Archive Archive::deserialize(const std::vector<std::uint8_t>& bytes) {
  Reader r{bytes};
  r.need(8);
  if (std::memcmp(bytes.data(), kMagic, 8) != 0) throw IoError("not a tensor archive");
  r.pos = 8;
  Archive a;
  a.version = r.u32();
  if (a.version != kFormatVersion)
    throw IoError("unsupported archive format version " + std::to_string(a.version) +
                  " (expected " + std::to_string(kFormatVersion) + ")");
  const std::size_t cfg_len = r.u64();
  a.config_json = r.str(cfg_len);
  const std::size_t n = r.u64();
  for (std::size_t i = 0; i < n; ++i) {
    NamedTensor t;
    const std::size_t name_len = r.u32();
    t.name = r.str(name_len);
    r.need(1);
    const std::uint8_t dtype = bytes[r.pos++];
    if (dtype != 0) throw IoError("unsupported tensor dtype in archive");
    const std::size_t rank = r.u32();
    t.shape.resize(rank);
    for (std::size_t d = 0; d < rank; ++d) t.shape[d] = r.u64();
    t.data.resize(t.count());
    for (double& v : t.data) v = r.f64();
    a.tensors.push_back(std::move(t));
  }
  return a;
}

void Archive::save(const std::filesystem::path& path) const {
  const std::vector<std::uint8_t> bytes = serialize();
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write archive: " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("short write: " + path.string());
}

Archive Archive::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open archive: " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  return deserialize(bytes);
}

}  // namespace sivt
