#include "pcve/tensor_io.hpp"

#include <cstring>
#include <fstream>

#include "pcve/errors.hpp"
#include "pcve/util.hpp"

namespace pcve {

namespace {

constexpr char kTensorMagic[8] = {'P', 'C', 'V', 'E', 'T', 'C', 'F', '1'};
constexpr char kFeatureMagic[8] = {'P', 'C', 'V', 'E', 'F', 'E', 'A', '1'};
constexpr std::uint32_t kTensorVersion = 1;

const char* dtype_name(torch::ScalarType t) {
  switch (t) {
    case torch::kFloat32: return "f32";
    case torch::kFloat64: return "f64";
    case torch::kInt64: return "i64";
    case torch::kInt32: return "i32";
    case torch::kUInt8: return "u8";
    case torch::kBool: return "bool";
    default: break;
  }
  raise(ErrorCode::kWeightLoad, std::string("unsupported tensor dtype ") + torch::toString(t));
}

torch::ScalarType dtype_from_name(const std::string& name) {
  if (name == "f32") return torch::kFloat32;
  if (name == "f64") return torch::kFloat64;
  if (name == "i64") return torch::kInt64;
  if (name == "i32") return torch::kInt32;
  if (name == "u8") return torch::kUInt8;
  if (name == "bool") return torch::kBool;
  raise(ErrorCode::kWeightLoad, "unsupported tensor dtype '" + name + "'");
}

template <typename T>
void append_raw(std::vector<std::uint8_t>& out, const T& value) {
  const auto* p = reinterpret_cast<const std::uint8_t*>(&value);
  out.insert(out.end(), p, p + sizeof(T));
}

class ByteReader {
 public:
  ByteReader(const std::uint8_t* data, std::size_t size, std::string origin)
      : data_(data), size_(size), origin_(std::move(origin)) {}

  template <typename T>
  T take() {
    T value;
    take_into(&value, sizeof(T));
    return value;
  }

  void take_into(void* dst, std::size_t n) {
    if (pos_ + n > size_) raise(ErrorCode::kIoError, "truncated file " + origin_);
    std::memcpy(dst, data_ + pos_, n);
    pos_ += n;
  }

  const std::uint8_t* cursor() const { return data_ + pos_; }
  void skip(std::size_t n) {
    if (pos_ + n > size_) raise(ErrorCode::kIoError, "truncated file " + origin_);
    pos_ += n;
  }
  std::size_t remaining() const { return size_ - pos_; }

 private:
  const std::uint8_t* data_;
  std::size_t size_;
  std::size_t pos_ = 0;
  std::string origin_;
};

}  // namespace

bool TensorFile::contains(const std::string& name) const {
  for (const auto& [n, t] : tensors)
    if (n == name) return true;
  return false;
}

torch::Tensor TensorFile::at(const std::string& name) const {
  for (const auto& [n, t] : tensors)
    if (n == name) return t;
  raise(ErrorCode::kWeightLoad, "tensor '" + name + "' not present in container");
}

void save_tensor_file(const std::filesystem::path& path,
                      const std::vector<std::pair<std::string, torch::Tensor>>& tensors,
                      const nlohmann::json& meta) {
  nlohmann::json index;
  index["meta"] = meta;
  index["tensors"] = nlohmann::json::array();

  std::vector<torch::Tensor> contiguous;
  contiguous.reserve(tensors.size());
  std::uint64_t offset = 0;
  for (const auto& [name, tensor] : tensors) {
    torch::Tensor t = tensor.detach().cpu().contiguous();
    contiguous.push_back(t);
    std::uint64_t nbytes = t.numel() * t.element_size();
    nlohmann::json entry;
    entry["name"] = name;
    entry["dtype"] = dtype_name(t.scalar_type());
    entry["shape"] = std::vector<std::int64_t>(t.sizes().begin(), t.sizes().end());
    entry["offset"] = offset;
    entry["nbytes"] = nbytes;
    index["tensors"].push_back(entry);
    offset += nbytes;
  }

  std::string index_text = index.dump();
  std::vector<std::uint8_t> out;
  out.reserve(sizeof(kTensorMagic) + 12 + index_text.size() + offset);
  out.insert(out.end(), kTensorMagic, kTensorMagic + sizeof(kTensorMagic));
  append_raw(out, kTensorVersion);
  append_raw(out, static_cast<std::uint64_t>(index_text.size()));
  out.insert(out.end(), index_text.begin(), index_text.end());
  for (const auto& t : contiguous) {
    const auto* p = static_cast<const std::uint8_t*>(t.const_data_ptr());
    out.insert(out.end(), p, p + t.numel() * t.element_size());
  }
  write_binary_file(path, out.data(), out.size());
}

TensorFile load_tensor_file(const std::filesystem::path& path) {
  auto bytes = read_binary_file(path);
  ByteReader r(bytes.data(), bytes.size(), path.string());
  char magic[8];
  r.take_into(magic, sizeof(magic));
  if (std::memcmp(magic, kTensorMagic, sizeof(magic)) != 0)
    raise(ErrorCode::kWeightLoad, "bad magic in " + path.string());
  auto version = r.take<std::uint32_t>();
  if (version != kTensorVersion)
    raise(ErrorCode::kWeightLoad, "unsupported container version in " + path.string());
  auto index_len = r.take<std::uint64_t>();
  std::string index_text(index_len, '\0');
  r.take_into(index_text.data(), index_len);

  nlohmann::json index = nlohmann::json::parse(index_text, nullptr, false);
  if (index.is_discarded())
    raise(ErrorCode::kWeightLoad, "corrupt index in " + path.string());

  TensorFile file;
  file.meta = index.value("meta", nlohmann::json::object());
  const std::uint8_t* blob = r.cursor();
  std::size_t blob_size = r.remaining();
  for (const auto& entry : index["tensors"]) {
    std::string name = entry.at("name").get<std::string>();
    torch::ScalarType dtype = dtype_from_name(entry.at("dtype").get<std::string>());
    std::vector<std::int64_t> shape = entry.at("shape").get<std::vector<std::int64_t>>();
    auto offset = entry.at("offset").get<std::uint64_t>();
    auto nbytes = entry.at("nbytes").get<std::uint64_t>();
    if (offset + nbytes > blob_size)
      raise(ErrorCode::kWeightLoad, "tensor '" + name + "' overruns blob in " + path.string());
    torch::Tensor t = torch::empty(shape, torch::TensorOptions().dtype(dtype));
    if (static_cast<std::uint64_t>(t.numel() * t.element_size()) != nbytes)
      raise(ErrorCode::kWeightLoad, "tensor '" + name + "' size mismatch in " + path.string());
    std::memcpy(t.data_ptr(), blob + offset, nbytes);
    file.tensors.emplace_back(std::move(name), std::move(t));
  }
  return file;
}

void save_feature_file(const std::filesystem::path& path,
                       const std::map<int, torch::Tensor>& features) {
  std::vector<std::uint8_t> out;
  out.insert(out.end(), kFeatureMagic, kFeatureMagic + sizeof(kFeatureMagic));
  append_raw(out, static_cast<std::uint32_t>(features.size()));
  for (const auto& [layer, tensor] : features) {
    torch::Tensor t = tensor.detach().cpu().to(torch::kFloat32).contiguous();
    append_raw(out, static_cast<std::uint32_t>(layer));
    append_raw(out, static_cast<std::uint32_t>(t.dim()));
    for (std::int64_t d : t.sizes()) append_raw(out, static_cast<std::uint64_t>(d));
    const auto* p = static_cast<const std::uint8_t*>(t.const_data_ptr());
    out.insert(out.end(), p, p + t.numel() * sizeof(float));
  }
  write_binary_file(path, out.data(), out.size());
}

std::map<int, torch::Tensor> load_feature_file(const std::filesystem::path& path) {
  auto bytes = read_binary_file(path);
  ByteReader r(bytes.data(), bytes.size(), path.string());
  char magic[8];
  r.take_into(magic, sizeof(magic));
  if (std::memcmp(magic, kFeatureMagic, sizeof(magic)) != 0)
    raise(ErrorCode::kIoError, "bad magic in " + path.string());
  auto count = r.take<std::uint32_t>();
  std::map<int, torch::Tensor> out;
  for (std::uint32_t i = 0; i < count; ++i) {
    auto layer = r.take<std::uint32_t>();
    auto ndim = r.take<std::uint32_t>();
    std::vector<std::int64_t> shape(ndim);
    std::int64_t numel = 1;
    for (auto& d : shape) {
      d = static_cast<std::int64_t>(r.take<std::uint64_t>());
      numel *= d;
    }
    torch::Tensor t = torch::empty(shape, torch::kFloat32);
    r.take_into(t.data_ptr(), static_cast<std::size_t>(numel) * sizeof(float));
    out[static_cast<int>(layer)] = t;
  }
  return out;
}

}  // namespace pcve
