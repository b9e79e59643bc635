#pragma once

#include <torch/torch.h>

#include <filesystem>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace pcve {

// Multi-tensor container used for checkpoints and backbone weights.
// Layout: magic "PCVETCF1" | u32 version | u64 index_len | JSON index
// | raw little-endian tensor blob. The index records name, dtype, shape,
// offset and byte count per tensor plus free-form metadata.
struct TensorFile {
  nlohmann::json meta;
  std::vector<std::pair<std::string, torch::Tensor>> tensors;

  bool contains(const std::string& name) const;
  torch::Tensor at(const std::string& name) const;
};

void save_tensor_file(const std::filesystem::path& path,
                      const std::vector<std::pair<std::string, torch::Tensor>>& tensors,
                      const nlohmann::json& meta = nlohmann::json::object());
TensorFile load_tensor_file(const std::filesystem::path& path);

// Feature dump: one file per patch holding float32 feature maps keyed by
// layer index. Layout: magic "PCVEFEA1" | u32 entry count | per entry
// u32 layer index, u32 ndim, u64 dims[ndim], f32 data (contiguous, CHW).
void save_feature_file(const std::filesystem::path& path,
                       const std::map<int, torch::Tensor>& features);
std::map<int, torch::Tensor> load_feature_file(const std::filesystem::path& path);

}  // namespace pcve
