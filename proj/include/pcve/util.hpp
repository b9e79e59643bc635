#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace pcve {

// Deterministic seed fan-out: every stage derives its RNG stream from the
// run seed plus a stable tag, so reruns reproduce byte-identical artifacts.
std::uint64_t sub_seed(std::uint64_t base, std::string_view tag);
std::uint64_t sub_seed(std::uint64_t base, std::string_view tag, std::uint64_t index);

// Content hashing for weight checksums and artifact manifests.
class Sha256 {
 public:
  Sha256();
  void update(const void* data, std::size_t len);
  std::string hex_digest();  // finalizes; further updates are invalid

 private:
  std::array<std::uint32_t, 8> state_;
  std::array<std::uint8_t, 64> buffer_;
  std::size_t buffer_len_ = 0;
  std::uint64_t total_len_ = 0;
  bool finalized_ = false;
  void process_block(const std::uint8_t* block);
};

std::string sha256_hex(const void* data, std::size_t len);
std::string sha256_file(const std::filesystem::path& path);

std::vector<std::uint8_t> read_binary_file(const std::filesystem::path& path);
void write_binary_file(const std::filesystem::path& path, const void* data, std::size_t len);
std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

// Sorted list of regular files in `dir` whose name matches the extension.
std::vector<std::filesystem::path> list_files(const std::filesystem::path& dir,
                                              const std::string& extension);

}  // namespace pcve
