#include "pcve/util.hpp"

#include <algorithm>
#include <cstring>
#include <fstream>

#include "pcve/errors.hpp"

namespace pcve {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kUnknownBackbone: return "UnknownBackbone";
    case ErrorCode::kWeightLoad: return "WeightLoadError";
    case ErrorCode::kBadPatchShape: return "BadPatchShape";
    case ErrorCode::kUnknownLayerIndex: return "UnknownLayerIndex";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kTooFewPatches: return "TooFewPatches";
    case ErrorCode::kZeroVector: return "ZeroVector";
    case ErrorCode::kLabelMismatch: return "LabelMismatch";
    case ErrorCode::kDegenerateTarget: return "DegenerateTarget";
    case ErrorCode::kDegenerateCandidates: return "DegenerateCandidates";
    case ErrorCode::kNonConvergence: return "NonConvergence";
    case ErrorCode::kIncompleteGrid: return "IncompleteGrid";
    case ErrorCode::kKTooLarge: return "KTooLarge";
    case ErrorCode::kEncoderUnavailable: return "EncoderUnavailable";
    case ErrorCode::kInvalidCrf: return "InvalidCRF";
    case ErrorCode::kBadRange: return "BadRange";
    case ErrorCode::kFlowBackendUnavailable: return "FlowBackendUnavailable";
    case ErrorCode::kNegativeGamma: return "NegativeGamma";
    case ErrorCode::kMetricUnavailable: return "MetricUnavailable";
    case ErrorCode::kMissingDegradedVariant: return "MissingDegradedVariant";
    case ErrorCode::kShapeMismatch: return "ShapeMismatch";
    case ErrorCode::kBackboneRequired: return "BackboneRequired";
    case ErrorCode::kBadConfig: return "BadConfig";
    case ErrorCode::kEmptyDataset: return "EmptyDataset";
    case ErrorCode::kMissingGeneratorCheckpoint: return "MissingGeneratorCheckpoint";
    case ErrorCode::kMissingPretrainState: return "MissingPretrainState";
    case ErrorCode::kSetTooSmall: return "SetTooSmall";
    case ErrorCode::kMissingMetricBackend: return "MissingMetricBackend";
    case ErrorCode::kMissingUpstreamArtifact: return "MissingUpstreamArtifact";
    case ErrorCode::kConfigError: return "ConfigError";
    case ErrorCode::kExternalTool: return "ExternalToolError";
    case ErrorCode::kIoError: return "IoError";
  }
  return "Error";
}

namespace {

constexpr std::uint64_t kFnvOffset = 0xcbf29ce484222325ULL;
constexpr std::uint64_t kFnvPrime = 0x100000001b3ULL;

std::uint64_t fnv1a(std::uint64_t h, const void* data, std::size_t len) {
  const auto* p = static_cast<const std::uint8_t*>(data);
  for (std::size_t i = 0; i < len; ++i) {
    h ^= p[i];
    h *= kFnvPrime;
  }
  return h;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

std::uint64_t sub_seed(std::uint64_t base, std::string_view tag) {
  std::uint64_t h = fnv1a(kFnvOffset, tag.data(), tag.size());
  h = fnv1a(h, &base, sizeof(base));
  return splitmix64(h);
}

std::uint64_t sub_seed(std::uint64_t base, std::string_view tag, std::uint64_t index) {
  std::uint64_t h = sub_seed(base, tag);
  h = fnv1a(h, &index, sizeof(index));
  return splitmix64(h);
}

// ---------------------------------------------------------------------------
// SHA-256 (FIPS 180-4)

namespace {

constexpr std::uint32_t kSha256K[64] = {
    0x428a2f98, 0x71374491, 0xb5c0fbcf, 0xe9b5dba5, 0x3956c25b, 0x59f111f1,
    0x923f82a4, 0xab1c5ed5, 0xd807aa98, 0x12835b01, 0x243185be, 0x550c7dc3,
    0x72be5d74, 0x80deb1fe, 0x9bdc06a7, 0xc19bf174, 0xe49b69c1, 0xefbe4786,
    0x0fc19dc6, 0x240ca1cc, 0x2de92c6f, 0x4a7484aa, 0x5cb0a9dc, 0x76f988da,
    0x983e5152, 0xa831c66d, 0xb00327c8, 0xbf597fc7, 0xc6e00bf3, 0xd5a79147,
    0x06ca6351, 0x14292967, 0x27b70a85, 0x2e1b2138, 0x4d2c6dfc, 0x53380d13,
    0x650a7354, 0x766a0abb, 0x81c2c92e, 0x92722c85, 0xa2bfe8a1, 0xa81a664b,
    0xc24b8b70, 0xc76c51a3, 0xd192e819, 0xd6990624, 0xf40e3585, 0x106aa070,
    0x19a4c116, 0x1e376c08, 0x2748774c, 0x34b0bcb5, 0x391c0cb3, 0x4ed8aa4a,
    0x5b9cca4f, 0x682e6ff3, 0x748f82ee, 0x78a5636f, 0x84c87814, 0x8cc70208,
    0x90befffa, 0xa4506ceb, 0xbef9a3f7, 0xc67178f2};

inline std::uint32_t rotr(std::uint32_t x, int n) { return (x >> n) | (x << (32 - n)); }

}  // namespace

Sha256::Sha256()
    : state_{0x6a09e667, 0xbb67ae85, 0x3c6ef372, 0xa54ff53a,
             0x510e527f, 0x9b05688c, 0x1f83d9ab, 0x5be0cd19} {}

void Sha256::process_block(const std::uint8_t* block) {
  std::uint32_t w[64];
  for (int i = 0; i < 16; ++i) {
    w[i] = (std::uint32_t(block[i * 4]) << 24) | (std::uint32_t(block[i * 4 + 1]) << 16) |
           (std::uint32_t(block[i * 4 + 2]) << 8) | std::uint32_t(block[i * 4 + 3]);
  }
  for (int i = 16; i < 64; ++i) {
    std::uint32_t s0 = rotr(w[i - 15], 7) ^ rotr(w[i - 15], 18) ^ (w[i - 15] >> 3);
    std::uint32_t s1 = rotr(w[i - 2], 17) ^ rotr(w[i - 2], 19) ^ (w[i - 2] >> 10);
    w[i] = w[i - 16] + s0 + w[i - 7] + s1;
  }
  auto [a, b, c, d, e, f, g, h] = std::tuple{state_[0], state_[1], state_[2], state_[3],
                                             state_[4], state_[5], state_[6], state_[7]};
  for (int i = 0; i < 64; ++i) {
    std::uint32_t s1 = rotr(e, 6) ^ rotr(e, 11) ^ rotr(e, 25);
    std::uint32_t ch = (e & f) ^ (~e & g);
    std::uint32_t t1 = h + s1 + ch + kSha256K[i] + w[i];
    std::uint32_t s0 = rotr(a, 2) ^ rotr(a, 13) ^ rotr(a, 22);
    std::uint32_t maj = (a & b) ^ (a & c) ^ (b & c);
    std::uint32_t t2 = s0 + maj;
    h = g; g = f; f = e; e = d + t1;
    d = c; c = b; b = a; a = t1 + t2;
  }
  state_[0] += a; state_[1] += b; state_[2] += c; state_[3] += d;
  state_[4] += e; state_[5] += f; state_[6] += g; state_[7] += h;
}

void Sha256::update(const void* data, std::size_t len) {
  const auto* p = static_cast<const std::uint8_t*>(data);
  total_len_ += len;
  while (len > 0) {
    std::size_t take = std::min(len, buffer_.size() - buffer_len_);
    std::memcpy(buffer_.data() + buffer_len_, p, take);
    buffer_len_ += take;
    p += take;
    len -= take;
    if (buffer_len_ == buffer_.size()) {
      process_block(buffer_.data());
      buffer_len_ = 0;
    }
  }
}

std::string Sha256::hex_digest() {
  if (!finalized_) {
    std::uint64_t bit_len = total_len_ * 8;
    std::uint8_t pad = 0x80;
    update(&pad, 1);
    total_len_ -= 1;
    std::uint8_t zero = 0;
    while (buffer_len_ != 56) {
      update(&zero, 1);
      total_len_ -= 1;
    }
    std::uint8_t len_bytes[8];
    for (int i = 0; i < 8; ++i) len_bytes[i] = std::uint8_t(bit_len >> (56 - 8 * i));
    update(len_bytes, 8);
    finalized_ = true;
  }
  static const char* digits = "0123456789abcdef";
  std::string out;
  out.reserve(64);
  for (std::uint32_t word : state_) {
    for (int shift = 28; shift >= 0; shift -= 4) out.push_back(digits[(word >> shift) & 0xf]);
  }
  return out;
}

std::string sha256_hex(const void* data, std::size_t len) {
  Sha256 h;
  h.update(data, len);
  return h.hex_digest();
}

std::string sha256_file(const std::filesystem::path& path) {
  auto bytes = read_binary_file(path);
  return sha256_hex(bytes.data(), bytes.size());
}

std::vector<std::uint8_t> read_binary_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) raise(ErrorCode::kIoError, "cannot open " + path.string());
  in.seekg(0, std::ios::end);
  std::streamoff size = in.tellg();
  in.seekg(0, std::ios::beg);
  std::vector<std::uint8_t> out(static_cast<std::size_t>(size));
  if (size > 0) in.read(reinterpret_cast<char*>(out.data()), size);
  if (!in) raise(ErrorCode::kIoError, "short read from " + path.string());
  return out;
}

void write_binary_file(const std::filesystem::path& path, const void* data, std::size_t len) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) raise(ErrorCode::kIoError, "cannot open " + path.string() + " for writing");
  out.write(static_cast<const char*>(data), static_cast<std::streamsize>(len));
  if (!out) raise(ErrorCode::kIoError, "short write to " + path.string());
}

std::string read_text_file(const std::filesystem::path& path) {
  auto bytes = read_binary_file(path);
  return std::string(bytes.begin(), bytes.end());
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  write_binary_file(path, text.data(), text.size());
}

std::vector<std::filesystem::path> list_files(const std::filesystem::path& dir,
                                              const std::string& extension) {
  std::vector<std::filesystem::path> out;
  if (!std::filesystem::exists(dir)) return out;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == extension) {
      out.push_back(entry.path());
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace pcve
