#pragma once

#include <stdexcept>
#include <string>

namespace pcve {

// Failure identities surfaced by the library. CLI exit codes group them:
// config problems, missing upstream artifacts and external-tool failures
// map to distinct codes (see tools/pcve_main.cpp).
enum class ErrorCode {
  kUnknownBackbone,
  kWeightLoad,
  kBadPatchShape,
  kUnknownLayerIndex,
  kDimensionMismatch,
  kTooFewPatches,
  kZeroVector,
  kLabelMismatch,
  kDegenerateTarget,
  kDegenerateCandidates,
  kNonConvergence,
  kIncompleteGrid,
  kKTooLarge,
  kEncoderUnavailable,
  kInvalidCrf,
  kBadRange,
  kFlowBackendUnavailable,
  kNegativeGamma,
  kMetricUnavailable,
  kMissingDegradedVariant,
  kShapeMismatch,
  kBackboneRequired,
  kBadConfig,
  kEmptyDataset,
  kMissingGeneratorCheckpoint,
  kMissingPretrainState,
  kSetTooSmall,
  kMissingMetricBackend,
  kMissingUpstreamArtifact,
  kConfigError,
  kExternalTool,
  kIoError,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void raise(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace pcve
