#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

namespace fundcheck {

enum class ErrorCode {
  kInvalidInput,
  kRankError,
  kInvalidCamera,
  kCoincidentCenters,
  kGraphError,
  kDegenerateConfiguration,
  kScaleRecoveryError,
  kCycleConditionViolated,
  kReconstructionFailed,
};

const char* ToString(ErrorCode code);

// Every failure raised by the library. `edge` names the offending view pair
// (0-based) when one is known.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what,
        std::optional<std::pair<int, int>> edge = std::nullopt)
      : std::runtime_error(what), code_(code), edge_(edge) {}

  ErrorCode code() const { return code_; }
  const std::optional<std::pair<int, int>>& edge() const { return edge_; }

 private:
  ErrorCode code_;
  std::optional<std::pair<int, int>> edge_;
};

}  // namespace fundcheck
