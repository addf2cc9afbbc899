#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "orion/model/types.hpp"

namespace orion::e2 {

inline constexpr std::uint8_t kStyleRadioResourceAllocation = 2;
inline constexpr std::uint8_t kActionSlicePrbQuota = 6;
inline constexpr std::uint16_t kRanFunctionRc = 3;

enum class MessageType : std::uint8_t {
  setup_request = 0x01,
  setup_response = 0x02,
  control_request = 0x03,
  control_acknowledge = 0x04,
  control_failure = 0x05,
};

enum class FailureCause : std::uint8_t {
  capacity_exceeded = 0x01,
  unknown_function = 0x02,
  malformed = 0x03,
};

// Scheduling discipline hint carried with a control request. The node only
// records it.
enum class Discipline : std::uint8_t {
  earliest_deadline_first = 0x01,
  proportional_fair = 0x02,
};

Discipline discipline_for(model::SliceType type) noexcept;

struct FunctionAdvert {
  std::uint16_t function_id = kRanFunctionRc;
  std::uint8_t style = kStyleRadioResourceAllocation;
  std::uint8_t action = kActionSlicePrbQuota;

  bool operator==(const FunctionAdvert&) const = default;
};

struct RatioTriple {
  std::uint8_t min = 0;
  std::uint8_t dedicated = 0;
  std::uint8_t max = 100;

  bool operator==(const RatioTriple&) const = default;
};

struct SetupRequest {
  std::string node_id;
  std::vector<FunctionAdvert> functions;
  // Cell parameters the xApp needs for capacity estimation. node_id of the
  // embedded config always equals the request's node_id.
  std::optional<model::CellConfig> cell;

  bool operator==(const SetupRequest&) const = default;
};

struct SetupResponse {
  std::vector<std::uint16_t> accepted_functions;

  bool operator==(const SetupResponse&) const = default;
};

struct ControlRequest {
  std::uint16_t ran_function_id = kRanFunctionRc;
  std::uint8_t style = kStyleRadioResourceAllocation;
  std::uint8_t action_id = kActionSlicePrbQuota;
  model::SliceId slice;
  RatioTriple ratios;
  Discipline discipline = Discipline::proportional_fair;

  bool operator==(const ControlRequest&) const = default;
};

struct ControlAcknowledge {
  std::uint16_t ran_function_id = kRanFunctionRc;

  bool operator==(const ControlAcknowledge&) const = default;
};

struct ControlFailure {
  FailureCause cause = FailureCause::malformed;
  std::string detail;

  bool operator==(const ControlFailure&) const = default;
};

using PduBody = std::variant<SetupRequest, SetupResponse, ControlRequest, ControlAcknowledge, ControlFailure>;

struct ControlPdu {
  std::uint32_t transaction_id = 0;
  PduBody body;

  MessageType type() const noexcept;
  bool operator==(const ControlPdu&) const = default;
};

}  // namespace orion::e2
