#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace orion {

// Typed failure categories shared by every service. HTTP layers map these
// onto status codes; the harness records them as failure causes.
enum class Errc {
  invalid_argument,
  illegal_transition,
  unknown_intent,
  schema_violation,
  admission_refused,
  not_found,
  already_released,
  unknown_tool,
  transport_error,
  translation_failed,
  validation_failed,
  downstream_error,
  missing_throughput,
  invalid_intent,
  mediator_unavailable,
  duplicate_policy_id,
  unknown_policy,
  illegal_status_transition,
  infeasible,
  invalid_config,
  malformed_frame,
  unknown_message_type,
  field_range_error,
  connection_lost,
  frame_too_large,
  protocol_error,
  timeout,
  no_pending_clarification,
  services_unavailable,
  io_error,
  conflict,
  not_ready,
};

std::string_view to_string(Errc code) noexcept;
std::optional<Errc> errc_from_string(std::string_view name) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& detail)
      : std::runtime_error(std::string(to_string(code)) + ": " + detail),
        code_(code),
        detail_(detail) {}

  Errc code() const noexcept { return code_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  Errc code_;
  std::string detail_;
};

}  // namespace orion
