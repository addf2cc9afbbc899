#include "orion/error.hpp"

namespace orion {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::invalid_argument: return "InvalidArgument";
    case Errc::illegal_transition: return "IllegalTransition";
    case Errc::unknown_intent: return "UnknownIntent";
    case Errc::schema_violation: return "SchemaViolation";
    case Errc::admission_refused: return "AdmissionRefused";
    case Errc::not_found: return "NotFound";
    case Errc::already_released: return "AlreadyReleased";
    case Errc::unknown_tool: return "UnknownTool";
    case Errc::transport_error: return "TransportError";
    case Errc::translation_failed: return "TranslationFailed";
    case Errc::validation_failed: return "ValidationFailed";
    case Errc::downstream_error: return "DownstreamError";
    case Errc::missing_throughput: return "MissingThroughput";
    case Errc::invalid_intent: return "InvalidIntent";
    case Errc::mediator_unavailable: return "MediatorUnavailable";
    case Errc::duplicate_policy_id: return "DuplicatePolicyId";
    case Errc::unknown_policy: return "UnknownPolicy";
    case Errc::illegal_status_transition: return "IllegalStatusTransition";
    case Errc::infeasible: return "Infeasible";
    case Errc::invalid_config: return "InvalidConfig";
    case Errc::malformed_frame: return "MalformedFrame";
    case Errc::unknown_message_type: return "UnknownMessageType";
    case Errc::field_range_error: return "FieldRangeError";
    case Errc::connection_lost: return "ConnectionLost";
    case Errc::frame_too_large: return "FrameTooLarge";
    case Errc::protocol_error: return "ProtocolError";
    case Errc::timeout: return "Timeout";
    case Errc::no_pending_clarification: return "NoPendingClarification";
    case Errc::services_unavailable: return "ServicesUnavailable";
    case Errc::io_error: return "IoError";
    case Errc::conflict: return "Conflict";
    case Errc::not_ready: return "NotReady";
  }
  return "Unknown";
}

std::optional<Errc> errc_from_string(std::string_view name) noexcept {
  for (int i = 0; i <= static_cast<int>(Errc::not_ready); ++i) {
    auto code = static_cast<Errc>(i);
    if (to_string(code) == name) return code;
  }
  return std::nullopt;
}

}  // namespace orion
