#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <memory>
#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "orion/a1/status.hpp"
#include "orion/error.hpp"
#include "orion/gateway/translator.hpp"

namespace orion::gateway {

struct GatewayConfig {
  std::string tool_url;
  std::string rapp_url;
  std::string mediator_url;
  std::string booking_url;
  int clarification_bound = 2;
  // Drive a freshly created policy straight to ACTIVATED and wait for the
  // enforcement verdict.
  bool auto_activate = true;
  std::chrono::milliseconds enforcement_wait{5000};
  std::chrono::milliseconds poll_interval{20};
  std::chrono::milliseconds downstream_timeout{15000};
};

struct IntentError {
  Errc code = Errc::translation_failed;
  std::string detail;
  // Downstream cause for downstream_error, e.g. admission_refused.
  std::optional<Errc> cause;

  bool operator==(const IntentError&) const = default;
};

// What the gateway knows about one intent. Pipeline failures land in `error`;
// the record's state is left where the failure found it.
struct IntentView {
  model::IntentRecord record;
  std::optional<std::string> pending_clarification;
  std::optional<IntentError> error;
  std::optional<std::string> refusal;
  std::optional<model::SliceType> slice_type;
  std::vector<tools::ToolCall> observed_calls;  // every call of the latest pipeline run
  std::optional<a1::PolicyStatus> policy_status;
  std::optional<model::A1Policy> policy;
  nlohmann::json usage;  // translator token accounting, null when not tracked

  bool operator==(const IntentView&) const = default;
};

void to_json(nlohmann::json& j, const IntentView& view);
void from_json(const nlohmann::json& j, IntentView& view);

// Event published for every observable change. `kind` is one of
// state_change, clarification, policy_status, quota_update, timing, error.
using EventSink = std::function<void(const nlohmann::json&)>;

// SMO-side orchestrator. Conversations are processed strictly sequentially;
// distinct conversations may run concurrently.
class Gateway {
 public:
  Gateway(GatewayConfig config, std::shared_ptr<Translator> translator);
  ~Gateway();
  Gateway(const Gateway&) = delete;
  Gateway& operator=(const Gateway&) = delete;

  void set_event_sink(EventSink sink);

  // Throws Error(invalid_argument) on empty text and Error(conflict) when the
  // conversation id is already in use. Pipeline failures are reported in the
  // returned view.
  IntentView submit_intent(const std::string& text, std::optional<std::string> conversation_id = std::nullopt);

  // Accepts an intent id or a conversation id. Throws Error(unknown_intent |
  // no_pending_clarification).
  IntentView answer_clarification(const std::string& id, const std::string& answer);

  // Throws Error(unknown_intent | illegal_transition | not_ready), or
  // Error(downstream_error) when a suspend/resume/terminate side effect fails
  // (the state is then unchanged). `text` is appended to the conversation on
  // modify.
  IntentView lifecycle_command(const std::string& intent_id, model::LifecycleEvent event,
                               const std::optional<std::string>& text = std::nullopt);

  // Throws Error(unknown_intent).
  IntentView intent(const std::string& id) const;
  std::vector<IntentView> intents() const;

  const Translator& translator() const noexcept;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace orion::gateway
