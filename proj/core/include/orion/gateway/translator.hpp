#pragma once

#include <memory>
#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "orion/model/types.hpp"
#include "orion/tools/registry.hpp"

namespace orion::gateway {

// Field-population rules given to every translator as its first turn.
std::string_view system_prompt() noexcept;

enum class Role : std::uint8_t { operator_, system, translator, tool };

std::string_view to_string(Role role) noexcept;

struct Turn {
  Role role = Role::operator_;
  std::string content;

  bool operator==(const Turn&) const = default;
};

struct Conversation {
  std::string conversation_id;
  std::vector<Turn> turns;  // append-only
  std::optional<std::string> pending_clarification;
  int clarification_rounds = 0;

  // Operator turns only, in order.
  std::vector<std::string> operator_texts() const;
};

struct Clarification {
  std::string question;
};

struct Refusal {
  std::string reason;
};

// One or more tool calls; only call_id/conversation_id are left to the
// gateway. Model adapters may emit several calls for one request.
struct ToolCalls {
  std::vector<tools::ToolCall> calls;
};

using TranslatorDecision = std::variant<ToolCalls, Clarification, Refusal>;

// Adapter contract. Any exception escaping propose/classify is reported by
// the gateway as Error(translation_failed) carrying the adapter's message.
class Translator {
 public:
  virtual ~Translator() = default;
  virtual std::string name() const = 0;
  virtual TranslatorDecision propose(const Conversation& conversation,
                                     const std::vector<tools::ToolDescriptor>& tools) = 0;
  virtual model::SliceType classify(const Conversation& conversation, const model::SessionBooking& booking) = 0;
  // Token accounting for model-backed adapters; null otherwise.
  virtual nlohmann::json usage() const { return nullptr; }
};

}  // namespace orion::gateway
