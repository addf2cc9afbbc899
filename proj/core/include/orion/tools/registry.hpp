#pragma once

#include <functional>
#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "orion/model/types.hpp"

namespace orion::tools {

struct ArgumentSpec {
  std::string name;  // JSON key
  model::FieldKind kind = model::FieldKind::text;
  bool nullable = true;
  std::optional<double> minimum;
  nlohmann::json default_value;  // null when the argument has no default

  bool operator==(const ArgumentSpec&) const = default;
};

struct ToolDescriptor {
  std::string name;
  std::string description;
  std::vector<std::string> aliases;
  std::vector<ArgumentSpec> arguments;

  bool answers_to(std::string_view tool_name) const;
  const ArgumentSpec* argument(std::string_view key) const;
  bool operator==(const ToolDescriptor&) const = default;
};

void to_json(nlohmann::json& j, const ToolDescriptor& d);
void from_json(const nlohmann::json& j, ToolDescriptor& d);

// JSON Schema rendering of the argument list, for function-calling APIs.
nlohmann::json to_json_schema(const ToolDescriptor& d);

inline constexpr std::string_view kCreateSession = "create_session";
inline constexpr std::string_view kCreateSessionAlias = "network_slice_booking";

// The slice booking tool: one nullable argument per SliceRequirements field.
ToolDescriptor create_session_descriptor();

struct ToolCall {
  std::string call_id;
  std::string conversation_id;
  std::string tool_name;
  nlohmann::json arguments = nlohmann::json::object();

  bool operator==(const ToolCall&) const = default;
};

enum class Outcome : std::uint8_t { ok, rejected, error };

std::string_view to_string(Outcome outcome) noexcept;

struct ToolResult {
  std::string call_id;
  Outcome outcome = Outcome::error;
  // SessionBooking for OK, the downstream refusal for REJECTED, and
  // {"error", "detail"} for ERROR.
  nlohmann::json payload;
  std::optional<int> status;  // downstream HTTP status, when there was one

  bool operator==(const ToolResult&) const = default;
};

void to_json(nlohmann::json& j, const ToolCall& c);
void from_json(const nlohmann::json& j, ToolCall& c);
void to_json(nlohmann::json& j, const ToolResult& r);
void from_json(const nlohmann::json& j, ToolResult& r);

struct SchemaIssue {
  std::string key;  // offending argument, or "" for the payload as a whole
  std::string message;
};

// Every way `arguments` fails the descriptor; empty when it conforms.
std::vector<SchemaIssue> schema_issues(const ToolDescriptor& d, const nlohmann::json& arguments);
// Throws Error(schema_violation) listing the issues.
void validate_arguments(const ToolDescriptor& d, const nlohmann::json& arguments);

using ToolHandler = std::function<ToolResult(const ToolCall&)>;

// Static tool set, in registration order. Read-only once serving starts.
class ToolRegistry {
 public:
  // Throws Error(conflict) when a name or alias is already taken.
  void add(ToolDescriptor descriptor, ToolHandler handler);
  std::vector<ToolDescriptor> list() const;
  const ToolDescriptor* find(std::string_view name) const;

  // Throws Error(unknown_tool | schema_violation) before the handler runs.
  // The result always carries the call's call_id.
  ToolResult invoke(const ToolCall& call) const;

 private:
  struct Entry {
    ToolDescriptor descriptor;
    ToolHandler handler;
  };
  std::vector<Entry> entries_;
};

}  // namespace orion::tools
