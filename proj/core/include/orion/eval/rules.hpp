#pragma once

#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "orion/eval/dataset.hpp"
#include "orion/tools/registry.hpp"

namespace orion::eval {

// Tool-use rules checked against every observed translator exchange:
//   R1 exactly one tool call
//   R2 the booking tool is the one called
//   R3 no unstated field populated
//   R4 every stated field present with the stated value
//   R5 no uplink field populated when only its downlink counterpart is stated
//   R6 no schema minimum or default substituted for an unstated field
//   R7 arguments conform to the tool schema
//   R8 no refusal or clarification when the nullable fields suffice
enum class Rule : std::uint8_t { r1 = 1, r2, r3, r4, r5, r6, r7, r8 };

std::string_view to_string(Rule rule) noexcept;  // "R1".."R8"
std::string_view describe(Rule rule) noexcept;

struct RuleViolation {
  Rule rule = Rule::r1;
  std::string field;  // JSON key, empty for call-level rules
  std::string detail;

  bool operator==(const RuleViolation&) const = default;
};

void to_json(nlohmann::json& j, const RuleViolation& v);

struct Observation {
  std::vector<tools::ToolCall> calls;
  std::optional<std::string> refusal;
  std::optional<std::string> clarification;
};

// Field rules apply to the first call only. Keys flagged by R7 are excluded
// from R3-R6. Each distinct problem yields exactly one violation.
std::vector<RuleViolation> check_tool_use_rules(const DatasetEntry& entry, const Observation& observed,
                                                const tools::ToolDescriptor& descriptor =
                                                    tools::create_session_descriptor());

}  // namespace orion::eval
