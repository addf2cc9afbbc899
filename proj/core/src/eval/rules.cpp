#include "orion/eval/rules.hpp"

#include <array>
#include <cmath>
#include <set>

#include "orion/model/json.hpp"

namespace orion::eval {

using nlohmann::json;
using model::Field;

std::string_view to_string(Rule rule) noexcept {
  static constexpr std::array<std::string_view, 8> kNames = {"R1", "R2", "R3", "R4", "R5", "R6", "R7", "R8"};
  return kNames[static_cast<std::size_t>(rule) - 1];
}

std::string_view describe(Rule rule) noexcept {
  switch (rule) {
    case Rule::r1: return "exactly one tool call";
    case Rule::r2: return "correct tool name";
    case Rule::r3: return "unstated field populated";
    case Rule::r4: return "stated field missing or wrong";
    case Rule::r5: return "uplink field fabricated from a downlink statement";
    case Rule::r6: return "minimum or default substituted";
    case Rule::r7: return "arguments violate the tool schema";
    case Rule::r8: return "refused or asked although nullable fields suffice";
  }
  return "";
}

void to_json(json& j, const RuleViolation& v) {
  j = json{{"rule", to_string(v.rule)}, {"field", v.field}, {"detail", v.detail}};
}

namespace {

bool same_value(const model::FieldValue& expected, const json& actual) {
  if (const auto* s = std::get_if<std::string>(&expected)) return actual.is_string() && actual.get<std::string>() == *s;
  if (!actual.is_number()) return false;
  if (const auto* i = std::get_if<std::int64_t>(&expected)) {
    if (actual.is_number_integer()) return actual.get<std::int64_t>() == *i;
    return actual.get<double>() == static_cast<double>(*i);
  }
  double want = std::get<double>(expected);
  double got = actual.get<double>();
  return std::fabs(got - want) <= 1e-9 * std::max(1.0, std::fabs(want));
}

bool equals_json_number(const json& value, double target) {
  return value.is_number() && value.get<double>() == target;
}

}  // namespace

std::vector<RuleViolation> check_tool_use_rules(const DatasetEntry& entry, const Observation& obs,
                                                const tools::ToolDescriptor& descriptor) {
  std::vector<RuleViolation> out;
  if (obs.refusal || obs.clarification) {
    out.push_back({Rule::r8, "", obs.refusal ? "refused: " + *obs.refusal : "asked: " + *obs.clarification});
    return out;
  }
  if (obs.calls.size() != 1) {
    out.push_back({Rule::r1, "", std::to_string(obs.calls.size()) + " tool calls"});
    if (obs.calls.empty()) return out;
  }
  const auto& call = obs.calls.front();
  if (!descriptor.answers_to(call.tool_name)) {
    out.push_back({Rule::r2, "", "called '" + call.tool_name + "'"});
    return out;
  }

  std::set<std::string> excluded;
  for (const auto& issue : tools::schema_issues(descriptor, call.arguments)) {
    out.push_back({Rule::r7, issue.key, issue.message});
    excluded.insert(issue.key);
  }
  if (!call.arguments.is_object()) return out;

  for (auto f : model::kAllFields) {
    std::string key(model::json_key(f));
    if (excluded.count(key)) continue;
    auto it = call.arguments.find(key);
    const json* value = (it == call.arguments.end() || it->is_null()) ? nullptr : &*it;
    auto stated = model::get_field(entry.ground_truth, f);

    if (stated) {
      if (!value) {
        out.push_back({Rule::r4, key, "stated value missing"});
      } else if (!same_value(*stated, *value)) {
        out.push_back({Rule::r4, key, "expected " + model::field_value_to_json(stated).dump() + ", got " + value->dump()});
      }
      continue;
    }
    if (!value) continue;
    if (auto down = model::downlink_counterpart(f); down && model::get_field(entry.ground_truth, *down)) {
      out.push_back({Rule::r5, key, "only " + std::string(model::json_key(*down)) + " was stated"});
      continue;
    }
    const auto* spec = descriptor.argument(key);
    bool substituted = spec && ((spec->minimum && equals_json_number(*value, *spec->minimum)) ||
                                (!spec->default_value.is_null() && *value == spec->default_value));
    if (substituted) {
      out.push_back({Rule::r6, key, "unstated field set to " + value->dump()});
    } else {
      out.push_back({Rule::r3, key, "unstated field set to " + value->dump()});
    }
  }
  return out;
}

}  // namespace orion::eval
