#include "orion/a1/status.hpp"

#include <array>

#include "orion/model/json.hpp"
#include "util/json_read.hpp"

namespace orion::a1 {

using namespace jsonio;

namespace {
constexpr std::array<std::string_view, 4> kNames = {"CREATED", "ENFORCED", "NOT_ENFORCED", "DELETED"};
}

std::string_view to_string(PolicyState state) noexcept { return kNames[static_cast<std::size_t>(state)]; }

std::optional<PolicyState> parse_policy_state(std::string_view text) noexcept {
  for (std::size_t i = 0; i < kNames.size(); ++i) {
    if (kNames[i] == text) return static_cast<PolicyState>(i);
  }
  return std::nullopt;
}

bool status_transition_allowed(PolicyState from, PolicyState to) noexcept {
  if (from == PolicyState::deleted) return false;
  if (to == PolicyState::deleted) return true;
  return from == PolicyState::created && (to == PolicyState::enforced || to == PolicyState::not_enforced);
}

void to_json(nlohmann::json& j, const PolicyStatus& s) {
  j = json{{"policy_id", s.policy_id},
           {"policytype_id", s.policytype_id},
           {"state", to_string(s.state)},
           {"detail", s.detail},
           {"quota", s.quota ? json(*s.quota) : json(nullptr)},
           {"timings", s.timings}};
}

void from_json(const nlohmann::json& j, PolicyStatus& s) {
  require_object(j, "policy status");
  reject_unknown(j, {"policy_id", "policytype_id", "state", "detail", "quota", "timings"}, "policy status");
  s.policy_id = as_string(require(j, "policy_id"), "policy_id");
  s.policytype_id = int_in<int>(require(j, "policytype_id"), "policytype_id", 0, 1 << 30);
  auto name = as_string(require(j, "state"), "state");
  auto state = parse_policy_state(name);
  if (!state) bad("unknown policy state '" + name + "'");
  s.state = *state;
  s.detail = opt_string(j, "detail").value_or("");
  s.quota.reset();
  if (const auto* q = find_non_null(j, "quota")) s.quota = model::parse_as<model::PrbQuota>(*q);
  s.timings = {};
  if (const auto* t = find_non_null(j, "timings")) model::from_json(*t, s.timings);
}

}  // namespace orion::a1
