#pragma once

#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <string_view>

#include "orion/model/types.hpp"

namespace orion::a1 {

enum class PolicyState : std::uint8_t { created, enforced, not_enforced, deleted };

std::string_view to_string(PolicyState state) noexcept;
std::optional<PolicyState> parse_policy_state(std::string_view text) noexcept;

// CREATED -> ENFORCED | NOT_ENFORCED, and anything but DELETED -> DELETED.
bool status_transition_allowed(PolicyState from, PolicyState to) noexcept;

struct PolicyStatus {
  std::string policy_id;
  int policytype_id = model::kSliceSlaPolicyType;
  PolicyState state = PolicyState::created;
  std::string detail;
  std::optional<model::PrbQuota> quota;
  model::StageTimings timings;

  bool operator==(const PolicyStatus&) const = default;
};

void to_json(nlohmann::json& j, const PolicyStatus& status);
void from_json(const nlohmann::json& j, PolicyStatus& status);

}  // namespace orion::a1
