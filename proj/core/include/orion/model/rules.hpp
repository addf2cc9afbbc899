#pragma once

#include <string>
#include <vector>

#include "orion/model/types.hpp"

namespace orion::model {

struct Violation {
  std::string field;  // snake_case field name
  std::string rule;

  std::string message() const { return field + " " + rule; }
  bool operator==(const Violation&) const = default;
};

// Verdict-returning: an empty list means the requirements are acceptable.
std::vector<Violation> validate_requirements(const SliceRequirements& req);

// Throws Error(illegal_transition) for any pair outside the legal table.
IntentState lifecycle_transition(IntentState state, LifecycleEvent event);

// Non-throwing form of the same table, used by UIs to project legal actions.
std::optional<IntentState> lifecycle_successor(IntentState state, LifecycleEvent event) noexcept;

enum class SstProfile : std::uint8_t { standard, listing1_compat };

std::string_view to_string(SstProfile profile) noexcept;
std::optional<SstProfile> parse_sst_profile(std::string_view text) noexcept;

std::uint8_t sst_for(SliceType type, SstProfile profile) noexcept;

}  // namespace orion::model
