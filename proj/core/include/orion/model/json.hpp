#pragma once

// Canonical JSON serialization of the domain types. Field names follow the
// camelCase convention of the A1 policy payload (sliceId, sliceSlaObjectives,
// maxDlThptPerUe, ...). Parsing is strict: type mismatches and unknown keys
// raise Error(schema_violation).

#include <nlohmann/json.hpp>

#include "orion/model/types.hpp"

namespace orion::model {

using nlohmann::json;

json field_value_to_json(const std::optional<FieldValue>& value);

void to_json(json& j, const SliceRequirements& req);
void from_json(const json& j, SliceRequirements& req);

void to_json(json& j, const SessionBooking& booking);
void from_json(const json& j, SessionBooking& booking);

void to_json(json& j, const SliceId& id);
void from_json(const json& j, SliceId& id);

void to_json(json& j, const SliceSlaObjectives& obj);
void from_json(const json& j, SliceSlaObjectives& obj);

void to_json(json& j, const A1Policy& policy);
void from_json(const json& j, A1Policy& policy);

void to_json(json& j, const CellConfig& cfg);
void from_json(const json& j, CellConfig& cfg);

void to_json(json& j, const PrbQuota& quota);
void from_json(const json& j, PrbQuota& quota);

void to_json(json& j, const StageTimings& timings);
void from_json(const json& j, StageTimings& timings);

void to_json(json& j, const IntentRecord& record);
void from_json(const json& j, IntentRecord& record);

void to_json(json& j, SliceType type);
void from_json(const json& j, SliceType& type);

void to_json(json& j, IntentState state);
void from_json(const json& j, IntentState& state);

// The from_json overloads above throw Error(schema_violation) on bad input.
template <typename T>
T parse_as(const json& j) {
  T value{};
  from_json(j, value);
  return value;
}

}  // namespace orion::model
