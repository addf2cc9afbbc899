#include "orion/model/types.hpp"

#include <algorithm>
#include <cctype>

#include "orion/error.hpp"

namespace orion::model {

namespace {

bool iequals(std::string_view a, std::string_view b) {
  return a.size() == b.size() &&
         std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
           return std::tolower(static_cast<unsigned char>(x)) ==
                  std::tolower(static_cast<unsigned char>(y));
         });
}

bool all_digits(std::string_view s) {
  return std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

}  // namespace

std::string_view to_string(SliceType type) noexcept {
  switch (type) {
    case SliceType::embb: return "eMBB";
    case SliceType::urllc: return "URLLC";
    case SliceType::mmtc: return "mMTC";
  }
  return "eMBB";
}

std::optional<SliceType> parse_slice_type(std::string_view text) noexcept {
  for (auto type : kSliceTypes) {
    if (iequals(text, to_string(type))) return type;
  }
  return std::nullopt;
}

std::string_view json_key(Field field) noexcept {
  switch (field) {
    case Field::area_of_service: return "areaOfService";
    case Field::duration_s: return "duration";
    case Field::device_count: return "deviceCount";
    case Field::max_dl_thpt_per_device_bps: return "maxDlThptPerDevice";
    case Field::max_ul_thpt_per_device_bps: return "maxUlThptPerDevice";
    case Field::max_dl_thpt_per_slice_bps: return "maxDlThptPerSlice";
    case Field::max_ul_thpt_per_slice_bps: return "maxUlThptPerSlice";
    case Field::dl_delay_budget_ms: return "downStreamDelayBudget";
    case Field::ul_delay_budget_ms: return "upStreamDelayBudget";
    case Field::packet_error_rate: return "packetErrorRate";
    case Field::availability_pct: return "availability";
    case Field::reliability_pct: return "reliability";
  }
  return "";
}

std::string_view snake_name(Field field) noexcept {
  switch (field) {
    case Field::area_of_service: return "area_of_service";
    case Field::duration_s: return "duration_s";
    case Field::device_count: return "device_count";
    case Field::max_dl_thpt_per_device_bps: return "max_dl_thpt_per_device_bps";
    case Field::max_ul_thpt_per_device_bps: return "max_ul_thpt_per_device_bps";
    case Field::max_dl_thpt_per_slice_bps: return "max_dl_thpt_per_slice_bps";
    case Field::max_ul_thpt_per_slice_bps: return "max_ul_thpt_per_slice_bps";
    case Field::dl_delay_budget_ms: return "dl_delay_budget_ms";
    case Field::ul_delay_budget_ms: return "ul_delay_budget_ms";
    case Field::packet_error_rate: return "packet_error_rate";
    case Field::availability_pct: return "availability_pct";
    case Field::reliability_pct: return "reliability_pct";
  }
  return "";
}

std::optional<Field> field_from_json_key(std::string_view key) noexcept {
  for (auto f : kAllFields) {
    if (json_key(f) == key) return f;
  }
  return std::nullopt;
}

FieldKind kind_of(Field field) noexcept {
  switch (field) {
    case Field::area_of_service: return FieldKind::text;
    case Field::duration_s:
    case Field::device_count:
    case Field::max_dl_thpt_per_device_bps:
    case Field::max_ul_thpt_per_device_bps:
    case Field::max_dl_thpt_per_slice_bps:
    case Field::max_ul_thpt_per_slice_bps: return FieldKind::integer;
    default: return FieldKind::number;
  }
}

std::optional<Field> downlink_counterpart(Field field) noexcept {
  switch (field) {
    case Field::max_ul_thpt_per_device_bps: return Field::max_dl_thpt_per_device_bps;
    case Field::max_ul_thpt_per_slice_bps: return Field::max_dl_thpt_per_slice_bps;
    case Field::ul_delay_budget_ms: return Field::dl_delay_budget_ms;
    default: return std::nullopt;
  }
}

bool is_uplink(Field field) noexcept { return downlink_counterpart(field).has_value(); }

std::optional<FieldValue> get_field(const SliceRequirements& r, Field field) {
  auto wrap = [](const auto& opt) -> std::optional<FieldValue> {
    if (!opt) return std::nullopt;
    return FieldValue{*opt};
  };
  switch (field) {
    case Field::area_of_service: return wrap(r.area_of_service);
    case Field::duration_s: return wrap(r.duration_s);
    case Field::device_count: return wrap(r.device_count);
    case Field::max_dl_thpt_per_device_bps: return wrap(r.max_dl_thpt_per_device_bps);
    case Field::max_ul_thpt_per_device_bps: return wrap(r.max_ul_thpt_per_device_bps);
    case Field::max_dl_thpt_per_slice_bps: return wrap(r.max_dl_thpt_per_slice_bps);
    case Field::max_ul_thpt_per_slice_bps: return wrap(r.max_ul_thpt_per_slice_bps);
    case Field::dl_delay_budget_ms: return wrap(r.dl_delay_budget_ms);
    case Field::ul_delay_budget_ms: return wrap(r.ul_delay_budget_ms);
    case Field::packet_error_rate: return wrap(r.packet_error_rate);
    case Field::availability_pct: return wrap(r.availability_pct);
    case Field::reliability_pct: return wrap(r.reliability_pct);
  }
  return std::nullopt;
}

void set_field(SliceRequirements& r, Field field, std::optional<FieldValue> value) {
  auto as_int = [&]() -> std::optional<std::int64_t> {
    if (!value) return std::nullopt;
    if (auto* i = std::get_if<std::int64_t>(&*value)) return *i;
    throw Error(Errc::schema_violation, std::string(snake_name(field)) + " expects an integer");
  };
  auto as_num = [&]() -> std::optional<double> {
    if (!value) return std::nullopt;
    if (auto* d = std::get_if<double>(&*value)) return *d;
    if (auto* i = std::get_if<std::int64_t>(&*value)) return static_cast<double>(*i);
    throw Error(Errc::schema_violation, std::string(snake_name(field)) + " expects a number");
  };
  switch (field) {
    case Field::area_of_service:
      if (!value) {
        r.area_of_service.reset();
      } else if (auto* s = std::get_if<std::string>(&*value)) {
        r.area_of_service = *s;
      } else {
        throw Error(Errc::schema_violation, "area_of_service expects a string");
      }
      return;
    case Field::duration_s: r.duration_s = as_int(); return;
    case Field::device_count: r.device_count = as_int(); return;
    case Field::max_dl_thpt_per_device_bps: r.max_dl_thpt_per_device_bps = as_int(); return;
    case Field::max_ul_thpt_per_device_bps: r.max_ul_thpt_per_device_bps = as_int(); return;
    case Field::max_dl_thpt_per_slice_bps: r.max_dl_thpt_per_slice_bps = as_int(); return;
    case Field::max_ul_thpt_per_slice_bps: r.max_ul_thpt_per_slice_bps = as_int(); return;
    case Field::dl_delay_budget_ms: r.dl_delay_budget_ms = as_num(); return;
    case Field::ul_delay_budget_ms: r.ul_delay_budget_ms = as_num(); return;
    case Field::packet_error_rate: r.packet_error_rate = as_num(); return;
    case Field::availability_pct: r.availability_pct = as_num(); return;
    case Field::reliability_pct: r.reliability_pct = as_num(); return;
  }
}

std::string_view to_string(SessionStatus status) noexcept {
  return status == SessionStatus::active ? "ACTIVE" : "RELEASED";
}

std::optional<std::string> check_slice_id(const SliceId& id) {
  if (id.sd.size() != 6 ||
      !std::all_of(id.sd.begin(), id.sd.end(),
                   [](char c) { return (c >= '0' && c <= '9') || (c >= 'A' && c <= 'F'); })) {
    return "sd must be 6 uppercase hex characters";
  }
  if (id.plmn_mcc.size() != 3 || !all_digits(id.plmn_mcc)) return "mcc must be 3 decimal digits";
  if (id.plmn_mnc.size() < 2 || id.plmn_mnc.size() > 3 || !all_digits(id.plmn_mnc)) {
    return "mnc must be 2 or 3 decimal digits";
  }
  return std::nullopt;
}

std::optional<std::string> check_quota(const PrbQuota& q) {
  if (q.dedicated_pct < 1) return "dedicated_pct must be >= 1";
  if (q.max_pct > 100) return "max_pct must be <= 100";
  if (q.min_pct < 0) return "min_pct must be >= 0";
  if (q.min_pct > q.dedicated_pct || q.dedicated_pct > q.max_pct) {
    return "quota must satisfy min <= dedicated <= max";
  }
  return check_slice_id(q.slice);
}

std::string_view to_string(IntentState state) noexcept {
  switch (state) {
    case IntentState::created: return "CREATED";
    case IntentState::activated: return "ACTIVATED";
    case IntentState::monitoring: return "MONITORING";
    case IntentState::modified: return "MODIFIED";
    case IntentState::suspended: return "SUSPENDED";
    case IntentState::terminated: return "TERMINATED";
  }
  return "CREATED";
}

std::optional<IntentState> parse_intent_state(std::string_view text) noexcept {
  for (auto s : kIntentStates) {
    if (iequals(text, to_string(s))) return s;
  }
  return std::nullopt;
}

std::string_view to_string(LifecycleEvent event) noexcept {
  switch (event) {
    case LifecycleEvent::activate: return "activate";
    case LifecycleEvent::monitor: return "monitor";
    case LifecycleEvent::modify: return "modify";
    case LifecycleEvent::suspend: return "suspend";
    case LifecycleEvent::resume: return "resume";
    case LifecycleEvent::terminate: return "terminate";
  }
  return "activate";
}

std::optional<LifecycleEvent> parse_lifecycle_event(std::string_view text) noexcept {
  for (auto e : kLifecycleEvents) {
    if (iequals(text, to_string(e))) return e;
  }
  return std::nullopt;
}

std::string_view to_string(Stage stage) noexcept {
  switch (stage) {
    case Stage::smo_intent_to_policy: return "smo_intent_to_policy";
    case Stage::smo_mcp_tool_execution: return "smo_mcp_tool_execution";
    case Stage::a1_mediator: return "a1_mediator";
    case Stage::xapp_full_policy_processing: return "xapp_full_policy_processing";
    case Stage::xapp_policy_to_control: return "xapp_policy_to_control";
    case Stage::e2_node_control_processing: return "e2_node_control_processing";
  }
  return "";
}

std::optional<Stage> parse_stage(std::string_view text) noexcept {
  for (auto s : kStages) {
    if (text == to_string(s)) return s;
  }
  return std::nullopt;
}

void StageTimings::set(Stage stage, double ms) {
  if (!(ms >= 0.0)) {
    throw Error(Errc::invalid_argument,
                "stage " + std::string(to_string(stage)) + " duration must be non-negative");
  }
  values_[stage] = ms;
}

std::optional<double> StageTimings::get(Stage stage) const {
  auto it = values_.find(stage);
  if (it == values_.end()) return std::nullopt;
  return it->second;
}

void StageTimings::merge(const StageTimings& other) {
  for (const auto& [stage, ms] : other.values_) values_[stage] = ms;
}

}  // namespace orion::model
