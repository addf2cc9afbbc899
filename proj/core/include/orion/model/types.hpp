#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace orion::model {

enum class SliceType : std::uint8_t { embb, urllc, mmtc };

inline constexpr std::array kSliceTypes = {SliceType::embb, SliceType::urllc, SliceType::mmtc};

std::string_view to_string(SliceType type) noexcept;
std::optional<SliceType> parse_slice_type(std::string_view text) noexcept;

// Structured slice intent. Every field is null unless the operator stated it.
// Throughputs are bits/second, delays milliseconds.
struct SliceRequirements {
  std::optional<std::string> area_of_service;
  std::optional<std::int64_t> duration_s;
  std::optional<std::int64_t> device_count;
  std::optional<std::int64_t> max_dl_thpt_per_device_bps;
  std::optional<std::int64_t> max_ul_thpt_per_device_bps;
  std::optional<std::int64_t> max_dl_thpt_per_slice_bps;
  std::optional<std::int64_t> max_ul_thpt_per_slice_bps;
  std::optional<double> dl_delay_budget_ms;
  std::optional<double> ul_delay_budget_ms;
  std::optional<double> packet_error_rate;
  std::optional<double> availability_pct;
  std::optional<double> reliability_pct;

  bool operator==(const SliceRequirements&) const = default;
};

// Field-level reflection over SliceRequirements, used by the tool schema,
// the translator and the rule checker.
enum class Field : std::uint8_t {
  area_of_service,
  duration_s,
  device_count,
  max_dl_thpt_per_device_bps,
  max_ul_thpt_per_device_bps,
  max_dl_thpt_per_slice_bps,
  max_ul_thpt_per_slice_bps,
  dl_delay_budget_ms,
  ul_delay_budget_ms,
  packet_error_rate,
  availability_pct,
  reliability_pct,
};

inline constexpr std::array kAllFields = {
    Field::area_of_service,           Field::duration_s,
    Field::device_count,              Field::max_dl_thpt_per_device_bps,
    Field::max_ul_thpt_per_device_bps, Field::max_dl_thpt_per_slice_bps,
    Field::max_ul_thpt_per_slice_bps, Field::dl_delay_budget_ms,
    Field::ul_delay_budget_ms,        Field::packet_error_rate,
    Field::availability_pct,          Field::reliability_pct,
};

enum class FieldKind : std::uint8_t { text, integer, number };

using FieldValue = std::variant<std::string, std::int64_t, double>;

std::string_view json_key(Field field) noexcept;
std::string_view snake_name(Field field) noexcept;
std::optional<Field> field_from_json_key(std::string_view key) noexcept;
FieldKind kind_of(Field field) noexcept;

// Uplink fields paired with their downlink counterpart; nullopt for
// direction-less fields.
std::optional<Field> downlink_counterpart(Field field) noexcept;
bool is_uplink(Field field) noexcept;

std::optional<FieldValue> get_field(const SliceRequirements& req, Field field);
void set_field(SliceRequirements& req, Field field, std::optional<FieldValue> value);

enum class SessionStatus : std::uint8_t { active, released };

std::string_view to_string(SessionStatus status) noexcept;

struct SessionBooking {
  std::string session_id;
  SliceRequirements requirements;
  std::int64_t created_at_ms = 0;
  SessionStatus status = SessionStatus::active;

  bool operator==(const SessionBooking&) const = default;
};

struct SliceId {
  std::uint8_t sst = 1;
  std::string sd = "000000";
  std::string plmn_mcc = "001";
  std::string plmn_mnc = "01";
  std::uint32_t nci = 0;

  bool operator==(const SliceId&) const = default;
  auto operator<=>(const SliceId&) const = default;
};

// Returns a description of the first broken invariant, or nullopt.
std::optional<std::string> check_slice_id(const SliceId& id);

struct SliceSlaObjectives {
  std::int64_t max_dl_thpt_per_ue_bps = 0;
  std::int64_t max_ul_thpt_per_ue_bps = 0;
  std::int64_t max_dl_thpt_per_slice_bps = 0;
  std::int64_t max_ul_thpt_per_slice_bps = 0;
  std::optional<double> dl_delay_budget_ms;
  std::optional<double> ul_delay_budget_ms;
  std::optional<double> packet_error_rate;

  bool operator==(const SliceSlaObjectives&) const = default;
};

inline constexpr int kSliceSlaPolicyType = 10002;

struct A1Policy {
  std::string ric_id;
  std::string policy_id;
  std::string service_id;
  int policytype_id = kSliceSlaPolicyType;
  SliceId slice;
  SliceType slice_type = SliceType::embb;
  SliceSlaObjectives objectives;

  bool operator==(const A1Policy&) const = default;
};

// Radio configuration of a single-cell E2 node. The overhead fraction is held
// in parts-per-million so capacity arithmetic stays exact.
struct CellConfig {
  std::string node_id;
  std::uint32_t nci = 0;
  std::int64_t bandwidth_hz = 0;
  int numerology_mu = 0;
  int mimo_layers = 1;
  int modulation_bits = 2;
  int n_prb = 0;
  std::uint32_t overhead_ppm = 0;

  double overhead_fraction() const noexcept { return overhead_ppm / 1e6; }
  bool operator==(const CellConfig&) const = default;
};

struct PrbQuota {
  SliceId slice;
  std::string node_id;
  int dedicated_pct = 1;
  int min_pct = 0;
  int max_pct = 100;

  bool operator==(const PrbQuota&) const = default;
};

std::optional<std::string> check_quota(const PrbQuota& quota);

enum class IntentState : std::uint8_t { created, activated, monitoring, modified, suspended, terminated };

inline constexpr std::array kIntentStates = {
    IntentState::created,  IntentState::activated, IntentState::monitoring,
    IntentState::modified, IntentState::suspended, IntentState::terminated,
};

std::string_view to_string(IntentState state) noexcept;
std::optional<IntentState> parse_intent_state(std::string_view text) noexcept;

enum class LifecycleEvent : std::uint8_t { activate, monitor, modify, suspend, resume, terminate };

inline constexpr std::array kLifecycleEvents = {
    LifecycleEvent::activate, LifecycleEvent::monitor, LifecycleEvent::modify,
    LifecycleEvent::suspend,  LifecycleEvent::resume,  LifecycleEvent::terminate,
};

std::string_view to_string(LifecycleEvent event) noexcept;
std::optional<LifecycleEvent> parse_lifecycle_event(std::string_view text) noexcept;

enum class Stage : std::uint8_t {
  smo_intent_to_policy,
  smo_mcp_tool_execution,
  a1_mediator,
  xapp_full_policy_processing,
  xapp_policy_to_control,
  e2_node_control_processing,
};

inline constexpr std::array kStages = {
    Stage::smo_intent_to_policy,        Stage::smo_mcp_tool_execution,
    Stage::a1_mediator,                 Stage::xapp_full_policy_processing,
    Stage::xapp_policy_to_control,      Stage::e2_node_control_processing,
};

std::string_view to_string(Stage stage) noexcept;
std::optional<Stage> parse_stage(std::string_view text) noexcept;

// Per-stage durations in milliseconds; keys restricted to the fixed stage set.
class StageTimings {
 public:
  void set(Stage stage, double ms);
  std::optional<double> get(Stage stage) const;
  void merge(const StageTimings& other);
  bool complete() const noexcept { return values_.size() == kStages.size(); }
  const std::map<Stage, double>& values() const noexcept { return values_; }
  bool operator==(const StageTimings&) const = default;

 private:
  std::map<Stage, double> values_;
};

struct IntentRecord {
  std::string intent_id;
  std::string conversation_id;
  std::string text;
  IntentState state = IntentState::created;
  std::optional<std::string> session_id;
  std::optional<std::string> policy_id;
  std::optional<PrbQuota> quota;
  StageTimings timings;

  bool operator==(const IntentRecord&) const = default;
};

}  // namespace orion::model
