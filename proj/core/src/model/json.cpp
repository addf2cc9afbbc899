#include "orion/model/json.hpp"

#include <cmath>
#include <initializer_list>
#include <limits>

#include "orion/error.hpp"
#include "util/json_read.hpp"

namespace orion::model {

using namespace jsonio;

json field_value_to_json(const std::optional<FieldValue>& value) {
  if (!value) return nullptr;
  return std::visit([](const auto& x) { return json(x); }, *value);
}

void to_json(json& j, const SliceRequirements& req) {
  j = json::object();
  for (auto f : kAllFields) j[std::string(json_key(f))] = field_value_to_json(get_field(req, f));
}

void from_json(const json& j, SliceRequirements& req) {
  require_object(j, "requirements");
  req = {};
  for (const auto& [k, v] : j.items()) {
    auto field = field_from_json_key(k);
    if (!field) bad("unknown key '" + k + "' in requirements");
    if (v.is_null()) continue;
    switch (kind_of(*field)) {
      case FieldKind::text: set_field(req, *field, FieldValue{as_string(v, k)}); break;
      case FieldKind::integer: set_field(req, *field, FieldValue{as_int(v, k)}); break;
      case FieldKind::number: set_field(req, *field, FieldValue{as_number(v, k)}); break;
    }
  }
}

void to_json(json& j, const SessionBooking& b) {
  j = json{{"sessionId", b.session_id},
           {"requirements", b.requirements},
           {"createdAt", b.created_at_ms},
           {"status", to_string(b.status)}};
}

void from_json(const json& j, SessionBooking& b) {
  require_object(j, "session");
  reject_unknown(j, {"sessionId", "requirements", "createdAt", "status"}, "session");
  b.session_id = as_string(require(j, "sessionId"), "sessionId");
  from_json(require(j, "requirements"), b.requirements);
  b.created_at_ms = as_int(require(j, "createdAt"), "createdAt");
  auto status = as_string(require(j, "status"), "status");
  if (status == "ACTIVE") {
    b.status = SessionStatus::active;
  } else if (status == "RELEASED") {
    b.status = SessionStatus::released;
  } else {
    bad("unknown session status '" + status + "'");
  }
}

void to_json(json& j, const SliceId& id) {
  j = json{{"sst", id.sst},
           {"sd", id.sd},
           {"plmnId", {{"mcc", id.plmn_mcc}, {"mnc", id.plmn_mnc}}},
           {"nci", id.nci}};
}

void from_json(const json& j, SliceId& id) {
  require_object(j, "sliceId");
  reject_unknown(j, {"sst", "sd", "plmnId", "nci"}, "sliceId");
  id.sst = int_in<std::uint8_t>(require(j, "sst"), "sst", 0, 255);
  id.sd = as_string(require(j, "sd"), "sd");
  const auto& plmn = require(j, "plmnId");
  require_object(plmn, "plmnId");
  reject_unknown(plmn, {"mcc", "mnc"}, "plmnId");
  id.plmn_mcc = as_string(require(plmn, "mcc"), "mcc");
  id.plmn_mnc = as_string(require(plmn, "mnc"), "mnc");
  id.nci = int_in<std::uint32_t>(require(j, "nci"), "nci", 0, std::numeric_limits<std::uint32_t>::max());
  if (auto err = check_slice_id(id)) bad(*err);
}

void to_json(json& j, const SliceSlaObjectives& o) {
  j = json{{"maxDlThptPerUe", o.max_dl_thpt_per_ue_bps},
           {"maxUlThptPerUe", o.max_ul_thpt_per_ue_bps},
           {"maxDlThptPerSlice", o.max_dl_thpt_per_slice_bps},
           {"maxUlThptPerSlice", o.max_ul_thpt_per_slice_bps}};
  if (o.dl_delay_budget_ms) j["downStreamDelayBudget"] = *o.dl_delay_budget_ms;
  if (o.ul_delay_budget_ms) j["upStreamDelayBudget"] = *o.ul_delay_budget_ms;
  if (o.packet_error_rate) j["packetErrorRate"] = *o.packet_error_rate;
}

void from_json(const json& j, SliceSlaObjectives& o) {
  require_object(j, "sliceSlaObjectives");
  reject_unknown(j,
                 {"maxDlThptPerUe", "maxUlThptPerUe", "maxDlThptPerSlice", "maxUlThptPerSlice",
                  "downStreamDelayBudget", "upStreamDelayBudget", "packetErrorRate"},
                 "sliceSlaObjectives");
  auto non_negative = [&](const char* key) {
    auto v = as_int(require(j, key), key);
    if (v < 0) bad(std::string(key) + " must be non-negative");
    return v;
  };
  o.max_dl_thpt_per_ue_bps = non_negative("maxDlThptPerUe");
  o.max_ul_thpt_per_ue_bps = non_negative("maxUlThptPerUe");
  o.max_dl_thpt_per_slice_bps = non_negative("maxDlThptPerSlice");
  o.max_ul_thpt_per_slice_bps = non_negative("maxUlThptPerSlice");
  auto opt = [&](const char* key) -> std::optional<double> {
    auto it = j.find(key);
    if (it == j.end() || it->is_null()) return std::nullopt;
    return as_number(*it, key);
  };
  o.dl_delay_budget_ms = opt("downStreamDelayBudget");
  o.ul_delay_budget_ms = opt("upStreamDelayBudget");
  o.packet_error_rate = opt("packetErrorRate");
}

void to_json(json& j, const A1Policy& p) {
  j = json{{"ric_id", p.ric_id},
           {"policy_id", p.policy_id},
           {"service_id", p.service_id},
           {"policy_data",
            {{"scope", {{"sliceId", p.slice}, {"sliceType", to_string(p.slice_type)}}},
             {"sliceSlaObjectives", p.objectives}}},
           {"policytype_id", p.policytype_id}};
}

void from_json(const json& j, A1Policy& p) {
  require_object(j, "policy");
  reject_unknown(j, {"ric_id", "policy_id", "service_id", "policy_data", "policytype_id"}, "policy");
  p.ric_id = as_string(require(j, "ric_id"), "ric_id");
  p.policy_id = as_string(require(j, "policy_id"), "policy_id");
  if (p.policy_id.empty()) bad("policy_id must be non-empty");
  p.service_id = as_string(require(j, "service_id"), "service_id");
  p.policytype_id = int_in<int>(require(j, "policytype_id"), "policytype_id", 0,
                                std::numeric_limits<int>::max());
  const auto& data = require(j, "policy_data");
  require_object(data, "policy_data");
  reject_unknown(data, {"scope", "sliceSlaObjectives"}, "policy_data");
  const auto& scope = require(data, "scope");
  require_object(scope, "scope");
  reject_unknown(scope, {"sliceId", "sliceType"}, "scope");
  from_json(require(scope, "sliceId"), p.slice);
  from_json(require(scope, "sliceType"), p.slice_type);
  from_json(require(data, "sliceSlaObjectives"), p.objectives);
}

void to_json(json& j, const CellConfig& c) {
  j = json{{"nodeId", c.node_id},
           {"nci", c.nci},
           {"bandwidthHz", c.bandwidth_hz},
           {"numerology", c.numerology_mu},
           {"mimoLayers", c.mimo_layers},
           {"modulationBits", c.modulation_bits},
           {"nPrb", c.n_prb},
           {"overheadFraction", c.overhead_fraction()}};
}

void from_json(const json& j, CellConfig& c) {
  require_object(j, "cellConfig");
  reject_unknown(j,
                 {"nodeId", "nci", "bandwidthHz", "numerology", "mimoLayers", "modulationBits",
                  "nPrb", "overheadFraction"},
                 "cellConfig");
  c.node_id = as_string(require(j, "nodeId"), "nodeId");
  c.nci = int_in<std::uint32_t>(require(j, "nci"), "nci", 0, std::numeric_limits<std::uint32_t>::max());
  c.bandwidth_hz = as_int(require(j, "bandwidthHz"), "bandwidthHz");
  c.numerology_mu = int_in<int>(require(j, "numerology"), "numerology", 0, 255);
  c.mimo_layers = int_in<int>(require(j, "mimoLayers"), "mimoLayers", 0, 255);
  c.modulation_bits = int_in<int>(require(j, "modulationBits"), "modulationBits", 0, 255);
  c.n_prb = int_in<int>(require(j, "nPrb"), "nPrb", 0, 65535);
  double overhead = as_number(require(j, "overheadFraction"), "overheadFraction");
  if (!(overhead >= 0.0 && overhead <= 1.0)) bad("overheadFraction out of range");
  c.overhead_ppm = static_cast<std::uint32_t>(std::llround(overhead * 1e6));
}

void to_json(json& j, const PrbQuota& q) {
  j = json{{"sliceId", q.slice},
           {"nodeId", q.node_id},
           {"dedicatedPct", q.dedicated_pct},
           {"minPct", q.min_pct},
           {"maxPct", q.max_pct}};
}

void from_json(const json& j, PrbQuota& q) {
  require_object(j, "quota");
  reject_unknown(j, {"sliceId", "nodeId", "dedicatedPct", "minPct", "maxPct"}, "quota");
  from_json(require(j, "sliceId"), q.slice);
  q.node_id = as_string(require(j, "nodeId"), "nodeId");
  q.dedicated_pct = int_in<int>(require(j, "dedicatedPct"), "dedicatedPct", 0, 100);
  q.min_pct = int_in<int>(require(j, "minPct"), "minPct", 0, 100);
  q.max_pct = int_in<int>(require(j, "maxPct"), "maxPct", 0, 100);
  if (auto err = check_quota(q)) bad(*err);
}

void to_json(json& j, const StageTimings& t) {
  j = json::object();
  for (const auto& [stage, ms] : t.values()) j[std::string(to_string(stage))] = ms;
}

void from_json(const json& j, StageTimings& t) {
  require_object(j, "timings");
  t = {};
  for (const auto& [k, v] : j.items()) {
    auto stage = parse_stage(k);
    if (!stage) bad("unknown stage '" + k + "'");
    double ms = as_number(v, k);
    if (!(ms >= 0.0)) bad("stage " + k + " must be non-negative");
    t.set(*stage, ms);
  }
}

void to_json(json& j, const IntentRecord& r) {
  j = json{{"intentId", r.intent_id},
           {"conversationId", r.conversation_id},
           {"text", r.text},
           {"state", r.state},
           {"sessionId", r.session_id ? json(*r.session_id) : json(nullptr)},
           {"policyId", r.policy_id ? json(*r.policy_id) : json(nullptr)},
           {"quota", r.quota ? json(*r.quota) : json(nullptr)},
           {"timings", r.timings}};
}

void from_json(const json& j, IntentRecord& r) {
  require_object(j, "intent");
  reject_unknown(j, {"intentId", "conversationId", "text", "state", "sessionId", "policyId", "quota", "timings"},
                 "intent");
  r.intent_id = as_string(require(j, "intentId"), "intentId");
  r.conversation_id = as_string(require(j, "conversationId"), "conversationId");
  r.text = as_string(require(j, "text"), "text");
  from_json(require(j, "state"), r.state);
  auto opt_string = [&](const char* key) -> std::optional<std::string> {
    auto it = j.find(key);
    if (it == j.end() || it->is_null()) return std::nullopt;
    return as_string(*it, key);
  };
  r.session_id = opt_string("sessionId");
  r.policy_id = opt_string("policyId");
  if (auto it = j.find("quota"); it != j.end() && !it->is_null()) {
    r.quota = parse_as<PrbQuota>(*it);
  } else {
    r.quota.reset();
  }
  from_json(require(j, "timings"), r.timings);
}

void to_json(json& j, SliceType type) { j = to_string(type); }

void from_json(const json& j, SliceType& type) {
  auto parsed = parse_slice_type(as_string(j, "sliceType"));
  if (!parsed) bad("unknown slice type '" + j.get<std::string>() + "'");
  type = *parsed;
}

void to_json(json& j, IntentState state) { j = to_string(state); }

void from_json(const json& j, IntentState& state) {
  auto parsed = parse_intent_state(as_string(j, "state"));
  if (!parsed) bad("unknown intent state '" + j.get<std::string>() + "'");
  state = *parsed;
}

}  // namespace orion::model
