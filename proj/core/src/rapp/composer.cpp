#include "orion/rapp/composer.hpp"

#include <cstdio>
#include <limits>

#include "orion/error.hpp"
#include "orion/model/json.hpp"
#include "util/json_read.hpp"

namespace orion::rapp {

using nlohmann::json;
using namespace jsonio;

void to_json(json& j, const ClassifiedIntent& ci) {
  j = json{{"requirements", ci.requirements}, {"sliceType", ci.slice_type}, {"sessionId", ci.session_id}};
}

void from_json(const json& j, ClassifiedIntent& ci) {
  require_object(j, "classified intent");
  reject_unknown(j, {"requirements", "sliceType", "sessionId"}, "classified intent");
  ci.requirements = model::parse_as<model::SliceRequirements>(require(j, "requirements"));
  model::from_json(require(j, "sliceType"), ci.slice_type);
  ci.session_id = opt_string(j, "sessionId").value_or("");
}

namespace {

std::int64_t aggregate(const std::optional<std::int64_t>& per_slice, const std::optional<std::int64_t>& per_device,
                       const std::optional<std::int64_t>& count, const char* key) {
  if (per_slice) return *per_slice;
  if (per_device && count) {
    if (*per_device > std::numeric_limits<std::int64_t>::max() / *count) {
      throw Error(Errc::invalid_intent, std::string(key) + " aggregate overflows");
    }
    return *per_device * *count;
  }
  return per_device.value_or(0);
}

}  // namespace

model::SliceSlaObjectives derive_objectives(const model::SliceRequirements& req, std::vector<std::string>* notes) {
  if (!req.max_dl_thpt_per_device_bps && !req.max_ul_thpt_per_device_bps && !req.max_dl_thpt_per_slice_bps &&
      !req.max_ul_thpt_per_slice_bps) {
    throw Error(Errc::missing_throughput, "no per-slice or per-device throughput stated");
  }
  model::SliceSlaObjectives obj;
  obj.max_dl_thpt_per_ue_bps = req.max_dl_thpt_per_device_bps.value_or(0);
  obj.max_ul_thpt_per_ue_bps = req.max_ul_thpt_per_device_bps.value_or(0);
  obj.max_dl_thpt_per_slice_bps = aggregate(req.max_dl_thpt_per_slice_bps, req.max_dl_thpt_per_device_bps,
                                            req.device_count, "maxDlThptPerSlice");
  obj.max_ul_thpt_per_slice_bps = aggregate(req.max_ul_thpt_per_slice_bps, req.max_ul_thpt_per_device_bps,
                                            req.device_count, "maxUlThptPerSlice");
  obj.dl_delay_budget_ms = req.dl_delay_budget_ms;
  obj.ul_delay_budget_ms = req.ul_delay_budget_ms;
  obj.packet_error_rate = req.packet_error_rate;
  if (notes) {
    if (!req.max_dl_thpt_per_device_bps) notes->push_back("maxDlThptPerUe unstated, set to 0");
    if (!req.max_ul_thpt_per_device_bps) notes->push_back("maxUlThptPerUe unstated, set to 0");
    if (obj.max_dl_thpt_per_slice_bps == 0) notes->push_back("maxDlThptPerSlice unstated, set to 0");
    if (obj.max_ul_thpt_per_slice_bps == 0) notes->push_back("maxUlThptPerSlice unstated, set to 0");
  }
  return obj;
}

Composer::Composer(ComposerConfig config) : config_(std::move(config)), rng_(config_.id_seed) {
  model::SliceId probe;
  probe.plmn_mcc = config_.plmn_mcc;
  probe.plmn_mnc = config_.plmn_mnc;
  probe.sd = config_.fixed_sd.value_or("000000");
  if (auto err = check_slice_id(probe)) throw Error(Errc::invalid_config, *err);
}

std::string Composer::next_policy_id() {
  if (config_.fixed_policy_id) return *config_.fixed_policy_id;
  if (used_ids_.size() >= 100000) throw Error(Errc::conflict, "policy id space exhausted");
  std::uniform_int_distribution<int> dist(0, 99999);
  for (;;) {
    char buf[8];
    std::snprintf(buf, sizeof buf, "%05d", dist(rng_));
    if (used_ids_.insert(buf).second) return buf;
  }
}

std::string Composer::next_sd() {
  if (config_.fixed_sd) return *config_.fixed_sd;
  std::uniform_int_distribution<unsigned> dist(0, 0xFFFFFF);
  char buf[8];
  std::snprintf(buf, sizeof buf, "%06X", dist(rng_));
  return buf;
}

model::A1Policy Composer::generate_policy(const ClassifiedIntent& ci, std::vector<std::string>* notes) {
  auto violations = model::validate_requirements(ci.requirements);
  if (!violations.empty()) throw Error(Errc::invalid_intent, violations.front().message());

  model::A1Policy policy;
  policy.objectives = derive_objectives(ci.requirements, notes);
  policy.ric_id = config_.ric_id;
  policy.service_id = kServiceId;
  policy.policytype_id = model::kSliceSlaPolicyType;
  policy.slice_type = ci.slice_type;
  policy.slice.sst = model::sst_for(ci.slice_type, config_.sst_profile);
  policy.slice.plmn_mcc = config_.plmn_mcc;
  policy.slice.plmn_mnc = config_.plmn_mnc;
  policy.slice.nci = config_.nci;
  std::lock_guard lock(mu_);
  policy.policy_id = next_policy_id();
  policy.slice.sd = next_sd();
  return policy;
}

}  // namespace orion::rapp
