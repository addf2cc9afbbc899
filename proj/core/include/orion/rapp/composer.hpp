#pragma once

#include <cstdint>
#include <mutex>
#include <nlohmann/json.hpp>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "orion/model/rules.hpp"
#include "orion/model/types.hpp"

namespace orion::rapp {

struct ClassifiedIntent {
  model::SliceRequirements requirements;
  model::SliceType slice_type = model::SliceType::embb;
  std::string session_id;

  bool operator==(const ClassifiedIntent&) const = default;
};

void to_json(nlohmann::json& j, const ClassifiedIntent& ci);
void from_json(const nlohmann::json& j, ClassifiedIntent& ci);

inline constexpr const char* kServiceId = "intentSlice";

struct ComposerConfig {
  std::string ric_id = "ric4";
  std::string plmn_mcc = "724";
  std::string plmn_mnc = "11";
  std::uint32_t nci = 1;
  model::SstProfile sst_profile = model::SstProfile::standard;
  std::uint64_t id_seed = 1;
  // Pin the generated ids, e.g. for golden comparisons.
  std::optional<std::string> fixed_policy_id;
  std::optional<std::string> fixed_sd;
};

// SLA objectives from stated requirements. Per-UE values are the per-device
// ones (0 when unstated). Per-slice values are the stated per-slice value,
// else per-device x device_count, else the per-device value. Unstated inputs
// that became 0 are appended to `notes`. Throws Error(missing_throughput) when
// no throughput is stated at all and Error(invalid_intent) on overflow.
model::SliceSlaObjectives derive_objectives(const model::SliceRequirements& req,
                                            std::vector<std::string>* notes = nullptr);

// Non-RT RIC policy composer. Thread-safe; ids come from one seeded source.
class Composer {
 public:
  explicit Composer(ComposerConfig config = {});

  // Throws Error(invalid_intent | missing_throughput).
  model::A1Policy generate_policy(const ClassifiedIntent& ci, std::vector<std::string>* notes = nullptr);

  const ComposerConfig& config() const noexcept { return config_; }

 private:
  std::string next_policy_id();
  std::string next_sd();

  ComposerConfig config_;
  std::mutex mu_;
  std::mt19937_64 rng_;
  std::set<std::string> used_ids_;
};

}  // namespace orion::rapp
