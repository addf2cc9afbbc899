#pragma once

#include <atomic>
#include <cstddef>
#include <filesystem>
#include <functional>
#include <map>
#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "orion/eval/dataset.hpp"
#include "orion/eval/rules.hpp"
#include "orion/gateway/replay_translator.hpp"
#include "orion/gateway/service.hpp"

namespace orion::eval {

struct EntryResult {
  std::string id;
  model::SliceType expected = model::SliceType::embb;
  std::optional<model::SliceType> predicted;
  bool policy_created = false;
  bool enforced = false;
  std::optional<std::string> policy_id;
  std::optional<std::string> policy_state;
  std::optional<std::string> failure;  // typed cause, set for every failed entry
  std::string detail;
  std::vector<RuleViolation> violations;
  model::StageTimings timings;
  gateway::TranscriptEntry observed;

  bool success() const noexcept { return policy_created; }
  bool correct() const noexcept { return predicted && *predicted == expected; }
};

struct StageStat {
  std::size_t n = 0;
  double mean = 0.0;
  double stddev = 0.0;  // sample standard deviation; 0 when n < 2
};

struct RunReport {
  std::string adapter;
  std::size_t planned = 0;
  bool truncated = false;
  std::vector<EntryResult> entries;
  nlohmann::json usage;

  std::size_t successes() const noexcept;
  std::size_t failures() const noexcept { return entries.size() - successes(); }
  std::size_t enforced() const noexcept;
  std::size_t predictions() const noexcept;
  std::size_t correct_predictions() const noexcept;
  // Rates over processed entries; accuracy over entries with a prediction.
  double success_rate() const noexcept;
  double classification_accuracy() const noexcept;
  double prediction_rate() const noexcept;
  std::map<model::Stage, StageStat> stage_stats() const;
};

// Timing values live only under "timings" (per entry) and "stages".
void to_json(nlohmann::json& j, const EntryResult& r);
void to_json(nlohmann::json& j, const RunReport& r);

struct RunOptions {
  // Terminate each intent after scoring, releasing its booking and policy.
  bool release_between = true;
  const std::atomic<bool>* stop = nullptr;  // checked between entries
  std::function<void(std::size_t index, const EntryResult&)> progress;
};

// Drives every entry through the gateway sequentially. Throws
// Error(services_unavailable) when the gateway cannot be reached up front.
RunReport run_suite(const std::vector<DatasetEntry>& dataset, const gateway::GatewayClient& client,
                    const std::string& adapter, const RunOptions& options = {});

// Writes report.json, entries.csv and summary.txt into `dir`, creating it.
// Throws Error(io_error).
void emit_report(const RunReport& report, const std::filesystem::path& dir);

std::string entries_csv(const RunReport& report);
std::string summary_table(const RunReport& report);

}  // namespace orion::eval
