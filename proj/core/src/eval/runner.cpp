#include "orion/eval/runner.hpp"

#include <spdlog/spdlog.h>

#include <cmath>

#include "orion/error.hpp"
#include "orion/model/json.hpp"

namespace orion::eval {

using nlohmann::json;

std::size_t RunReport::successes() const noexcept {
  std::size_t n = 0;
  for (const auto& e : entries) n += e.success() ? 1 : 0;
  return n;
}

std::size_t RunReport::enforced() const noexcept {
  std::size_t n = 0;
  for (const auto& e : entries) n += e.enforced ? 1 : 0;
  return n;
}

std::size_t RunReport::predictions() const noexcept {
  std::size_t n = 0;
  for (const auto& e : entries) n += e.predicted ? 1 : 0;
  return n;
}

std::size_t RunReport::correct_predictions() const noexcept {
  std::size_t n = 0;
  for (const auto& e : entries) n += e.correct() ? 1 : 0;
  return n;
}

double RunReport::success_rate() const noexcept {
  return entries.empty() ? 0.0 : static_cast<double>(successes()) / static_cast<double>(entries.size());
}

double RunReport::classification_accuracy() const noexcept {
  auto p = predictions();
  return p == 0 ? 0.0 : static_cast<double>(correct_predictions()) / static_cast<double>(p);
}

double RunReport::prediction_rate() const noexcept {
  return entries.empty() ? 0.0 : static_cast<double>(predictions()) / static_cast<double>(entries.size());
}

std::map<model::Stage, StageStat> RunReport::stage_stats() const {
  std::map<model::Stage, StageStat> out;
  for (auto stage : model::kStages) {
    std::vector<double> xs;
    for (const auto& e : entries) {
      if (auto v = e.timings.get(stage)) xs.push_back(*v);
    }
    StageStat s;
    s.n = xs.size();
    if (!xs.empty()) {
      double sum = 0.0;
      for (double x : xs) sum += x;
      s.mean = sum / static_cast<double>(xs.size());
      if (xs.size() > 1) {
        double sq = 0.0;
        for (double x : xs) sq += (x - s.mean) * (x - s.mean);
        s.stddev = std::sqrt(sq / static_cast<double>(xs.size() - 1));
      }
    }
    out[stage] = s;
  }
  return out;
}

void to_json(json& j, const EntryResult& r) {
  j = json{{"id", r.id},
           {"expected", r.expected},
           {"predicted", r.predicted ? json(*r.predicted) : json(nullptr)},
           {"correct", r.correct()},
           {"policy_created", r.policy_created},
           {"enforced", r.enforced},
           {"policy_id", r.policy_id ? json(*r.policy_id) : json(nullptr)},
           {"policy_state", r.policy_state ? json(*r.policy_state) : json(nullptr)},
           {"failure", r.failure ? json(*r.failure) : json(nullptr)},
           {"detail", r.detail},
           {"violations", r.violations},
           {"timings", r.timings}};
}

void to_json(json& j, const RunReport& r) {
  auto stages = json::object();
  for (const auto& [stage, s] : r.stage_stats()) {
    stages[std::string(model::to_string(stage))] = {{"n", s.n}, {"mean_ms", s.mean}, {"stddev_ms", s.stddev}};
  }
  std::map<std::string, std::size_t> by_rule;
  for (const auto& e : r.entries) {
    for (const auto& v : e.violations) ++by_rule[std::string(to_string(v.rule))];
  }
  j = json{{"adapter", r.adapter},
           {"planned", r.planned},
           {"processed", r.entries.size()},
           {"truncated", r.truncated},
           {"successes", r.successes()},
           {"failures", r.failures()},
           {"enforced", r.enforced()},
           {"success_rate", r.success_rate()},
           {"predictions", r.predictions()},
           {"prediction_rate", r.prediction_rate()},
           {"classification_accuracy", r.classification_accuracy()},
           {"rule_violations", by_rule},
           {"stages", stages},
           {"usage", r.usage},
           {"entries", r.entries}};
}

namespace {

EntryResult score(const DatasetEntry& entry, const gateway::IntentView& view) {
  EntryResult r;
  r.id = entry.id;
  r.expected = entry.slice_type;
  r.predicted = view.slice_type;
  r.policy_created = view.policy.has_value();
  r.policy_id = view.record.policy_id;
  if (view.policy_status) {
    r.policy_state = std::string(a1::to_string(view.policy_status->state));
    r.enforced = view.policy_status->state == a1::PolicyState::enforced;
    if (!r.enforced) r.detail = view.policy_status->detail;
  }
  r.timings = view.record.timings;
  r.observed.id = entry.id;
  r.observed.tool_calls = view.observed_calls;
  r.observed.refusal = view.refusal;
  r.observed.clarification = view.pending_clarification;
  r.observed.slice_type = view.slice_type;

  if (view.error) {
    r.failure = std::string(to_string(view.error->cause.value_or(view.error->code)));
    r.detail = view.error->detail;
  } else if (view.pending_clarification) {
    r.failure = std::string(to_string(Errc::translation_failed));
    r.detail = "clarification left unanswered: " + *view.pending_clarification;
  } else if (!r.policy_created) {
    r.failure = std::string(to_string(Errc::downstream_error));
    r.detail = "no policy was created";
  }
  r.violations = check_tool_use_rules(
      entry, Observation{view.observed_calls, view.refusal, view.pending_clarification});
  return r;
}

}  // namespace

RunReport run_suite(const std::vector<DatasetEntry>& dataset, const gateway::GatewayClient& client,
                    const std::string& adapter, const RunOptions& options) {
  try {
    client.intents();
  } catch (const Error& e) {
    throw Error(Errc::services_unavailable, "intent gateway: " + e.detail());
  }
  RunReport report;
  report.adapter = adapter;
  report.planned = dataset.size();
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    if (options.stop && options.stop->load()) {
      report.truncated = true;
      break;
    }
    const auto& entry = dataset[i];
    EntryResult result;
    try {
      auto view = client.submit_intent(entry.text, entry.id);
      result = score(entry, view);
      if (!view.usage.is_null()) report.usage = view.usage;
      if (options.release_between && view.record.state != model::IntentState::terminated) {
        try {
          client.lifecycle(view.record.intent_id, model::LifecycleEvent::terminate);
        } catch (const Error& e) {
          spdlog::warn("terminating {}: {}", view.record.intent_id, e.what());
        }
      }
    } catch (const Error& e) {
      result.id = entry.id;
      result.expected = entry.slice_type;
      result.observed.id = entry.id;
      result.failure = std::string(to_string(e.code()));
      result.detail = e.detail();
    }
    if (options.progress) options.progress(i, result);
    report.entries.push_back(std::move(result));
  }
  return report;
}

}  // namespace orion::eval
