#pragma once

#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <mutex>
#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "orion/a1/status.hpp"
#include "orion/model/types.hpp"

namespace orion::a1 {

struct Subscription {
  int policytype_id = model::kSliceSlaPolicyType;
  std::string callback_url;

  bool operator==(const Subscription&) const = default;
};

// Delivers one push message to a subscriber callback. Throws on failure.
using Pusher = std::function<void(const std::string& callback_url, const nlohmann::json& message)>;
using StatusListener = std::function<void(const PolicyStatus&)>;

// Push messages:
//   {"op": "CREATE", "policy": <A1Policy>}
//   {"op": "DELETE", "policy_id": ..., "policytype_id": ...}
nlohmann::json create_message(const model::A1Policy& policy);
nlohmann::json delete_message(const std::string& policy_id, int policytype_id);

// Policy store keyed by (policytype_id, policy_id). Deleted policies leave a
// DELETED tombstone that accepts no further reports; a later PUT of the same
// key replaces the tombstone.
class Mediator {
 public:
  explicit Mediator(Pusher pusher, std::optional<std::filesystem::path> journal = std::nullopt);

  // Throws Error(duplicate_policy_id) when a live policy has the same key.
  PolicyStatus put_policy(const model::A1Policy& policy);
  // Throws Error(unknown_policy | illegal_status_transition).
  PolicyStatus report_status(const PolicyStatus& report);
  // Throws Error(unknown_policy), including for an already deleted policy.
  PolicyStatus delete_policy(const std::string& policy_id, int policytype_id);

  // Throws Error(unknown_policy).
  PolicyStatus status(const std::string& policy_id, int policytype_id) const;
  std::optional<model::A1Policy> policy(const std::string& policy_id, int policytype_id) const;
  std::vector<PolicyStatus> statuses() const;

  void subscribe(Subscription sub);
  std::vector<Subscription> subscriptions() const;

  void set_listener(StatusListener listener);

 private:
  using Key = std::pair<int, std::string>;
  struct Entry {
    model::A1Policy policy;
    PolicyStatus status;
  };

  std::vector<std::string> callbacks_for(int policytype_id) const;
  void fan_out(const std::vector<std::string>& urls, const nlohmann::json& message);
  void journal(const nlohmann::json& line);
  void notify(const PolicyStatus& status);

  Pusher pusher_;
  mutable std::mutex mu_;
  std::map<Key, Entry> store_;
  std::vector<Subscription> subs_;
  StatusListener listener_;
  std::mutex journal_mu_;
  std::optional<std::ofstream> journal_;
};

}  // namespace orion::a1
