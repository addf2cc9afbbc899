#pragma once

#include <atomic>
#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "orion/a1/status.hpp"
#include "orion/e2/pdu.hpp"
#include "orion/model/types.hpp"

namespace orion::xapp {

// One E2 association as seen from the xApp: a request/response exchange with
// the node. Implementations throw Error(timeout | connection_lost).
class ControlChannel {
 public:
  virtual ~ControlChannel() = default;
  virtual e2::ControlPdu transact(const e2::ControlPdu& request, std::chrono::milliseconds timeout) = 0;
};

struct InventoryNode {
  std::string node_id;
  model::CellConfig cell;
  std::shared_ptr<ControlChannel> channel;
};

struct NodeInfo {
  std::string node_id;
  model::CellConfig cell;
  std::int64_t capacity_bps = 0;
};

struct EnforcerConfig {
  std::chrono::milliseconds control_timeout{2000};
  int default_min_pct = 0;
  int default_max_pct = 100;
  // Replaces the cell capacity model for every node when set.
  std::optional<std::int64_t> capacity_override_bps;
};

struct ActiveQuota {
  std::string policy_id;
  int policytype_id = model::kSliceSlaPolicyType;
  model::SliceType slice_type = model::SliceType::embb;
  model::PrbQuota quota;
};

// Builds RIC control requests with fresh transaction ids.
class ControlBuilder {
 public:
  e2::ControlPdu build(const model::SliceId& slice, const model::PrbQuota& quota,
                       std::uint16_t ran_function_id = e2::kRanFunctionRc,
                       e2::Discipline discipline = e2::Discipline::proportional_fair);
  e2::ControlPdu build_release(const model::SliceId& slice, std::uint16_t ran_function_id = e2::kRanFunctionRc);

 private:
  std::atomic<std::uint32_t> next_{1};
};

using StatusSink = std::function<void(const a1::PolicyStatus&)>;

// Policy-to-quota translation and E2 control. Control exchanges are serialized
// per node through a FIFO worker; distinct nodes proceed concurrently.
class Enforcer {
 public:
  Enforcer(EnforcerConfig config, StatusSink sink);
  ~Enforcer();
  Enforcer(const Enforcer&) = delete;
  Enforcer& operator=(const Enforcer&) = delete;

  // Throws Error(conflict) for a duplicate node id and
  // Error(invalid_config) when the cell cannot be modeled.
  void add_node(InventoryNode node);
  void remove_node(const std::string& node_id);
  std::vector<NodeInfo> inventory() const;

  // Synchronous processing. Never throws: every outcome becomes a status.
  // `received` is when the policy arrived at the xApp.
  a1::PolicyStatus on_policy(const model::A1Policy& policy,
                             std::chrono::steady_clock::time_point received = std::chrono::steady_clock::now());

  // Queues the policy on its target node's worker; the status goes to the
  // sink exactly once. A CREATE for a policy key that is already live is
  // ignored and returns false.
  bool submit(const model::A1Policy& policy);
  // Queues a release of the slice held by the policy, if any.
  void submit_delete(const std::string& policy_id, int policytype_id);
  // Releases synchronously. Returns false when the policy holds no quota.
  bool release(const std::string& policy_id, int policytype_id);

  std::vector<ActiveQuota> quotas() const;

  // Blocks until every queued task has run.
  void drain();

 private:
  struct Worker;
  struct NodeState;
  using PolicyKey = std::pair<int, std::string>;

  std::shared_ptr<NodeState> select_node(const model::A1Policy& policy, std::string& note) const;
  Worker& worker_for(const std::string& node_id);

  EnforcerConfig config_;
  StatusSink sink_;
  ControlBuilder builder_;
  mutable std::mutex mu_;
  std::vector<std::shared_ptr<NodeState>> nodes_;
  std::map<PolicyKey, ActiveQuota> active_;
  std::map<PolicyKey, bool> live_;
  std::map<std::string, std::unique_ptr<Worker>> workers_;
};

}  // namespace orion::xapp
