#include "orion/xapp/enforcer.hpp"

#include <spdlog/spdlog.h>

#include <algorithm>
#include <condition_variable>
#include <deque>
#include <future>
#include <thread>

#include "orion/error.hpp"
#include "orion/xapp/capacity.hpp"

namespace orion::xapp {

namespace {

double ms_since(std::chrono::steady_clock::time_point from, std::chrono::steady_clock::time_point to) {
  return std::max(0.0, std::chrono::duration<double, std::milli>(to - from).count());
}

std::string cause_text(e2::FailureCause cause) {
  switch (cause) {
    case e2::FailureCause::capacity_exceeded: return "capacity exceeded";
    case e2::FailureCause::unknown_function: return "unknown function";
    case e2::FailureCause::malformed: return "malformed";
  }
  return "unknown cause";
}

}  // namespace

e2::ControlPdu ControlBuilder::build(const model::SliceId& slice, const model::PrbQuota& quota,
                                     std::uint16_t ran_function_id, e2::Discipline discipline) {
  e2::ControlRequest req;
  req.ran_function_id = ran_function_id;
  req.slice = slice;
  req.ratios = {static_cast<std::uint8_t>(quota.min_pct), static_cast<std::uint8_t>(quota.dedicated_pct),
                static_cast<std::uint8_t>(quota.max_pct)};
  req.discipline = discipline;
  return e2::ControlPdu{next_++, req};
}

e2::ControlPdu ControlBuilder::build_release(const model::SliceId& slice, std::uint16_t ran_function_id) {
  e2::ControlRequest req;
  req.ran_function_id = ran_function_id;
  req.slice = slice;
  req.ratios = {0, 0, 0};
  return e2::ControlPdu{next_++, req};
}

struct Enforcer::Worker {
  std::mutex mu;
  std::condition_variable cv;
  std::deque<std::function<void()>> tasks;
  bool stopping = false;
  std::thread thread;

  Worker() : thread([this] { run(); }) {}

  ~Worker() {
    {
      std::lock_guard lock(mu);
      stopping = true;
    }
    cv.notify_all();
    thread.join();
  }

  void post(std::function<void()> task) {
    {
      std::lock_guard lock(mu);
      tasks.push_back(std::move(task));
    }
    cv.notify_one();
  }

  void run() {
    std::unique_lock lock(mu);
    for (;;) {
      cv.wait(lock, [this] { return stopping || !tasks.empty(); });
      if (tasks.empty()) return;
      auto task = std::move(tasks.front());
      tasks.pop_front();
      lock.unlock();
      task();
      lock.lock();
    }
  }
};

struct Enforcer::NodeState {
  InventoryNode node;
  std::int64_t capacity_bps = 0;
  std::mutex control_mu;
};

Enforcer::Enforcer(EnforcerConfig config, StatusSink sink) : config_(std::move(config)), sink_(std::move(sink)) {}

Enforcer::~Enforcer() {
  std::map<std::string, std::unique_ptr<Worker>> workers;
  {
    std::lock_guard lock(mu_);
    workers.swap(workers_);
  }
  workers.clear();
}

void Enforcer::add_node(InventoryNode node) {
  auto state = std::make_shared<NodeState>();
  state->capacity_bps = config_.capacity_override_bps ? *config_.capacity_override_bps : cell_capacity(node.cell);
  state->node = std::move(node);
  std::lock_guard lock(mu_);
  for (const auto& n : nodes_) {
    if (n->node.node_id == state->node.node_id) {
      throw Error(Errc::conflict, "node " + state->node.node_id + " is already connected");
    }
  }
  nodes_.push_back(std::move(state));
}

void Enforcer::remove_node(const std::string& node_id) {
  std::lock_guard lock(mu_);
  std::erase_if(nodes_, [&](const auto& n) { return n->node.node_id == node_id; });
  std::erase_if(active_, [&](const auto& kv) { return kv.second.quota.node_id == node_id; });
}

std::vector<NodeInfo> Enforcer::inventory() const {
  std::lock_guard lock(mu_);
  std::vector<NodeInfo> out;
  for (const auto& n : nodes_) out.push_back({n->node.node_id, n->node.cell, n->capacity_bps});
  return out;
}

std::shared_ptr<Enforcer::NodeState> Enforcer::select_node(const model::A1Policy& policy, std::string& note) const {
  std::lock_guard lock(mu_);
  if (nodes_.empty()) return nullptr;
  for (const auto& n : nodes_) {
    if (n->node.cell.nci == policy.slice.nci) return n;
  }
  note = "nci " + std::to_string(policy.slice.nci) + " not in inventory; used node " + nodes_.front()->node.node_id;
  return nodes_.front();
}

a1::PolicyStatus Enforcer::on_policy(const model::A1Policy& policy, std::chrono::steady_clock::time_point received) {
  using clock = std::chrono::steady_clock;
  auto started = clock::now();
  a1::PolicyStatus status;
  status.policy_id = policy.policy_id;
  status.policytype_id = policy.policytype_id;
  status.state = a1::PolicyState::not_enforced;
  auto done = [&](std::string detail) {
    status.detail = std::move(detail);
    status.timings.set(model::Stage::xapp_full_policy_processing, ms_since(received, clock::now()));
    return status;
  };

  std::string note;
  auto node = select_node(policy, note);
  if (!node) return done("no E2 node in inventory");

  // PRB sizing input: downlink per-slice demand, uplink when no downlink is given.
  std::int64_t requested = policy.objectives.max_dl_thpt_per_slice_bps;
  if (requested <= 0) requested = policy.objectives.max_ul_thpt_per_slice_bps;
  if (requested <= 0) return done("missing throughput: policy has no per-slice objective");

  int pct = 0;
  try {
    pct = compute_prb_percent(requested, node->capacity_bps);
  } catch (const Error& e) {
    return done(e.detail());
  }

  model::PrbQuota quota;
  quota.slice = policy.slice;
  quota.node_id = node->node.node_id;
  quota.dedicated_pct = pct;
  quota.min_pct = std::min(config_.default_min_pct, pct);
  quota.max_pct = std::max(config_.default_max_pct, pct);

  auto request = builder_.build(policy.slice, quota, e2::kRanFunctionRc, e2::discipline_for(policy.slice_type));
  e2::ControlPdu reply;
  {
    std::lock_guard control(node->control_mu);
    auto sent = clock::now();
    status.timings.set(model::Stage::xapp_policy_to_control, ms_since(started, sent));
    try {
      reply = node->node.channel->transact(request, config_.control_timeout);
    } catch (const Error& e) {
      if (e.code() == Errc::timeout) {
        return done("timeout: no control acknowledge within " + std::to_string(config_.control_timeout.count()) +
                    " ms");
      }
      return done("connection lost: " + e.detail());
    }
    status.timings.set(model::Stage::e2_node_control_processing, ms_since(sent, clock::now()));
  }

  if (const auto* failure = std::get_if<e2::ControlFailure>(&reply.body)) {
    return done(failure->detail.empty() ? cause_text(failure->cause) : failure->detail);
  }
  if (!std::holds_alternative<e2::ControlAcknowledge>(reply.body)) {
    return done("protocol error: unexpected reply to control request");
  }
  {
    std::lock_guard lock(mu_);
    active_[PolicyKey{policy.policytype_id, policy.policy_id}] =
        ActiveQuota{policy.policy_id, policy.policytype_id, policy.slice_type, quota};
  }
  status.state = a1::PolicyState::enforced;
  status.quota = quota;
  return done(note);
}

Enforcer::Worker& Enforcer::worker_for(const std::string& node_id) {
  auto& slot = workers_[node_id];
  if (!slot) slot = std::make_unique<Worker>();
  return *slot;
}

bool Enforcer::submit(const model::A1Policy& policy) {
  auto received = std::chrono::steady_clock::now();
  std::string note;
  auto node = select_node(policy, note);
  std::lock_guard lock(mu_);
  auto& live = live_[PolicyKey{policy.policytype_id, policy.policy_id}];
  if (live) return false;
  live = true;
  worker_for(node ? node->node.node_id : std::string()).post([this, policy, received] {
    auto status = on_policy(policy, received);
    try {
      sink_(status);
    } catch (const std::exception& e) {
      spdlog::warn("xapp status report for {} failed: {}", policy.policy_id, e.what());
    }
  });
  return true;
}

void Enforcer::submit_delete(const std::string& policy_id, int policytype_id) {
  std::lock_guard lock(mu_);
  PolicyKey key{policytype_id, policy_id};
  live_.erase(key);
  auto it = active_.find(key);
  if (it == active_.end()) return;
  worker_for(it->second.quota.node_id).post([this, policy_id, policytype_id] { release(policy_id, policytype_id); });
}

bool Enforcer::release(const std::string& policy_id, int policytype_id) {
  PolicyKey key{policytype_id, policy_id};
  ActiveQuota held;
  std::shared_ptr<NodeState> node;
  {
    std::lock_guard lock(mu_);
    auto it = active_.find(key);
    if (it == active_.end()) return false;
    held = it->second;
    for (const auto& n : nodes_) {
      if (n->node.node_id == held.quota.node_id) node = n;
    }
    if (!node) {
      active_.erase(it);
      return false;
    }
  }
  std::lock_guard control(node->control_mu);
  try {
    auto reply = node->node.channel->transact(builder_.build_release(held.quota.slice), config_.control_timeout);
    if (!std::holds_alternative<e2::ControlAcknowledge>(reply.body)) {
      spdlog::warn("release of policy {} was rejected by {}", policy_id, held.quota.node_id);
      return false;
    }
  } catch (const Error& e) {
    spdlog::warn("release of policy {} failed: {}", policy_id, e.what());
    return false;
  }
  std::lock_guard lock(mu_);
  active_.erase(key);
  return true;
}

std::vector<ActiveQuota> Enforcer::quotas() const {
  std::lock_guard lock(mu_);
  std::vector<ActiveQuota> out;
  for (const auto& [_, q] : active_) out.push_back(q);
  return out;
}

void Enforcer::drain() {
  // Tasks may enqueue more work on other workers; repeat until a full pass
  // finds every queue already empty.
  for (;;) {
    std::vector<Worker*> workers;
    {
      std::lock_guard lock(mu_);
      for (auto& [_, w] : workers_) workers.push_back(w.get());
    }
    bool idle = true;
    for (auto* w : workers) {
      {
        std::lock_guard lock(w->mu);
        idle = idle && w->tasks.empty();
      }
      std::promise<void> reached;
      auto fut = reached.get_future();
      w->post([&reached] { reached.set_value(); });
      fut.wait();
    }
    if (idle) return;
  }
}

}  // namespace orion::xapp
