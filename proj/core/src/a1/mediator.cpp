#include "orion/a1/mediator.hpp"

#include <spdlog/spdlog.h>

#include <chrono>
#include <future>

#include "orion/error.hpp"
#include "orion/model/json.hpp"

namespace orion::a1 {

using nlohmann::json;

namespace {

std::string key_text(const std::string& policy_id, int policytype_id) {
  return std::to_string(policytype_id) + "/" + policy_id;
}

std::int64_t now_ms() {
  return std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::system_clock::now().time_since_epoch())
      .count();
}

}  // namespace

json create_message(const model::A1Policy& policy) { return json{{"op", "CREATE"}, {"policy", policy}}; }

json delete_message(const std::string& policy_id, int policytype_id) {
  return json{{"op", "DELETE"}, {"policy_id", policy_id}, {"policytype_id", policytype_id}};
}

Mediator::Mediator(Pusher pusher, std::optional<std::filesystem::path> journal) : pusher_(std::move(pusher)) {
  if (journal) {
    journal_.emplace(*journal, std::ios::app);
    if (!*journal_) throw Error(Errc::io_error, "cannot open journal " + journal->string());
  }
}

PolicyStatus Mediator::put_policy(const model::A1Policy& policy) {
  auto started = std::chrono::steady_clock::now();
  Key key{policy.policytype_id, policy.policy_id};
  std::vector<std::string> urls;
  PolicyStatus status;
  {
    std::lock_guard lock(mu_);
    auto it = store_.find(key);
    if (it != store_.end() && it->second.status.state != PolicyState::deleted) {
      throw Error(Errc::duplicate_policy_id, "policy " + key_text(policy.policy_id, policy.policytype_id) +
                                                 " already exists");
    }
    status.policy_id = policy.policy_id;
    status.policytype_id = policy.policytype_id;
    store_.insert_or_assign(key, Entry{policy, status});
    urls = callbacks_for(policy.policytype_id);
  }
  journal(json{{"ts", now_ms()}, {"op", "PUT"}, {"policy", policy}});
  notify(status);
  fan_out(urls, create_message(policy));

  double elapsed = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started).count();
  std::lock_guard lock(mu_);
  auto& entry = store_.at(key);
  entry.status.timings.set(model::Stage::a1_mediator, elapsed);
  return entry.status;
}

PolicyStatus Mediator::report_status(const PolicyStatus& report) {
  PolicyStatus updated;
  {
    std::lock_guard lock(mu_);
    auto it = store_.find(Key{report.policytype_id, report.policy_id});
    if (it == store_.end()) {
      throw Error(Errc::unknown_policy, "no policy " + key_text(report.policy_id, report.policytype_id));
    }
    auto& status = it->second.status;
    if (!status_transition_allowed(status.state, report.state)) {
      throw Error(Errc::illegal_status_transition,
                  std::string(to_string(status.state)) + " -> " + std::string(to_string(report.state)));
    }
    status.state = report.state;
    status.detail = report.detail;
    if (report.quota) status.quota = report.quota;
    status.timings.merge(report.timings);
    updated = status;
  }
  journal(json{{"ts", now_ms()}, {"op", "STATUS"}, {"status", updated}});
  notify(updated);
  return updated;
}

PolicyStatus Mediator::delete_policy(const std::string& policy_id, int policytype_id) {
  std::vector<std::string> urls;
  PolicyStatus status;
  {
    std::lock_guard lock(mu_);
    auto it = store_.find(Key{policytype_id, policy_id});
    if (it == store_.end() || it->second.status.state == PolicyState::deleted) {
      throw Error(Errc::unknown_policy, "no policy " + key_text(policy_id, policytype_id));
    }
    it->second.status.state = PolicyState::deleted;
    it->second.status.detail.clear();
    status = it->second.status;
    urls = callbacks_for(policytype_id);
  }
  journal(json{{"ts", now_ms()}, {"op", "DELETE"}, {"policy_id", policy_id}, {"policytype_id", policytype_id}});
  notify(status);
  fan_out(urls, delete_message(policy_id, policytype_id));
  return status;
}

PolicyStatus Mediator::status(const std::string& policy_id, int policytype_id) const {
  std::lock_guard lock(mu_);
  auto it = store_.find(Key{policytype_id, policy_id});
  if (it == store_.end()) throw Error(Errc::unknown_policy, "no policy " + key_text(policy_id, policytype_id));
  return it->second.status;
}

std::optional<model::A1Policy> Mediator::policy(const std::string& policy_id, int policytype_id) const {
  std::lock_guard lock(mu_);
  auto it = store_.find(Key{policytype_id, policy_id});
  if (it == store_.end()) return std::nullopt;
  return it->second.policy;
}

std::vector<PolicyStatus> Mediator::statuses() const {
  std::lock_guard lock(mu_);
  std::vector<PolicyStatus> out;
  out.reserve(store_.size());
  for (const auto& [_, e] : store_) out.push_back(e.status);
  return out;
}

void Mediator::subscribe(Subscription sub) {
  std::lock_guard lock(mu_);
  for (const auto& s : subs_) {
    if (s == sub) return;
  }
  subs_.push_back(std::move(sub));
}

std::vector<Subscription> Mediator::subscriptions() const {
  std::lock_guard lock(mu_);
  return subs_;
}

void Mediator::set_listener(StatusListener listener) {
  std::lock_guard lock(mu_);
  listener_ = std::move(listener);
}

std::vector<std::string> Mediator::callbacks_for(int policytype_id) const {
  std::vector<std::string> urls;
  for (const auto& s : subs_) {
    if (s.policytype_id == policytype_id) urls.push_back(s.callback_url);
  }
  return urls;
}

void Mediator::fan_out(const std::vector<std::string>& urls, const json& message) {
  auto push_one = [this, &message](const std::string& url) {
    try {
      pusher_(url, message);
    } catch (const std::exception& e) {
      spdlog::warn("a1 push to {} failed: {}", url, e.what());
    }
  };
  if (urls.size() == 1) {
    push_one(urls.front());
    return;
  }
  std::vector<std::future<void>> pending;
  pending.reserve(urls.size());
  for (const auto& url : urls) pending.push_back(std::async(std::launch::async, push_one, url));
  for (auto& f : pending) f.get();
}

void Mediator::journal(const json& line) {
  if (!journal_) return;
  std::lock_guard lock(journal_mu_);
  *journal_ << line.dump() << '\n';
  journal_->flush();
}

void Mediator::notify(const PolicyStatus& status) {
  StatusListener listener;
  {
    std::lock_guard lock(mu_);
    listener = listener_;
  }
  if (listener) listener(status);
}

}  // namespace orion::a1
