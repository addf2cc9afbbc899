#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>

#include "orion/a1/mediator.hpp"

namespace orion::a1 {

struct MediatorServiceConfig {
  std::string host = "127.0.0.1";
  std::uint16_t port = 0;
  std::optional<std::filesystem::path> journal;
  std::chrono::milliseconds push_timeout{5000};
};

// HTTP surface of the mediator:
//   PUT    /a1/policytypes/{ptid}/policies/{pid}         A1Policy -> status (201)
//   DELETE /a1/policytypes/{ptid}/policies/{pid}         -> status
//   GET    /a1/policytypes/{ptid}/policies/{pid}         -> A1Policy
//   GET    /a1/policytypes/{ptid}/policies/{pid}/status  -> status
//   GET    /a1/policies                                  -> [status]
//   POST   /a1/subscriptions  {callback_url, policytype_id}
//   POST   /a1/status         status report from an xApp
//   GET    /stream            server-sent status changes
class MediatorService {
 public:
  explicit MediatorService(MediatorServiceConfig config = {});
  ~MediatorService();
  MediatorService(const MediatorService&) = delete;
  MediatorService& operator=(const MediatorService&) = delete;

  std::uint16_t start();
  void stop();
  std::uint16_t port() const noexcept;
  std::string url() const;
  Mediator& mediator() noexcept;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// Thin HTTP client for the mediator. Transport failures surface as
// Error(mediator_unavailable); error replies keep their typed code.
class MediatorClient {
 public:
  explicit MediatorClient(std::string base_url, std::chrono::milliseconds timeout = std::chrono::milliseconds(10000));

  PolicyStatus put_policy(const model::A1Policy& policy) const;
  PolicyStatus delete_policy(const std::string& policy_id, int policytype_id) const;
  PolicyStatus status(const std::string& policy_id, int policytype_id) const;
  PolicyStatus report_status(const PolicyStatus& report) const;
  void subscribe(const Subscription& sub) const;

 private:
  std::string base_url_;
  std::chrono::milliseconds timeout_;
};

}  // namespace orion::a1
