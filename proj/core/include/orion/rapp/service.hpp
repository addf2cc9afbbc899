#pragma once

#include <chrono>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>

#include "orion/a1/status.hpp"
#include "orion/rapp/composer.hpp"

namespace orion::rapp {

struct RappServiceConfig {
  std::string host = "127.0.0.1";
  std::uint16_t port = 0;
  // Mediator base URL; when empty, policies are generated but not pushed.
  std::string mediator_url;
  ComposerConfig composer;
};

// HTTP surface:
//   POST /generate-policy   ClassifiedIntent -> A1Policy (201), pushed to the mediator
//   GET  /policies/{id}     a previously generated policy
class RappService {
 public:
  explicit RappService(RappServiceConfig config);
  ~RappService();
  RappService(const RappService&) = delete;
  RappService& operator=(const RappService&) = delete;

  std::uint16_t start();
  void stop();
  std::uint16_t port() const noexcept;
  std::string url() const;

  // Generates, pushes and records a policy. Nothing is recorded when the push
  // fails. Throws Error(invalid_intent | missing_throughput |
  // mediator_unavailable | duplicate_policy_id).
  model::A1Policy generate_and_push(const ClassifiedIntent& ci);
  std::optional<model::A1Policy> policy(const std::string& policy_id) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

class RappClient {
 public:
  explicit RappClient(std::string base_url, std::chrono::milliseconds timeout = std::chrono::milliseconds(15000));
  model::A1Policy generate_policy(const ClassifiedIntent& ci) const;

 private:
  std::string base_url_;
  std::chrono::milliseconds timeout_;
};

}  // namespace orion::rapp
