#pragma once

#include <chrono>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "orion/gateway/gateway.hpp"

namespace orion::gateway {

struct GatewayServiceConfig {
  std::string host = "127.0.0.1";
  std::uint16_t port = 0;
  GatewayConfig gateway;
};

// HTTP surface:
//   POST /intent                 {text, conversation_id?} -> intent view (201)
//   POST /intent/{id}/clarify    {answer}
//   POST /intent/{id}/lifecycle  {event, text?}
//   GET  /intent/{id}
//   GET  /intents
//   GET  /stream                 server-sent gateway events
// A pipeline failure replies with the error's status and
// {"error", "detail", "cause", "intent": view}.
class GatewayService {
 public:
  GatewayService(GatewayServiceConfig config, std::shared_ptr<Translator> translator);
  ~GatewayService();
  GatewayService(const GatewayService&) = delete;
  GatewayService& operator=(const GatewayService&) = delete;

  std::uint16_t start();
  void stop();
  std::uint16_t port() const noexcept;
  std::string url() const;
  Gateway& gateway() noexcept;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// Client used by the harness. Replies carrying an intent view are returned
// as views even when the status is an error; other failures throw.
class GatewayClient {
 public:
  explicit GatewayClient(std::string base_url, std::chrono::milliseconds timeout = std::chrono::milliseconds(60000));

  IntentView submit_intent(const std::string& text, const std::optional<std::string>& conversation_id = {}) const;
  IntentView answer_clarification(const std::string& id, const std::string& answer) const;
  IntentView lifecycle(const std::string& intent_id, model::LifecycleEvent event,
                       const std::optional<std::string>& text = {}) const;
  IntentView intent(const std::string& id) const;
  std::vector<IntentView> intents() const;

 private:
  IntentView call(const std::string& method, const std::string& path, const nlohmann::json* body) const;

  std::string base_url_;
  std::chrono::milliseconds timeout_;
};

}  // namespace orion::gateway
