#pragma once

#include <atomic>
#include <chrono>
#include <cstdint>
#include <functional>
#include <memory>
#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "orion/tools/registry.hpp"

namespace orion::tools {

// Forwards the call's arguments, serialized unchanged, to POST {booking}/sessions.
// 201 -> OK with the booking, 429 -> REJECTED with the refusal body, anything
// else (including an unreachable service) -> ERROR.
ToolHandler booking_handler(std::string booking_url,
                            std::chrono::milliseconds timeout = std::chrono::milliseconds(10000));

struct ToolServerConfig {
  std::string host = "127.0.0.1";
  std::uint16_t port = 0;
  std::string booking_url;
};

// HTTP surface:
//   GET  /tools                      -> [ToolDescriptor]
//   POST /tools/invoke               ToolCall -> ToolResult
//   GET  /events/{conversation_id}   server-sent ToolResult events
class ToolServer {
 public:
  // Registers create_session backed by the booking service.
  explicit ToolServer(ToolServerConfig config);
  ToolServer(ToolServerConfig config, ToolRegistry registry);
  ~ToolServer();
  ToolServer(const ToolServer&) = delete;
  ToolServer& operator=(const ToolServer&) = delete;

  std::uint16_t start();
  void stop();
  std::uint16_t port() const noexcept;
  std::string url() const;
  const ToolRegistry& registry() const noexcept;
  std::size_t subscriber_count(const std::string& conversation_id) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

class ToolClient {
 public:
  explicit ToolClient(std::string base_url, std::chrono::milliseconds timeout = std::chrono::milliseconds(15000));

  // Throws Error(transport_error) when the server is unreachable.
  std::vector<ToolDescriptor> list_tools() const;
  // Throws Error(unknown_tool | schema_violation | transport_error).
  ToolResult invoke_tool(const ToolCall& call) const;
  // Blocks, delivering each event until on_event returns false, `stop` is
  // set or the stream ends. Throws Error(transport_error) on stream loss.
  void subscribe_events(const std::string& conversation_id, const std::atomic<bool>& stop,
                        const std::function<bool(const nlohmann::json&)>& on_event) const;

 private:
  std::string base_url_;
  std::chrono::milliseconds timeout_;
};

}  // namespace orion::tools
