#pragma once

#include <chrono>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "orion/a1/status.hpp"
#include "orion/xapp/enforcer.hpp"

namespace orion::xapp {

struct XappConfig {
  std::string http_host = "127.0.0.1";
  std::uint16_t http_port = 0;
  std::string e2_host = "127.0.0.1";
  std::uint16_t e2_port = 0;
  // Mediator base URL. When empty the xApp neither subscribes nor reports.
  std::string mediator_url;
  std::chrono::milliseconds setup_timeout{2000};
  EnforcerConfig enforcer;
};

// Near-RT RIC xApp: E2 termination for simulated nodes plus the A1 callback.
//   POST /a1/callback  mediator push ({"op": "CREATE" | "DELETE", ...}), 202
//   GET  /inventory    connected nodes with cell config and capacity
//   GET  /quotas       quotas currently enforced
class XappService {
 public:
  explicit XappService(XappConfig config);
  ~XappService();
  XappService(const XappService&) = delete;
  XappService& operator=(const XappService&) = delete;

  // Starts the E2 listener and HTTP server, then subscribes at the mediator.
  void start();
  void stop();

  std::uint16_t http_port() const noexcept;
  std::uint16_t e2_port() const noexcept;
  std::string url() const;

  Enforcer& enforcer() noexcept;
  // Every status produced so far, in report order.
  std::vector<a1::PolicyStatus> reports() const;
  bool wait_for_nodes(std::size_t count, std::chrono::milliseconds timeout) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace orion::xapp
