#pragma once

#include <atomic>
#include <chrono>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "orion/e2/pdu.hpp"
#include "orion/node/ledger.hpp"

namespace orion::node {

// Protocol state of one E2 association, without I/O. The node is the
// connecting side: it issues the setup request and becomes usable once the
// setup response arrives.
class NodeAgent {
 public:
  NodeAgent(PrbLedger& ledger, std::vector<e2::FunctionAdvert> functions);

  e2::ControlPdu setup_request(std::uint32_t transaction_id) const;

  // Returns the PDU to send back, if any. Control requests always get exactly
  // one acknowledge or failure carrying the request's transaction id.
  std::optional<e2::ControlPdu> handle(const e2::ControlPdu& in);

  e2::ControlPdu handle_control(std::uint32_t transaction_id, const e2::ControlRequest& req);

  bool setup_complete() const noexcept { return setup_complete_; }

 private:
  bool supports(const e2::ControlRequest& req) const;

  PrbLedger& ledger_;
  std::vector<e2::FunctionAdvert> functions_;
  bool setup_complete_ = false;
};

struct NodeSimConfig {
  model::CellConfig cell;
  std::string e2_host = "127.0.0.1";
  std::uint16_t e2_port = 0;
  std::string http_host = "127.0.0.1";
  std::uint16_t http_port = 0;  // 0 = ephemeral
  std::chrono::milliseconds connect_timeout{2000};
  std::chrono::milliseconds setup_timeout{2000};
};

// Default cell: 100 MHz, 30 kHz SCS, 273 PRBs, 4 layers, 256QAM, 14% overhead.
model::CellConfig default_cell(std::string node_id = "gnb-001", std::uint32_t nci = 1);

// Simulated gNB: connects to the E2 termination, completes setup, then serves
// control requests until stopped. Exposes GET /ledger over HTTP.
class E2NodeSim {
 public:
  explicit E2NodeSim(NodeSimConfig config);
  ~E2NodeSim();
  E2NodeSim(const E2NodeSim&) = delete;
  E2NodeSim& operator=(const E2NodeSim&) = delete;

  // Connects, completes E2 setup and starts serving. Throws on failure.
  void start();
  void stop();

  LedgerSnapshot snapshot() const;
  std::uint16_t http_port() const noexcept;
  std::uint64_t controls_handled() const noexcept;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace orion::node
