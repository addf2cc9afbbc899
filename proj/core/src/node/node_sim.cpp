#include "orion/node/node_sim.hpp"

#include <spdlog/spdlog.h>

#include <thread>

#include "net/http.hpp"
#include "orion/e2/codec.hpp"
#include "orion/e2/transport.hpp"
#include "orion/error.hpp"

namespace orion::node {

NodeAgent::NodeAgent(PrbLedger& ledger, std::vector<e2::FunctionAdvert> functions)
    : ledger_(ledger), functions_(std::move(functions)) {}

e2::ControlPdu NodeAgent::setup_request(std::uint32_t transaction_id) const {
  e2::SetupRequest req;
  req.node_id = ledger_.cell().node_id;
  req.functions = functions_;
  req.cell = ledger_.cell();
  return e2::ControlPdu{transaction_id, req};
}

bool NodeAgent::supports(const e2::ControlRequest& req) const {
  for (const auto& f : functions_) {
    if (f.function_id == req.ran_function_id && f.style == req.style && f.action == req.action_id) return true;
  }
  return false;
}

e2::ControlPdu NodeAgent::handle_control(std::uint32_t txid, const e2::ControlRequest& req) {
  if (!setup_complete_) {
    return {txid, e2::ControlFailure{e2::FailureCause::malformed, "protocol error: control before E2 setup"}};
  }
  if (!supports(req)) {
    return {txid, e2::ControlFailure{e2::FailureCause::unknown_function,
                                     "unsupported function " + std::to_string(req.ran_function_id) + " style " +
                                         std::to_string(req.style) + " action " + std::to_string(req.action_id)}};
  }
  if (auto failure = ledger_.apply(req.slice, req.ratios, req.discipline)) return {txid, *failure};
  return {txid, e2::ControlAcknowledge{req.ran_function_id}};
}

std::optional<e2::ControlPdu> NodeAgent::handle(const e2::ControlPdu& in) {
  if (const auto* req = std::get_if<e2::ControlRequest>(&in.body)) return handle_control(in.transaction_id, *req);
  if (std::holds_alternative<e2::SetupResponse>(in.body)) {
    if (setup_complete_) {
      return e2::ControlPdu{in.transaction_id,
                            e2::ControlFailure{e2::FailureCause::malformed, "protocol error: duplicate setup"}};
    }
    setup_complete_ = true;
    return std::nullopt;
  }
  if (std::holds_alternative<e2::SetupRequest>(in.body)) {
    return e2::ControlPdu{in.transaction_id,
                          e2::ControlFailure{e2::FailureCause::malformed, "protocol error: node does not accept setup"}};
  }
  return std::nullopt;
}

model::CellConfig default_cell(std::string node_id, std::uint32_t nci) {
  model::CellConfig c;
  c.node_id = std::move(node_id);
  c.nci = nci;
  c.bandwidth_hz = 100'000'000;
  c.numerology_mu = 1;
  c.mimo_layers = 4;
  c.modulation_bits = 8;
  c.n_prb = 273;
  c.overhead_ppm = 140'000;
  return c;
}

struct E2NodeSim::Impl {
  NodeSimConfig config;
  PrbLedger ledger;
  NodeAgent agent;
  std::unique_ptr<e2::FramedConnection> conn;
  net::ServerThread http;
  std::uint16_t http_port = 0;
  std::thread loop;
  std::atomic<bool> stopping{false};
  std::atomic<std::uint64_t> handled{0};

  explicit Impl(NodeSimConfig cfg)
      : config(std::move(cfg)), ledger(config.cell), agent(ledger, {e2::FunctionAdvert{}}) {}

  void serve() {
    while (!stopping) {
      e2::ControlPdu in;
      try {
        in = conn->receive(std::chrono::milliseconds(100));
      } catch (const Error& e) {
        if (e.code() == Errc::timeout) continue;
        if (e.code() == Errc::connection_lost || e.code() == Errc::frame_too_large) {
          if (!stopping) spdlog::warn("e2 node {}: {}", config.cell.node_id, e.what());
          return;
        }
        // Undecodable payload: answer with a malformed-cause failure.
        try {
          conn->send(e2::ControlPdu{0, e2::ControlFailure{e2::FailureCause::malformed, e.detail()}});
        } catch (const Error&) {
          return;
        }
        continue;
      }
      auto out = agent.handle(in);
      if (std::holds_alternative<e2::ControlRequest>(in.body)) ++handled;
      if (!out) continue;
      try {
        conn->send(*out);
      } catch (const Error& e) {
        if (!stopping) spdlog::warn("e2 node {}: {}", config.cell.node_id, e.what());
        return;
      }
    }
  }
};

E2NodeSim::E2NodeSim(NodeSimConfig config) : impl_(std::make_unique<Impl>(std::move(config))) {}

E2NodeSim::~E2NodeSim() { stop(); }

void E2NodeSim::start() {
  auto& s = *impl_;
  s.http.server().Get("/ledger", [&s](const httplib::Request&, httplib::Response& res) {
    net::reply_json(res, 200, nlohmann::json(s.ledger.snapshot()));
  });
  s.http_port = s.http.start(s.config.http_host, s.config.http_port);

  s.conn = e2::FramedConnection::connect(s.config.e2_host, s.config.e2_port, s.config.connect_timeout);
  s.conn->send(s.agent.setup_request(1));
  auto reply = s.conn->receive(s.config.setup_timeout);
  if (!std::holds_alternative<e2::SetupResponse>(reply.body)) {
    throw Error(Errc::protocol_error, "E2 setup was not accepted by " + s.config.e2_host);
  }
  s.agent.handle(reply);
  s.loop = std::thread([&s] { s.serve(); });
  spdlog::info("e2 node {} connected to {}:{}", s.config.cell.node_id, s.config.e2_host, s.config.e2_port);
}

void E2NodeSim::stop() {
  auto& s = *impl_;
  s.stopping = true;
  if (s.loop.joinable()) s.loop.join();
  if (s.conn) s.conn->close();
  s.http.stop();
}

LedgerSnapshot E2NodeSim::snapshot() const { return impl_->ledger.snapshot(); }
std::uint16_t E2NodeSim::http_port() const noexcept { return impl_->http_port; }
std::uint64_t E2NodeSim::controls_handled() const noexcept { return impl_->handled; }

}  // namespace orion::node
