#include "orion/xapp/service.hpp"

#include <spdlog/spdlog.h>

#include <future>
#include <map>
#include <thread>

#include "net/http.hpp"
#include "orion/a1/service.hpp"
#include "orion/e2/codec.hpp"
#include "orion/e2/transport.hpp"
#include "orion/model/json.hpp"
#include "util/json_read.hpp"

namespace orion::xapp {

using nlohmann::json;

namespace {

// Control channel over one framed E2 connection. A reader thread routes
// replies to waiting transactions by transaction id and answers protocol
// violations from the node.
class E2Link : public ControlChannel {
 public:
  E2Link(std::unique_ptr<e2::FramedConnection> conn, std::string node_id, std::function<void(const std::string&)> lost)
      : conn_(std::move(conn)), node_id_(std::move(node_id)), lost_(std::move(lost)) {}

  ~E2Link() override { stop(); }

  void start() {
    reader_ = std::thread([this] { read_loop(); });
  }

  void stop() {
    stopping_ = true;
    if (reader_.joinable()) reader_.join();
    conn_->close();
    fail_pending("connection closed");
  }

  e2::ControlPdu transact(const e2::ControlPdu& request, std::chrono::milliseconds timeout) override {
    std::future<e2::ControlPdu> reply;
    {
      std::lock_guard lock(pending_mu_);
      if (!alive_) throw Error(Errc::connection_lost, "node " + node_id_ + " disconnected");
      reply = pending_[request.transaction_id].get_future();
    }
    try {
      send(request);
    } catch (const Error&) {
      forget(request.transaction_id);
      throw;
    }
    if (reply.wait_for(timeout) != std::future_status::ready) {
      forget(request.transaction_id);
      throw Error(Errc::timeout, "no reply from " + node_id_);
    }
    return reply.get();
  }

  void send(const e2::ControlPdu& pdu) {
    std::lock_guard lock(write_mu_);
    conn_->send(pdu);
  }

 private:
  void forget(std::uint32_t txid) {
    std::lock_guard lock(pending_mu_);
    pending_.erase(txid);
  }

  void fail_pending(const std::string& why) {
    std::lock_guard lock(pending_mu_);
    alive_ = false;
    for (auto& [_, p] : pending_) p.set_exception(std::make_exception_ptr(Error(Errc::connection_lost, why)));
    pending_.clear();
  }

  void reply_protocol_error(std::uint32_t txid, const std::string& what) {
    try {
      send(e2::ControlPdu{txid, e2::ControlFailure{e2::FailureCause::malformed, "protocol error: " + what}});
    } catch (const Error&) {
    }
  }

  void read_loop() {
    while (!stopping_) {
      e2::ControlPdu in;
      try {
        in = conn_->receive(std::chrono::milliseconds(100));
      } catch (const Error& e) {
        if (e.code() == Errc::timeout) continue;
        if (e.code() == Errc::connection_lost || e.code() == Errc::frame_too_large) {
          fail_pending(e.detail());
          if (!stopping_) lost_(node_id_);
          return;
        }
        reply_protocol_error(0, e.detail());
        continue;
      }
      if (std::holds_alternative<e2::ControlAcknowledge>(in.body) ||
          std::holds_alternative<e2::ControlFailure>(in.body)) {
        std::lock_guard lock(pending_mu_);
        auto it = pending_.find(in.transaction_id);
        if (it == pending_.end()) {
          spdlog::debug("e2 {}: reply for unknown transaction {}", node_id_, in.transaction_id);
          continue;
        }
        it->second.set_value(std::move(in));
        pending_.erase(it);
      } else if (std::holds_alternative<e2::SetupRequest>(in.body)) {
        reply_protocol_error(in.transaction_id, "E2 setup already completed on this connection");
      } else {
        reply_protocol_error(in.transaction_id, "unexpected message from node");
      }
    }
  }

  std::unique_ptr<e2::FramedConnection> conn_;
  std::string node_id_;
  std::function<void(const std::string&)> lost_;
  std::mutex write_mu_;
  std::mutex pending_mu_;
  std::map<std::uint32_t, std::promise<e2::ControlPdu>> pending_;
  bool alive_ = true;
  std::atomic<bool> stopping_{false};
  std::thread reader_;
};

}  // namespace

struct XappService::Impl {
  XappConfig config;
  mutable std::mutex reports_mu;
  mutable std::condition_variable nodes_cv;
  std::vector<a1::PolicyStatus> reports;
  Enforcer enforcer;
  std::unique_ptr<e2::FrameListener> listener;
  std::thread acceptor;
  std::atomic<bool> stopping{false};
  std::mutex links_mu;
  std::vector<std::shared_ptr<E2Link>> links;
  net::ServerThread http;
  std::uint16_t http_port = 0;
  std::uint16_t e2_port = 0;

  explicit Impl(XappConfig cfg)
      : config(std::move(cfg)), enforcer(config.enforcer, [this](const a1::PolicyStatus& s) { report(s); }) {
    routes();
  }

  void report(const a1::PolicyStatus& status) {
    {
      std::lock_guard lock(reports_mu);
      reports.push_back(status);
    }
    if (!config.mediator_url.empty()) a1::MediatorClient(config.mediator_url).report_status(status);
  }

  void routes() {
    auto& srv = http.server();
    srv.Post("/a1/callback", net::guarded([this](const httplib::Request& req, httplib::Response& res) {
               auto body = net::parse_body(req);
               jsonio::require_object(body, "push");
               auto op = jsonio::as_string(jsonio::require(body, "op"), "op");
               if (op == "CREATE") {
                 auto policy = model::parse_as<model::A1Policy>(jsonio::require(body, "policy"));
                 bool queued = enforcer.submit(policy);
                 net::reply_json(res, 202, json{{"queued", queued}});
               } else if (op == "DELETE") {
                 auto pid = jsonio::as_string(jsonio::require(body, "policy_id"), "policy_id");
                 auto ptid = jsonio::int_in<int>(jsonio::require(body, "policytype_id"), "policytype_id", 0, 1 << 30);
                 enforcer.submit_delete(pid, ptid);
                 net::reply_json(res, 202, json{{"queued", true}});
               } else {
                 throw Error(Errc::schema_violation, "unknown push op '" + op + "'");
               }
             }));
    srv.Get("/inventory", net::guarded([this](const httplib::Request&, httplib::Response& res) {
              auto rows = json::array();
              for (const auto& n : enforcer.inventory()) {
                rows.push_back({{"nodeId", n.node_id}, {"cell", n.cell}, {"capacityBps", n.capacity_bps}});
              }
              net::reply_json(res, 200, rows);
            }));
    srv.Get("/quotas", net::guarded([this](const httplib::Request&, httplib::Response& res) {
              auto rows = json::array();
              for (const auto& q : enforcer.quotas()) {
                rows.push_back({{"policy_id", q.policy_id},
                                {"policytype_id", q.policytype_id},
                                {"sliceType", q.slice_type},
                                {"quota", q.quota}});
              }
              net::reply_json(res, 200, rows);
            }));
  }

  void refuse(e2::FramedConnection& conn, std::uint32_t txid, e2::FailureCause cause, const std::string& detail) {
    spdlog::warn("e2 setup from {} refused: {}", conn.peer(), detail);
    try {
      conn.send(e2::ControlPdu{txid, e2::ControlFailure{cause, detail}});
    } catch (const Error&) {
    }
    conn.close();
  }

  void handshake(std::unique_ptr<e2::FramedConnection> conn) {
    e2::ControlPdu first;
    try {
      first = conn->receive(config.setup_timeout);
    } catch (const Error& e) {
      if (e.code() == Errc::malformed_frame || e.code() == Errc::unknown_message_type ||
          e.code() == Errc::field_range_error) {
        refuse(*conn, 0, e2::FailureCause::malformed, e.detail());
      }
      return;
    }
    const auto* req = std::get_if<e2::SetupRequest>(&first.body);
    if (!req) {
      refuse(*conn, first.transaction_id, e2::FailureCause::malformed, "protocol error: E2 setup required first");
      return;
    }
    std::vector<std::uint16_t> accepted;
    for (const auto& f : req->functions) {
      if (f.function_id == e2::kRanFunctionRc && f.style == e2::kStyleRadioResourceAllocation &&
          f.action == e2::kActionSlicePrbQuota) {
        accepted.push_back(f.function_id);
      }
    }
    if (accepted.empty()) {
      refuse(*conn, first.transaction_id, e2::FailureCause::unknown_function,
             "no RAN control function with style 2 / action 6 advertised");
      return;
    }
    if (!req->cell) {
      refuse(*conn, first.transaction_id, e2::FailureCause::malformed, "setup request carries no cell configuration");
      return;
    }
    auto node_id = req->node_id;
    auto txid = first.transaction_id;
    auto cell = *req->cell;
    auto link = std::make_shared<E2Link>(std::move(conn), node_id,
                                         [this](const std::string& id) { enforcer.remove_node(id); });
    try {
      enforcer.add_node(InventoryNode{node_id, cell, link});
    } catch (const Error& e) {
      try {
        link->send(e2::ControlPdu{txid, e2::ControlFailure{e2::FailureCause::malformed, e.detail()}});
      } catch (const Error&) {
      }
      link->stop();
      return;
    }
    try {
      link->send(e2::ControlPdu{txid, e2::SetupResponse{accepted}});
    } catch (const Error&) {
      enforcer.remove_node(node_id);
      link->stop();
      return;
    }
    link->start();
    {
      std::lock_guard lock(links_mu);
      links.push_back(link);
    }
    { std::lock_guard lock(reports_mu); }
    nodes_cv.notify_all();
    spdlog::info("e2 node {} set up ({} PRB, mu {})", node_id, cell.n_prb, cell.numerology_mu);
  }

  void accept_loop() {
    while (!stopping) {
      auto conn = listener->accept(std::chrono::milliseconds(200));
      if (conn) handshake(std::move(conn));
    }
  }
};

XappService::XappService(XappConfig config) : impl_(std::make_unique<Impl>(std::move(config))) {}

XappService::~XappService() { stop(); }

void XappService::start() {
  auto& s = *impl_;
  s.listener = std::make_unique<e2::FrameListener>(s.config.e2_host, s.config.e2_port);
  s.e2_port = s.listener->port();
  s.acceptor = std::thread([&s] { s.accept_loop(); });
  s.http_port = s.http.start(s.config.http_host, s.config.http_port);
  if (!s.config.mediator_url.empty()) {
    a1::MediatorClient(s.config.mediator_url).subscribe({model::kSliceSlaPolicyType, url() + "/a1/callback"});
  }
  spdlog::info("xapp listening: http {} e2 {}:{}", url(), s.config.e2_host, s.e2_port);
}

void XappService::stop() {
  auto& s = *impl_;
  s.stopping = true;
  if (s.acceptor.joinable()) s.acceptor.join();
  if (s.listener) s.listener->close();
  s.http.stop();
  std::vector<std::shared_ptr<E2Link>> links;
  {
    std::lock_guard lock(s.links_mu);
    links.swap(s.links);
  }
  for (auto& l : links) l->stop();
}

std::uint16_t XappService::http_port() const noexcept { return impl_->http_port; }
std::uint16_t XappService::e2_port() const noexcept { return impl_->e2_port; }
std::string XappService::url() const {
  return "http://" + impl_->config.http_host + ":" + std::to_string(impl_->http_port);
}
Enforcer& XappService::enforcer() noexcept { return impl_->enforcer; }

std::vector<a1::PolicyStatus> XappService::reports() const {
  std::lock_guard lock(impl_->reports_mu);
  return impl_->reports;
}

bool XappService::wait_for_nodes(std::size_t count, std::chrono::milliseconds timeout) const {
  std::unique_lock lock(impl_->reports_mu);
  return impl_->nodes_cv.wait_for(lock, timeout, [this, count] { return impl_->enforcer.inventory().size() >= count; });
}

}  // namespace orion::xapp
