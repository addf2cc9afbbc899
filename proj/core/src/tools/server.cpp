#include "orion/tools/server.hpp"

#include <spdlog/spdlog.h>

#include "net/http.hpp"

namespace orion::tools {

using nlohmann::json;

ToolHandler booking_handler(std::string booking_url, std::chrono::milliseconds timeout) {
  auto target = net::parse_url(booking_url);
  return [target, timeout](const ToolCall& call) {
    ToolResult result;
    result.call_id = call.call_id;
    auto cli = net::make_client(target, {timeout, timeout});
    auto res = cli->Post("/sessions", call.arguments.dump(), "application/json");
    if (!res) {
      result.outcome = Outcome::error;
      result.payload = json{{"error", to_string(Errc::transport_error)},
                            {"detail", "slice booking unreachable: " + httplib::to_string(res.error())}};
      return result;
    }
    result.status = res->status;
    json body = json::parse(res->body, nullptr, false);
    if (body.is_discarded()) body = json{{"error", to_string(Errc::downstream_error)}, {"detail", res->body}};
    if (res->status == 201) {
      result.outcome = Outcome::ok;
    } else if (res->status == 429) {
      result.outcome = Outcome::rejected;
    } else {
      result.outcome = Outcome::error;
    }
    result.payload = std::move(body);
    return result;
  };
}

struct ToolServer::Impl {
  ToolServerConfig config;
  ToolRegistry registry;
  net::EventHub events;
  net::ServerThread http;
  std::uint16_t port = 0;

  Impl(ToolServerConfig cfg, ToolRegistry reg) : config(std::move(cfg)), registry(std::move(reg)) {
    auto& srv = http.server();
    srv.Get("/tools", net::guarded([this](const httplib::Request&, httplib::Response& res) {
              net::reply_json(res, 200, json(registry.list()));
            }));
    srv.Post("/tools/invoke", net::guarded([this](const httplib::Request& req, httplib::Response& res) {
               auto call = net::parse_body(req).get<ToolCall>();
               auto result = registry.invoke(call);
               json body = result;
               if (!call.conversation_id.empty()) {
                 json event = body;
                 event["type"] = "tool_result";
                 event["conversation_id"] = call.conversation_id;
                 events.publish(call.conversation_id, event);
               }
               net::reply_json(res, 200, body);
             }));
    events.mount(srv, R"(/events/([^/]+))", [](const httplib::Request& req) { return std::string(req.matches[1]); });
  }
};

namespace {

ToolRegistry default_registry(const ToolServerConfig& config) {
  ToolRegistry registry;
  registry.add(create_session_descriptor(), booking_handler(config.booking_url));
  return registry;
}

}  // namespace

ToolServer::ToolServer(ToolServerConfig config) : ToolServer(config, default_registry(config)) {}

ToolServer::ToolServer(ToolServerConfig config, ToolRegistry registry)
    : impl_(std::make_unique<Impl>(std::move(config), std::move(registry))) {}

ToolServer::~ToolServer() { stop(); }

std::uint16_t ToolServer::start() {
  impl_->port = impl_->http.start(impl_->config.host, impl_->config.port);
  spdlog::info("tool server listening on {}", url());
  return impl_->port;
}

void ToolServer::stop() {
  impl_->events.close();
  impl_->http.stop();
}

std::uint16_t ToolServer::port() const noexcept { return impl_->port; }
std::string ToolServer::url() const { return "http://" + impl_->config.host + ":" + std::to_string(impl_->port); }
const ToolRegistry& ToolServer::registry() const noexcept { return impl_->registry; }
std::size_t ToolServer::subscriber_count(const std::string& conversation_id) const {
  return impl_->events.subscriber_count(conversation_id);
}

}  // namespace orion::tools
