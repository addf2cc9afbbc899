#include "orion/gateway/service.hpp"

#include <spdlog/spdlog.h>

#include "net/http.hpp"
#include "orion/model/json.hpp"
#include "util/json_read.hpp"

namespace orion::gateway {

using nlohmann::json;

namespace {

constexpr const char* kTopic = "gateway";

void reply_view(httplib::Response& res, int ok_status, const IntentView& view) {
  if (!view.error) {
    net::reply_json(res, ok_status, json(view));
    return;
  }
  const auto& err = *view.error;
  net::reply_json(res, net::http_status_for(err.code),
                  json{{"error", to_string(err.code)},
                       {"detail", err.detail},
                       {"cause", err.cause ? json(to_string(*err.cause)) : json(nullptr)},
                       {"intent", view}});
}

}  // namespace

struct GatewayService::Impl {
  GatewayServiceConfig config;
  Gateway gateway;
  net::EventHub events;
  net::ServerThread http;
  std::uint16_t port = 0;

  Impl(GatewayServiceConfig cfg, std::shared_ptr<Translator> translator)
      : config(std::move(cfg)), gateway(config.gateway, std::move(translator)) {
    gateway.set_event_sink([this](const json& event) { events.publish(kTopic, event); });
    routes();
  }

  void routes() {
    using namespace jsonio;
    auto& srv = http.server();
    srv.Post("/intent", net::guarded([this](const httplib::Request& req, httplib::Response& res) {
               auto body = net::parse_body(req);
               require_object(body, "intent request");
               reject_unknown(body, {"text", "conversation_id"}, "intent request");
               auto text = as_string(require(body, "text"), "text");
               reply_view(res, 201, gateway.submit_intent(text, opt_string(body, "conversation_id")));
             }));
    srv.Post(R"(/intent/([^/]+)/clarify)", net::guarded([this](const httplib::Request& req, httplib::Response& res) {
               auto body = net::parse_body(req);
               require_object(body, "clarification answer");
               reject_unknown(body, {"answer"}, "clarification answer");
               auto answer = as_string(require(body, "answer"), "answer");
               reply_view(res, 200, gateway.answer_clarification(req.matches[1], answer));
             }));
    srv.Post(R"(/intent/([^/]+)/lifecycle)", net::guarded([this](const httplib::Request& req, httplib::Response& res) {
               auto body = net::parse_body(req);
               require_object(body, "lifecycle command");
               reject_unknown(body, {"event", "text"}, "lifecycle command");
               auto name = as_string(require(body, "event"), "event");
               auto event = model::parse_lifecycle_event(name);
               if (!event) throw Error(Errc::invalid_argument, "unknown lifecycle event '" + name + "'");
               reply_view(res, 200, gateway.lifecycle_command(req.matches[1], *event, opt_string(body, "text")));
             }));
    srv.Get(R"(/intent/([^/]+))", net::guarded([this](const httplib::Request& req, httplib::Response& res) {
              net::reply_json(res, 200, json(gateway.intent(req.matches[1])));
            }));
    srv.Get("/intents", net::guarded([this](const httplib::Request&, httplib::Response& res) {
              net::reply_json(res, 200, json(gateway.intents()));
            }));
    events.mount(srv, "/stream", [](const httplib::Request&) { return std::string(kTopic); });
  }
};

GatewayService::GatewayService(GatewayServiceConfig config, std::shared_ptr<Translator> translator)
    : impl_(std::make_unique<Impl>(std::move(config), std::move(translator))) {}

GatewayService::~GatewayService() { stop(); }

std::uint16_t GatewayService::start() {
  impl_->port = impl_->http.start(impl_->config.host, impl_->config.port);
  spdlog::info("intent gateway listening on {} ({} translator)", url(), impl_->gateway.translator().name());
  return impl_->port;
}

void GatewayService::stop() {
  impl_->events.close();
  impl_->http.stop();
}

std::uint16_t GatewayService::port() const noexcept { return impl_->port; }

std::string GatewayService::url() const {
  return "http://" + impl_->config.host + ":" + std::to_string(impl_->port);
}

Gateway& GatewayService::gateway() noexcept { return impl_->gateway; }

}  // namespace orion::gateway
