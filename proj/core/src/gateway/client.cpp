#include "net/http.hpp"
#include "orion/gateway/service.hpp"
#include "orion/model/json.hpp"
#include "orion/model/rules.hpp"

namespace orion::gateway {

using nlohmann::json;

GatewayClient::GatewayClient(std::string base_url, std::chrono::milliseconds timeout)
    : base_url_(std::move(base_url)), timeout_(timeout) {}

IntentView GatewayClient::call(const std::string& method, const std::string& path, const json* body) const {
  auto url = net::parse_url(base_url_);
  auto cli = net::make_client(url, {timeout_, timeout_});
  auto res = method == "GET" ? cli->Get(path) : cli->Post(path, body ? body->dump() : "{}", "application/json");
  if (res && res->status >= 200 && res->status < 300) return json::parse(res->body).get<IntentView>();
  if (res) {
    auto parsed = json::parse(res->body, nullptr, false);
    if (parsed.is_object() && parsed.contains("intent") && parsed["intent"].is_object()) {
      return parsed["intent"].get<IntentView>();
    }
  }
  throw net::error_from_result(res, "intent gateway");
}

IntentView GatewayClient::submit_intent(const std::string& text, const std::optional<std::string>& conversation_id) const {
  json body{{"text", text}};
  if (conversation_id) body["conversation_id"] = *conversation_id;
  return call("POST", "/intent", &body);
}

IntentView GatewayClient::answer_clarification(const std::string& id, const std::string& answer) const {
  json body{{"answer", answer}};
  return call("POST", "/intent/" + id + "/clarify", &body);
}

IntentView GatewayClient::lifecycle(const std::string& intent_id, model::LifecycleEvent event,
                                    const std::optional<std::string>& text) const {
  json body{{"event", model::to_string(event)}};
  if (text) body["text"] = *text;
  return call("POST", "/intent/" + intent_id + "/lifecycle", &body);
}

IntentView GatewayClient::intent(const std::string& id) const { return call("GET", "/intent/" + id, nullptr); }

std::vector<IntentView> GatewayClient::intents() const {
  auto reply = net::request_json(net::parse_url(base_url_), "GET", "/intents", nullptr, "intent gateway",
                                 {timeout_, timeout_});
  std::vector<IntentView> out;
  for (const auto& v : reply) out.push_back(v.get<IntentView>());
  return out;
}

}  // namespace orion::gateway
