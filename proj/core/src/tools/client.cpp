#include "net/http.hpp"
#include "orion/tools/server.hpp"

namespace orion::tools {

using nlohmann::json;

ToolClient::ToolClient(std::string base_url, std::chrono::milliseconds timeout)
    : base_url_(std::move(base_url)), timeout_(timeout) {}

std::vector<ToolDescriptor> ToolClient::list_tools() const {
  auto reply = net::request_json(net::parse_url(base_url_), "GET", "/tools", nullptr, "tool server",
                                 {timeout_, timeout_});
  return reply.get<std::vector<ToolDescriptor>>();
}

ToolResult ToolClient::invoke_tool(const ToolCall& call) const {
  json body = call;
  return net::request_json(net::parse_url(base_url_), "POST", "/tools/invoke", &body, "tool server",
                           {timeout_, timeout_})
      .get<ToolResult>();
}

void ToolClient::subscribe_events(const std::string& conversation_id, const std::atomic<bool>& stop,
                                  const std::function<bool(const json&)>& on_event) const {
  auto url = net::parse_url(base_url_);
  url.path = "/events/" + conversation_id;
  net::read_event_stream(url, stop, on_event);
}

}  // namespace orion::tools
