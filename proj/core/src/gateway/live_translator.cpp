#include "orion/gateway/live_translator.hpp"

#include <algorithm>
#include <cctype>

#include "net/http.hpp"
#include "orion/error.hpp"
#include "orion/model/json.hpp"

namespace orion::gateway {

using nlohmann::json;

namespace {

json chat_messages(const Conversation& c) {
  auto msgs = json::array();
  msgs.push_back({{"role", "user"}, {"content", std::string(system_prompt())}});
  for (const auto& t : c.turns) {
    switch (t.role) {
      case Role::operator_: msgs.push_back({{"role", "user"}, {"content", t.content}}); break;
      case Role::translator: msgs.push_back({{"role", "assistant"}, {"content", t.content}}); break;
      case Role::system:
      case Role::tool: msgs.push_back({{"role", "user"}, {"content", std::string(to_string(t.role)) + ": " + t.content}}); break;
    }
  }
  return msgs;
}

const json& first_message(const json& reply) {
  if (!reply.is_object() || !reply.contains("choices") || !reply["choices"].is_array() || reply["choices"].empty() ||
      !reply["choices"][0].contains("message")) {
    throw Error(Errc::translation_failed, "model reply has no choices[0].message");
  }
  return reply["choices"][0]["message"];
}

std::string content_of(const json& message) {
  auto it = message.find("content");
  return it != message.end() && it->is_string() ? it->get<std::string>() : std::string();
}

}  // namespace

LiveTranslator::LiveTranslator(LiveTranslatorConfig config) : config_(std::move(config)) {
  net::parse_url(config_.base_url);
  if (config_.model.empty()) throw Error(Errc::invalid_config, "live translator needs a model name");
}

json LiveTranslator::complete(json body) {
  auto url = net::parse_url(config_.base_url);
  net::ClientOptions opts;
  opts.read_timeout = config_.timeout;
  auto client = net::make_client(url, opts);
  httplib::Headers headers;
  if (!config_.api_key.empty()) headers.emplace("Authorization", "Bearer " + config_.api_key);
  body["model"] = config_.model;
  body["temperature"] = config_.temperature;
  auto res = client->Post(config_.path, headers, body.dump(), "application/json");
  if (!res || res->status < 200 || res->status >= 300) {
    auto err = net::error_from_result(res, "model endpoint");
    throw Error(Errc::translation_failed, err.detail());
  }
  json reply;
  try {
    reply = json::parse(res->body);
  } catch (const json::exception& e) {
    throw Error(Errc::translation_failed, std::string("model reply is not JSON: ") + e.what());
  }
  if (auto u = reply.find("usage"); u != reply.end() && u->is_object()) {
    std::lock_guard lock(mu_);
    prompt_tokens_ += u->value("prompt_tokens", std::int64_t{0});
    completion_tokens_ += u->value("completion_tokens", std::int64_t{0});
  }
  std::lock_guard lock(mu_);
  ++calls_;
  return reply;
}

TranslatorDecision LiveTranslator::propose(const Conversation& conversation,
                                           const std::vector<tools::ToolDescriptor>& tools) {
  if (tools.empty()) throw Error(Errc::invalid_argument, "no tool descriptors offered");
  auto fns = json::array();
  for (const auto& d : tools) {
    fns.push_back({{"type", "function"},
                   {"function", {{"name", d.name}, {"description", d.description}, {"parameters", tools::to_json_schema(d)}}}});
  }
  auto reply = complete({{"messages", chat_messages(conversation)}, {"tools", fns}});
  const auto& msg = first_message(reply);

  if (auto tc = msg.find("tool_calls"); tc != msg.end() && tc->is_array() && !tc->empty()) {
    ToolCalls out;
    for (const auto& c : *tc) {
      tools::ToolCall call;
      call.conversation_id = conversation.conversation_id;
      const auto& fn = c.contains("function") ? c["function"] : c;
      call.tool_name = fn.value("name", "");
      auto args = fn.find("arguments");
      if (args == fn.end()) {
        call.arguments = json::object();
      } else if (args->is_string()) {
        // Left as the raw string when it does not parse, so schema checks flag it.
        auto parsed = json::parse(args->get<std::string>(), nullptr, false);
        call.arguments = parsed.is_discarded() ? *args : parsed;
      } else {
        call.arguments = *args;
      }
      out.calls.push_back(std::move(call));
    }
    return out;
  }
  auto text = content_of(msg);
  if (text.find('?') != std::string::npos) return Clarification{text};
  return Refusal{text.empty() ? "model returned neither a tool call nor text" : text};
}

model::SliceType LiveTranslator::classify(const Conversation& conversation, const model::SessionBooking& booking) {
  auto msgs = chat_messages(conversation);
  msgs.push_back({{"role", "user"},
                  {"content", "The session was booked with these requirements: " + json(booking.requirements).dump() +
                                  "\nClassify the traffic. Answer with exactly one of eMBB, URLLC or mMTC."}});
  auto reply = complete({{"messages", msgs}});
  auto text = content_of(first_message(reply));
  std::string lowered = text;
  std::transform(lowered.begin(), lowered.end(), lowered.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  std::size_t best = std::string::npos;
  std::optional<model::SliceType> found;
  for (auto t : model::kSliceTypes) {
    std::string name(model::to_string(t));
    std::transform(name.begin(), name.end(), name.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    auto pos = lowered.find(name);
    if (pos < best) {
      best = pos;
      found = t;
    }
  }
  if (!found) throw Error(Errc::translation_failed, "no slice type in model reply: " + text);
  return *found;
}

json LiveTranslator::usage() const {
  std::lock_guard lock(mu_);
  return {{"calls", calls_},
          {"prompt_tokens", prompt_tokens_},
          {"completion_tokens", completion_tokens_},
          {"total_tokens", prompt_tokens_ + completion_tokens_}};
}

}  // namespace orion::gateway
