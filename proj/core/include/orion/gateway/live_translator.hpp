#pragma once

#include <chrono>
#include <mutex>
#include <string>

#include "orion/gateway/translator.hpp"

namespace orion::gateway {

struct LiveTranslatorConfig {
  std::string base_url;  // http://host:port of an OpenAI-compatible endpoint
  std::string path = "/v1/chat/completions";
  std::string model;
  std::string api_key;  // sent as a bearer token when non-empty
  double temperature = 0.0;
  std::chrono::milliseconds timeout{60000};
};

// Chat-completions adapter. The field-population rules go in as the first
// user message, followed by the conversation. Token usage is accumulated
// across calls.
class LiveTranslator final : public Translator {
 public:
  explicit LiveTranslator(LiveTranslatorConfig config);

  std::string name() const override { return "live:" + config_.model; }
  TranslatorDecision propose(const Conversation& conversation,
                             const std::vector<tools::ToolDescriptor>& tools) override;
  model::SliceType classify(const Conversation& conversation, const model::SessionBooking& booking) override;
  nlohmann::json usage() const override;

 private:
  nlohmann::json complete(nlohmann::json body);

  LiveTranslatorConfig config_;
  mutable std::mutex mu_;
  std::int64_t prompt_tokens_ = 0;
  std::int64_t completion_tokens_ = 0;
  std::int64_t calls_ = 0;
};

}  // namespace orion::gateway
