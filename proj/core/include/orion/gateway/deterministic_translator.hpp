#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "orion/gateway/translator.hpp"

namespace orion::gateway {

struct Extraction {
  model::SliceRequirements requirements;
  std::optional<model::SliceType> explicit_type;  // a URLLC/eMBB/mMTC keyword
  bool deictic_area = false;  // "this area" and the like, with no label given
  bool recognized = false;    // any field, keyword or scenario vocabulary
};

// Unit-aware extraction over free text. When a field is mentioned more than
// once the last mention wins.
Extraction extract(std::string_view text);

// Priority: explicit keyword, then delay <= 10 ms or reliability >= 99.9
// (URLLC), then >= 1000 devices or sensor/meter vocabulary (mMTC), then
// >= 50 Mbps or streaming/gaming vocabulary (eMBB). eMBB when nothing matches.
model::SliceType classify_text(std::string_view text, const model::SliceRequirements& req);

inline constexpr std::string_view kAreaQuestion = "Which area?";

// Rule-based translator. Emits one create_session call carrying exactly the
// stated fields, asks for the area when the operator refers to it deictically,
// and refuses text with no slice content at all.
class DeterministicTranslator final : public Translator {
 public:
  std::string name() const override { return "deterministic"; }
  TranslatorDecision propose(const Conversation& conversation,
                             const std::vector<tools::ToolDescriptor>& tools) override;
  model::SliceType classify(const Conversation& conversation, const model::SessionBooking& booking) override;
};

}  // namespace orion::gateway
