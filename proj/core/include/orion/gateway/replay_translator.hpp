#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "orion/gateway/translator.hpp"

namespace orion::gateway {

// One recorded translator exchange. Transcript files hold one JSON object per
// line: {"id", "tool_calls": [{"tool_name", "arguments"}], "refusal"?,
// "clarification"?, "slice_type"?}.
struct TranscriptEntry {
  std::string id;
  std::vector<tools::ToolCall> tool_calls;
  std::optional<std::string> refusal;
  std::optional<std::string> clarification;
  std::optional<model::SliceType> slice_type;

  bool operator==(const TranscriptEntry&) const = default;
};

void to_json(nlohmann::json& j, const TranscriptEntry& e);
void from_json(const nlohmann::json& j, TranscriptEntry& e);

// Throws Error(io_error) when unreadable and Error(schema_violation) naming
// the line on malformed content. Later duplicates of an id replace earlier ones.
std::map<std::string, TranscriptEntry> load_transcript(const std::filesystem::path& path);
void write_transcript(const std::filesystem::path& path, const std::vector<TranscriptEntry>& entries);

// Replays recorded decisions keyed by conversation id. A recorded
// clarification is returned on the first round only; once answered the
// recorded tool calls follow.
class ReplayTranslator final : public Translator {
 public:
  explicit ReplayTranslator(std::map<std::string, TranscriptEntry> entries);
  explicit ReplayTranslator(const std::filesystem::path& path);

  std::string name() const override { return "replay"; }
  TranslatorDecision propose(const Conversation& conversation,
                             const std::vector<tools::ToolDescriptor>& tools) override;
  model::SliceType classify(const Conversation& conversation, const model::SessionBooking& booking) override;

 private:
  const TranscriptEntry& entry(const std::string& conversation_id) const;

  std::map<std::string, TranscriptEntry> entries_;
};

}  // namespace orion::gateway
