#include "orion/gateway/replay_translator.hpp"

#include <fstream>

#include "orion/error.hpp"
#include "orion/model/json.hpp"
#include "util/json_read.hpp"

namespace orion::gateway {

using nlohmann::json;
using namespace jsonio;

void to_json(json& j, const TranscriptEntry& e) {
  auto calls = json::array();
  for (const auto& c : e.tool_calls) calls.push_back({{"tool_name", c.tool_name}, {"arguments", c.arguments}});
  j = json{{"id", e.id}, {"tool_calls", calls}};
  if (e.refusal) j["refusal"] = *e.refusal;
  if (e.clarification) j["clarification"] = *e.clarification;
  if (e.slice_type) j["slice_type"] = model::to_string(*e.slice_type);
}

void from_json(const json& j, TranscriptEntry& e) {
  require_object(j, "transcript entry");
  reject_unknown(j, {"id", "tool_calls", "refusal", "clarification", "slice_type"}, "transcript entry");
  e = {};
  e.id = as_string(require(j, "id"), "id");
  if (const auto* calls = find_non_null(j, "tool_calls")) {
    if (!calls->is_array()) bad("tool_calls must be an array");
    for (const auto& c : *calls) {
      require_object(c, "recorded tool call");
      tools::ToolCall call;
      call.conversation_id = e.id;
      call.tool_name = as_string(require(c, "tool_name"), "tool_name");
      // Kept verbatim: malformed arguments are evidence for the rule checker.
      if (auto it = c.find("arguments"); it != c.end()) call.arguments = *it;
      e.tool_calls.push_back(std::move(call));
    }
  }
  e.refusal = opt_string(j, "refusal");
  e.clarification = opt_string(j, "clarification");
  if (auto t = opt_string(j, "slice_type")) {
    e.slice_type = model::parse_slice_type(*t);
    if (!e.slice_type) bad("unknown slice_type '" + *t + "'");
  }
}

std::map<std::string, TranscriptEntry> load_transcript(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::io_error, "cannot read transcript " + path.string());
  std::map<std::string, TranscriptEntry> out;
  std::string line;
  int n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      auto e = json::parse(line).get<TranscriptEntry>();
      auto id = e.id;
      out.insert_or_assign(id, std::move(e));
    } catch (const json::exception& ex) {
      throw Error(Errc::schema_violation, path.string() + ":" + std::to_string(n) + ": " + ex.what());
    } catch (const Error& ex) {
      throw Error(Errc::schema_violation, path.string() + ":" + std::to_string(n) + ": " + ex.detail());
    }
  }
  return out;
}

void write_transcript(const std::filesystem::path& path, const std::vector<TranscriptEntry>& entries) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw Error(Errc::io_error, "cannot write transcript " + path.string());
  for (const auto& e : entries) out << json(e).dump() << '\n';
  if (!out) throw Error(Errc::io_error, "write failed for " + path.string());
}

ReplayTranslator::ReplayTranslator(std::map<std::string, TranscriptEntry> entries) : entries_(std::move(entries)) {}

ReplayTranslator::ReplayTranslator(const std::filesystem::path& path) : entries_(load_transcript(path)) {}

const TranscriptEntry& ReplayTranslator::entry(const std::string& conversation_id) const {
  auto it = entries_.find(conversation_id);
  if (it == entries_.end()) {
    throw Error(Errc::translation_failed, "no recorded decision for conversation '" + conversation_id + "'");
  }
  return it->second;
}

TranslatorDecision ReplayTranslator::propose(const Conversation& conversation,
                                             const std::vector<tools::ToolDescriptor>&) {
  const auto& e = entry(conversation.conversation_id);
  if (e.refusal) return Refusal{*e.refusal};
  if (e.clarification && conversation.clarification_rounds == 0) return Clarification{*e.clarification};
  ToolCalls out;
  for (auto call : e.tool_calls) {
    call.conversation_id = conversation.conversation_id;
    out.calls.push_back(std::move(call));
  }
  return out;
}

model::SliceType ReplayTranslator::classify(const Conversation& conversation, const model::SessionBooking&) {
  const auto& e = entry(conversation.conversation_id);
  if (!e.slice_type) {
    throw Error(Errc::translation_failed, "no recorded slice type for '" + conversation.conversation_id + "'");
  }
  return *e.slice_type;
}

}  // namespace orion::gateway
