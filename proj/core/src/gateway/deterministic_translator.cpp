#include "orion/gateway/deterministic_translator.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <regex>

#include "orion/error.hpp"
#include "orion/model/json.hpp"

namespace orion::gateway {

namespace {

using model::Field;
using model::SliceRequirements;
using model::SliceType;

enum class Dir { none, dl, ul };

std::string lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r\n.!?");
  return std::string(s.substr(b, e - b + 1));
}

#define ORION_RE(name, pattern) \
  const std::regex& name() {    \
    static const std::regex r(pattern, std::regex::ECMAScript | std::regex::optimize); \
    return r;                   \
  }

ORION_RE(thpt_re, R"((\d+(?:\.\d+)?)\s*(gbps|mbps|kbps|bps|gbit/s|mbit/s|kbit/s)\b)")
ORION_RE(delay_re, R"((\d+(?:\.\d+)?)\s*(ms|milliseconds?)\b)")
ORION_RE(pct_re, R"((\d+(?:\.\d+)?)\s*(%|percent\b))")
ORION_RE(per_re,
         R"(\b(?:packet error rate|error rate|packet loss rate|per)(?:\s+(?:of|below|under|at most|up to|no more than|<=?))?\s*(?::\s*)?(10\^-?\d+|\d+(?:\.\d+)?(?:e-?\d+)?)(?![\w%]|\.\d))")
ORION_RE(duration_re,
         R"(\b(?:for|lasting|over|during)\s+(?:the\s+next\s+|a\s+period\s+of\s+)?(\d+(?:\.\d+)?)\s*(weeks?|days?|hours?|hrs?|h|minutes?|mins?|seconds?|secs?|s)\b)")
ORION_RE(count_re,
         R"((\d{1,3}(?:,\d{3})+|\d+(?:\.\d+)?)\s*(k|thousand|m|million)?\s+(?:[a-z-]+\s+){0,2}?(devices|sensors|meters|ues|users|terminals|endpoints|nodes|trackers|cameras|connections|things|robots|machines|vehicles)\b)")
ORION_RE(dir_after_re, R"(^\s*(?:on\s+the\s+|in\s+the\s+|of\s+)?(downlink|uplink|dl|ul|download|upload)\b)")
ORION_RE(dir_word_re, R"(\b(downlink|uplink|dl|ul|download|upload)\b)")
ORION_RE(pct_after_re, R"(^\s*(?:of\s+)?(availability|available|uptime|reliability|reliable)\b)")
ORION_RE(pct_word_re, R"(\b(availability|available|uptime|reliability|reliable)\b)")
ORION_RE(device_scope_re,
         R"(\b(?:per|each)[- ](?:device|ue|sensor|meter|user|terminal|node|tracker|endpoint|connection|camera|robot)\b|\beach\b)")
ORION_RE(slice_scope_re, R"(\b(?:per[- ]slice|aggregate|in total|total|slice-wide)\b)")
ORION_RE(deictic_re, R"(\b(?:this|that|my|our|the same)\s+(?:area|region|zone|location|site)\b)")
ORION_RE(type_re, R"(\b(urllc|embb|mmtc)\b)")
ORION_RE(urllc_words_re, R"(\bultra[- ]reliable\b)")
ORION_RE(mmtc_words_re,
         R"(\b(?:sensors?|meters?|metering|monitoring|iot|smart city|telemetry|trackers?|massive machine)\b)")
ORION_RE(embb_words_re,
         R"(\b(?:streaming|gaming|video|4k|8k|vr|ar|media|broadcast|broadband|journalism)\b)")
ORION_RE(single_token_re, R"(^[A-Za-z0-9][A-Za-z0-9_-]*$)")

#undef ORION_RE

bool is_clause_break(const std::string& s, std::size_t i) {
  char c = s[i];
  auto digit = [&](std::size_t k) { return k < s.size() && std::isdigit(static_cast<unsigned char>(s[k])); };
  if (c == ',') return !(i > 0 && digit(i - 1) && digit(i + 1));  // thousands separator
  if (c == ';' || c == '\n') return true;
  return c == '.' && (i + 1 == s.size() || std::isspace(static_cast<unsigned char>(s[i + 1])));
}

std::size_t clause_start(const std::string& s, std::size_t pos) {
  for (std::size_t i = pos; i > 0; --i) {
    if (is_clause_break(s, i - 1)) return i;
  }
  return 0;
}

std::size_t clause_end(const std::string& s, std::size_t pos) {
  for (std::size_t i = pos; i < s.size(); ++i) {
    if (is_clause_break(s, i)) return i;
  }
  return s.size();
}

Dir dir_of(const std::string& w) {
  if (w == "downlink" || w == "dl" || w == "download") return Dir::dl;
  if (w == "uplink" || w == "ul" || w == "upload") return Dir::ul;
  return Dir::none;
}

struct Quantity {
  enum Kind { thpt, delay, pct } kind;
  std::size_t begin, end;  // end includes a consumed trailing keyword
  double value;
  std::string unit;
};

// Last regex match of `r` inside [from, to), or an empty string.
std::string last_word(const std::string& s, std::size_t from, std::size_t to, const std::regex& r) {
  if (from >= to) return {};
  std::string found;
  auto b = s.begin() + static_cast<std::ptrdiff_t>(from);
  auto e = s.begin() + static_cast<std::ptrdiff_t>(to);
  for (std::sregex_iterator it(b, e, r), end; it != end; ++it) found = (*it)[1].str();
  return found;
}

double thpt_multiplier(const std::string& unit) {
  if (unit[0] == 'g') return 1e9;
  if (unit[0] == 'm') return 1e6;
  if (unit[0] == 'k') return 1e3;
  return 1.0;
}

std::int64_t duration_seconds(double v, const std::string& unit) {
  double mult = 1.0;
  if (unit.starts_with("w")) mult = 7 * 86400.0;
  else if (unit.starts_with("d")) mult = 86400.0;
  else if (unit.starts_with("h")) mult = 3600.0;
  else if (unit.starts_with("m")) mult = 60.0;
  return std::llround(v * mult);
}

double parse_per(const std::string& s) {
  if (auto caret = s.find('^'); caret != std::string::npos) return std::pow(10.0, std::stod(s.substr(caret + 1)));
  return std::stod(s);
}

std::int64_t parse_count(const std::string& digits, const std::string& suffix) {
  std::string plain;
  for (char c : digits) {
    if (c != ',') plain += c;
  }
  double v = std::stod(plain);
  if (suffix == "k" || suffix == "thousand") v *= 1e3;
  if (suffix == "m" || suffix == "million") v *= 1e6;
  return std::llround(v);
}

bool overlaps(const std::vector<std::pair<std::size_t, std::size_t>>& spans, std::size_t b, std::size_t e) {
  return std::any_of(spans.begin(), spans.end(), [&](const auto& s) { return b < s.second && s.first < e; });
}

std::optional<std::string> area_in(std::string_view original) {
  std::string text(original);
  std::optional<std::string> area;
  std::size_t at = 0;
  auto consider = [&](const std::regex& r) {
    for (std::sregex_iterator it(text.begin(), text.end(), r), end; it != end; ++it) {
      std::string label = (*it)[1].str();
      auto l = lower(label);
      if (l == "this" || l == "that" || l == "my" || l == "our" || l == "same" || l == "of") continue;
      auto pos = static_cast<std::size_t>(it->position(1));
      if (!area || pos >= at) {
        area = label;
        at = pos;
      }
    }
  };
  // Case-insensitive keywords with the label's original case preserved.
  static const std::regex label_ci(R"(\b(?:in|for|covering|across|at)\s+(?:the\s+)?area\s+([A-Za-z0-9][A-Za-z0-9_-]*))",
                                   std::regex::ECMAScript | std::regex::icase);
  static const std::regex suffix_ci(
      R"(\b(?:in|across|at|around|covering)\s+(?:the\s+)?([A-Za-z0-9][A-Za-z0-9_-]*)\s+(?:area|zone|district|region)\b)",
      std::regex::ECMAScript | std::regex::icase);
  consider(label_ci);
  consider(suffix_ci);
  return area;
}

}  // namespace

Extraction extract(std::string_view original) {
  Extraction ex;
  auto& req = ex.requirements;
  const std::string s = lower(original);
  std::vector<std::pair<std::size_t, std::size_t>> consumed;

  std::vector<Quantity> qs;
  auto collect = [&](const std::regex& r, Quantity::Kind kind) {
    for (std::sregex_iterator it(s.begin(), s.end(), r), end; it != end; ++it) {
      auto b = static_cast<std::size_t>(it->position(0));
      qs.push_back({kind, b, b + static_cast<std::size_t>(it->length(0)), std::stod((*it)[1].str()), (*it)[2].str()});
    }
  };
  collect(thpt_re(), Quantity::thpt);
  collect(delay_re(), Quantity::delay);
  collect(pct_re(), Quantity::pct);
  std::sort(qs.begin(), qs.end(), [](const Quantity& a, const Quantity& b) { return a.begin < b.begin; });

  std::size_t prev_end = 0;
  for (auto& q : qs) {
    consumed.emplace_back(q.begin, q.end);
    std::size_t from = std::max(prev_end, clause_start(s, q.begin));
    if (q.kind == Quantity::pct) {
      std::smatch m;
      std::string word;
      auto tail = s.substr(q.end);
      if (std::regex_search(tail, m, pct_after_re())) {
        word = m[1].str();
        q.end += static_cast<std::size_t>(m.length(0));
      } else {
        word = last_word(s, from, q.begin, pct_word_re());
      }
      prev_end = q.end;
      if (word.empty()) continue;
      if (word.starts_with("reliab")) req.reliability_pct = q.value;
      else req.availability_pct = q.value;
      continue;
    }

    Dir dir = Dir::none;
    std::smatch m;
    auto tail = s.substr(q.end);
    if (std::regex_search(tail, m, dir_after_re())) {
      dir = dir_of(m[1].str());
      q.end += static_cast<std::size_t>(m.length(0));
    } else {
      dir = dir_of(last_word(s, from, q.begin, dir_word_re()));
    }
    prev_end = q.end;
    bool ul = dir == Dir::ul;

    if (q.kind == Quantity::delay) {
      (ul ? req.ul_delay_budget_ms : req.dl_delay_budget_ms) = q.value;
      continue;
    }
    auto bps = std::llround(q.value * thpt_multiplier(q.unit));
    auto cb = clause_start(s, q.begin);
    auto clause = s.substr(cb, clause_end(s, q.begin) - cb);
    bool per_device = !std::regex_search(clause, slice_scope_re()) && std::regex_search(clause, device_scope_re());
    if (per_device) (ul ? req.max_ul_thpt_per_device_bps : req.max_dl_thpt_per_device_bps) = bps;
    else (ul ? req.max_ul_thpt_per_slice_bps : req.max_dl_thpt_per_slice_bps) = bps;
  }

  for (std::sregex_iterator it(s.begin(), s.end(), per_re()), end; it != end; ++it) {
    auto b = static_cast<std::size_t>(it->position(1));
    auto e = b + static_cast<std::size_t>(it->length(1));
    if (overlaps(consumed, b, e)) continue;
    double v = parse_per((*it)[1].str());
    if (v > 0.0 && v < 1.0) req.packet_error_rate = v;
    consumed.emplace_back(b, e);
  }

  for (std::sregex_iterator it(s.begin(), s.end(), duration_re()), end; it != end; ++it) {
    auto b = static_cast<std::size_t>(it->position(1));
    auto e = static_cast<std::size_t>(it->position(0) + it->length(0));
    if (overlaps(consumed, b, e)) continue;
    req.duration_s = duration_seconds(std::stod((*it)[1].str()), (*it)[2].str());
    consumed.emplace_back(b, e);
  }

  for (std::sregex_iterator it(s.begin(), s.end(), count_re()), end; it != end; ++it) {
    auto b = static_cast<std::size_t>(it->position(1));
    auto e = b + static_cast<std::size_t>(it->length(1));
    if (overlaps(consumed, b, e)) continue;
    req.device_count = parse_count((*it)[1].str(), (*it)[2].str());
  }

  req.area_of_service = area_in(original);
  ex.deictic_area = !req.area_of_service && std::regex_search(s, deictic_re());

  std::string last;
  for (std::sregex_iterator it(s.begin(), s.end(), type_re()), end; it != end; ++it) last = (*it)[1].str();
  if (!last.empty()) ex.explicit_type = model::parse_slice_type(last);
  else if (std::regex_search(s, urllc_words_re())) ex.explicit_type = SliceType::urllc;

  bool vocab = std::regex_search(s, mmtc_words_re()) || std::regex_search(s, embb_words_re());
  ex.recognized = !(req == SliceRequirements{}) || ex.explicit_type || vocab || ex.deictic_area;
  return ex;
}

SliceType classify_text(std::string_view text, const SliceRequirements& req) {
  const std::string s = lower(text);
  std::string last;
  for (std::sregex_iterator it(s.begin(), s.end(), type_re()), end; it != end; ++it) last = (*it)[1].str();
  if (!last.empty()) {
    if (auto t = model::parse_slice_type(last)) return *t;
  }
  if (std::regex_search(s, urllc_words_re())) return SliceType::urllc;

  auto tight = [](const std::optional<double>& d) { return d && *d <= 10.0; };
  if (tight(req.dl_delay_budget_ms) || tight(req.ul_delay_budget_ms) ||
      (req.reliability_pct && *req.reliability_pct >= 99.9)) {
    return SliceType::urllc;
  }
  if ((req.device_count && *req.device_count >= 1000) || std::regex_search(s, mmtc_words_re())) {
    return SliceType::mmtc;
  }
  auto fast = [](const std::optional<std::int64_t>& t) { return t && *t >= 50'000'000; };
  if (fast(req.max_dl_thpt_per_slice_bps) || fast(req.max_ul_thpt_per_slice_bps) ||
      fast(req.max_dl_thpt_per_device_bps) || fast(req.max_ul_thpt_per_device_bps) ||
      std::regex_search(s, embb_words_re())) {
    return SliceType::embb;
  }
  return SliceType::embb;
}

namespace {

std::string joined_operator_text(const Conversation& c) {
  std::string out;
  for (const auto& t : c.operator_texts()) {
    if (!out.empty()) out += '\n';
    out += t;
  }
  return out;
}

// A bare label typed in reply to the area question.
std::optional<std::string> area_answer(const Conversation& c) {
  std::optional<std::string> area;
  for (std::size_t i = 1; i < c.turns.size(); ++i) {
    const auto& prev = c.turns[i - 1];
    const auto& turn = c.turns[i];
    if (turn.role != Role::operator_ || prev.role != Role::translator || prev.content != kAreaQuestion) continue;
    auto answer = trim(turn.content);
    if (std::regex_match(answer, single_token_re())) area = answer;
  }
  return area;
}

}  // namespace

TranslatorDecision DeterministicTranslator::propose(const Conversation& conversation,
                                                    const std::vector<tools::ToolDescriptor>& tools) {
  if (tools.empty()) throw Error(Errc::invalid_argument, "no tool descriptors offered");
  auto it = std::find_if(tools.begin(), tools.end(),
                         [](const tools::ToolDescriptor& d) { return d.answers_to(tools::kCreateSession); });
  if (it == tools.end()) return Refusal{"no slice booking tool is available"};

  auto ex = extract(joined_operator_text(conversation));
  if (auto answered = area_answer(conversation); answered && !ex.requirements.area_of_service) {
    ex.requirements.area_of_service = answered;
    ex.deictic_area = false;
  }
  if (!ex.recognized) return Refusal{"no slice requirements found in the request"};
  if (ex.deictic_area) return Clarification{std::string(kAreaQuestion)};

  tools::ToolCall call;
  call.conversation_id = conversation.conversation_id;
  call.tool_name = it->name;
  call.arguments = nlohmann::json(ex.requirements);
  return ToolCalls{{std::move(call)}};
}

SliceType DeterministicTranslator::classify(const Conversation& conversation, const model::SessionBooking& booking) {
  return classify_text(joined_operator_text(conversation), booking.requirements);
}

}  // namespace orion::gateway
