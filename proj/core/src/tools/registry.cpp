#include "orion/tools/registry.hpp"

#include <array>

#include "orion/error.hpp"
#include "util/json_read.hpp"

namespace orion::tools {

using nlohmann::json;
using namespace jsonio;

namespace {

std::string_view kind_name(model::FieldKind kind) {
  switch (kind) {
    case model::FieldKind::text: return "string";
    case model::FieldKind::integer: return "integer";
    case model::FieldKind::number: return "number";
  }
  return "string";
}

model::FieldKind kind_from(const std::string& name) {
  if (name == "string") return model::FieldKind::text;
  if (name == "integer") return model::FieldKind::integer;
  if (name == "number") return model::FieldKind::number;
  bad("unknown argument type '" + name + "'");
}

std::string_view field_help(model::Field f) {
  using model::Field;
  switch (f) {
    case Field::area_of_service: return "Region label where the slice is provided";
    case Field::duration_s: return "Booking duration in seconds";
    case Field::device_count: return "Number of devices served by the slice";
    case Field::max_dl_thpt_per_device_bps: return "Maximum downlink throughput per device, bits per second";
    case Field::max_ul_thpt_per_device_bps: return "Maximum uplink throughput per device, bits per second";
    case Field::max_dl_thpt_per_slice_bps: return "Maximum downlink throughput of the whole slice, bits per second";
    case Field::max_ul_thpt_per_slice_bps: return "Maximum uplink throughput of the whole slice, bits per second";
    case Field::dl_delay_budget_ms: return "Downlink packet delay budget, milliseconds";
    case Field::ul_delay_budget_ms: return "Uplink packet delay budget, milliseconds";
    case Field::packet_error_rate: return "Packet error rate as a fraction between 0 and 1";
    case Field::availability_pct: return "Service availability, percent";
    case Field::reliability_pct: return "Reliability, percent";
  }
  return "";
}

bool kind_matches(model::FieldKind kind, const json& v) {
  switch (kind) {
    case model::FieldKind::text: return v.is_string();
    case model::FieldKind::integer: return v.is_number_integer();
    case model::FieldKind::number: return v.is_number();
  }
  return false;
}

}  // namespace

bool ToolDescriptor::answers_to(std::string_view tool_name) const {
  if (name == tool_name) return true;
  for (const auto& a : aliases) {
    if (a == tool_name) return true;
  }
  return false;
}

const ArgumentSpec* ToolDescriptor::argument(std::string_view key) const {
  for (const auto& a : arguments) {
    if (a.name == key) return &a;
  }
  return nullptr;
}

void to_json(json& j, const ToolDescriptor& d) {
  auto args = json::array();
  for (const auto& a : d.arguments) {
    args.push_back({{"name", a.name},
                    {"type", kind_name(a.kind)},
                    {"nullable", a.nullable},
                    {"minimum", a.minimum ? json(*a.minimum) : json(nullptr)},
                    {"default", a.default_value}});
  }
  j = json{{"name", d.name}, {"description", d.description}, {"aliases", d.aliases}, {"arguments", args}};
}

void from_json(const json& j, ToolDescriptor& d) {
  require_object(j, "tool descriptor");
  d.name = as_string(require(j, "name"), "name");
  d.description = opt_string(j, "description").value_or("");
  d.aliases.clear();
  if (const auto* aliases = find_non_null(j, "aliases")) {
    for (const auto& a : *aliases) d.aliases.push_back(as_string(a, "aliases"));
  }
  d.arguments.clear();
  for (const auto& a : require(j, "arguments")) {
    require_object(a, "argument");
    ArgumentSpec spec;
    spec.name = as_string(require(a, "name"), "name");
    spec.kind = kind_from(as_string(require(a, "type"), "type"));
    if (const auto* n = find_non_null(a, "nullable")) spec.nullable = as_bool(*n, "nullable");
    if (const auto* m = find_non_null(a, "minimum")) spec.minimum = as_number(*m, "minimum");
    if (auto it = a.find("default"); it != a.end()) spec.default_value = *it;
    d.arguments.push_back(std::move(spec));
  }
}

json to_json_schema(const ToolDescriptor& d) {
  auto props = json::object();
  for (const auto& a : d.arguments) {
    json prop;
    prop["type"] = a.nullable ? json::array({kind_name(a.kind), "null"}) : json(kind_name(a.kind));
    if (auto f = model::field_from_json_key(a.name)) prop["description"] = field_help(*f);
    if (a.minimum) prop["minimum"] = *a.minimum;
    prop["default"] = a.default_value;
    props[a.name] = prop;
  }
  return json{{"type", "object"}, {"properties", props}, {"additionalProperties", false}};
}

ToolDescriptor create_session_descriptor() {
  ToolDescriptor d;
  d.name = kCreateSession;
  d.description =
      "Book a network slice session with the stated QoS requirements. Leave every argument null unless the "
      "operator stated it.";
  d.aliases = {std::string(kCreateSessionAlias)};
  for (auto f : model::kAllFields) {
    ArgumentSpec spec;
    spec.name = model::json_key(f);
    spec.kind = model::kind_of(f);
    if (spec.kind == model::FieldKind::integer) spec.minimum = 1;
    d.arguments.push_back(std::move(spec));
  }
  return d;
}

std::string_view to_string(Outcome outcome) noexcept {
  static constexpr std::array<std::string_view, 3> kNames = {"OK", "REJECTED", "ERROR"};
  return kNames[static_cast<std::size_t>(outcome)];
}

void to_json(json& j, const ToolCall& c) {
  j = json{{"call_id", c.call_id},
           {"conversation_id", c.conversation_id},
           {"tool_name", c.tool_name},
           {"arguments", c.arguments}};
}

void from_json(const json& j, ToolCall& c) {
  require_object(j, "tool call");
  reject_unknown(j, {"call_id", "conversation_id", "tool_name", "arguments"}, "tool call");
  c.call_id = as_string(require(j, "call_id"), "call_id");
  c.conversation_id = opt_string(j, "conversation_id").value_or("");
  c.tool_name = as_string(require(j, "tool_name"), "tool_name");
  c.arguments = require(j, "arguments");
}

void to_json(json& j, const ToolResult& r) {
  j = json{{"call_id", r.call_id},
           {"outcome", to_string(r.outcome)},
           {"payload", r.payload},
           {"status", r.status ? json(*r.status) : json(nullptr)}};
}

void from_json(const json& j, ToolResult& r) {
  require_object(j, "tool result");
  r.call_id = as_string(require(j, "call_id"), "call_id");
  auto outcome = as_string(require(j, "outcome"), "outcome");
  if (outcome == "OK") {
    r.outcome = Outcome::ok;
  } else if (outcome == "REJECTED") {
    r.outcome = Outcome::rejected;
  } else if (outcome == "ERROR") {
    r.outcome = Outcome::error;
  } else {
    bad("unknown outcome '" + outcome + "'");
  }
  r.payload = j.value("payload", json());
  r.status.reset();
  if (const auto* s = find_non_null(j, "status")) r.status = int_in<int>(*s, "status", 100, 599);
}

std::vector<SchemaIssue> schema_issues(const ToolDescriptor& d, const json& arguments) {
  std::vector<SchemaIssue> issues;
  if (!arguments.is_object()) {
    issues.push_back({"", "arguments must be a JSON object"});
    return issues;
  }
  for (const auto& [key, value] : arguments.items()) {
    const auto* spec = d.argument(key);
    if (!spec) {
      issues.push_back({key, "is not an argument of " + d.name});
      continue;
    }
    if (value.is_null()) {
      if (!spec->nullable) issues.push_back({key, "must not be null"});
      continue;
    }
    if (!kind_matches(spec->kind, value)) {
      issues.push_back({key, "must be of type " + std::string(kind_name(spec->kind))});
      continue;
    }
    if (spec->minimum && value.is_number() && value.get<double>() < *spec->minimum) {
      issues.push_back({key, "is below the minimum " + json(*spec->minimum).dump()});
    }
  }
  for (const auto& spec : d.arguments) {
    if (!spec.nullable && !arguments.contains(spec.name)) issues.push_back({spec.name, "is required"});
  }
  return issues;
}

void validate_arguments(const ToolDescriptor& d, const json& arguments) {
  auto issues = schema_issues(d, arguments);
  if (issues.empty()) return;
  std::string detail;
  for (const auto& i : issues) {
    if (!detail.empty()) detail += "; ";
    detail += i.key.empty() ? i.message : i.key + " " + i.message;
  }
  throw Error(Errc::schema_violation, detail);
}

void ToolRegistry::add(ToolDescriptor descriptor, ToolHandler handler) {
  std::vector<std::string> names{descriptor.name};
  names.insert(names.end(), descriptor.aliases.begin(), descriptor.aliases.end());
  for (const auto& n : names) {
    if (find(n)) throw Error(Errc::conflict, "tool name '" + n + "' already registered");
  }
  entries_.push_back({std::move(descriptor), std::move(handler)});
}

std::vector<ToolDescriptor> ToolRegistry::list() const {
  std::vector<ToolDescriptor> out;
  out.reserve(entries_.size());
  for (const auto& e : entries_) out.push_back(e.descriptor);
  return out;
}

const ToolDescriptor* ToolRegistry::find(std::string_view name) const {
  for (const auto& e : entries_) {
    if (e.descriptor.answers_to(name)) return &e.descriptor;
  }
  return nullptr;
}

ToolResult ToolRegistry::invoke(const ToolCall& call) const {
  for (const auto& e : entries_) {
    if (!e.descriptor.answers_to(call.tool_name)) continue;
    validate_arguments(e.descriptor, call.arguments);
    auto result = e.handler(call);
    result.call_id = call.call_id;
    return result;
  }
  throw Error(Errc::unknown_tool, "no tool named '" + call.tool_name + "'");
}

}  // namespace orion::tools
