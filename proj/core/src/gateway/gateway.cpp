#include "orion/gateway/gateway.hpp"

#include <spdlog/spdlog.h>

#include <cstdio>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <thread>

#include "orion/a1/service.hpp"
#include "orion/booking/service.hpp"
#include "orion/model/json.hpp"
#include "orion/model/rules.hpp"
#include "orion/rapp/service.hpp"
#include "orion/tools/server.hpp"
#include "util/json_read.hpp"

namespace orion::gateway {

using nlohmann::json;
using Clock = std::chrono::steady_clock;

std::string_view to_string(Role role) noexcept {
  switch (role) {
    case Role::operator_: return "operator";
    case Role::system: return "system";
    case Role::translator: return "translator";
    case Role::tool: return "tool";
  }
  return "operator";
}

std::vector<std::string> Conversation::operator_texts() const {
  std::vector<std::string> out;
  for (const auto& t : turns) {
    if (t.role == Role::operator_) out.push_back(t.content);
  }
  return out;
}

void to_json(json& j, const IntentView& v) {
  j = v.record;
  j["pendingClarification"] = v.pending_clarification ? json(*v.pending_clarification) : json(nullptr);
  if (v.error) {
    j["error"] = {{"code", to_string(v.error->code)},
                  {"detail", v.error->detail},
                  {"cause", v.error->cause ? json(to_string(*v.error->cause)) : json(nullptr)}};
  } else {
    j["error"] = nullptr;
  }
  j["refusal"] = v.refusal ? json(*v.refusal) : json(nullptr);
  j["sliceType"] = v.slice_type ? json(*v.slice_type) : json(nullptr);
  j["observedCalls"] = v.observed_calls;
  j["policyStatus"] = v.policy_status ? json(*v.policy_status) : json(nullptr);
  j["policy"] = v.policy ? json(*v.policy) : json(nullptr);
  j["usage"] = v.usage;
}

void from_json(const json& j, IntentView& v) {
  using namespace jsonio;
  require_object(j, "intent view");
  v = {};
  json record = j;
  for (const char* k : {"pendingClarification", "error", "refusal", "sliceType", "observedCalls", "policyStatus",
                        "policy", "usage"}) {
    record.erase(k);
  }
  v.record = model::parse_as<model::IntentRecord>(record);
  v.pending_clarification = opt_string(j, "pendingClarification");
  if (const auto* e = find_non_null(j, "error")) {
    IntentError err;
    auto code = as_string(require(*e, "code"), "code");
    err.code = errc_from_string(code).value_or(Errc::downstream_error);
    err.detail = opt_string(*e, "detail").value_or("");
    if (auto cause = opt_string(*e, "cause")) err.cause = errc_from_string(*cause);
    v.error = err;
  }
  v.refusal = opt_string(j, "refusal");
  if (const auto* t = find_non_null(j, "sliceType")) v.slice_type = model::parse_as<model::SliceType>(*t);
  if (const auto* calls = find_non_null(j, "observedCalls")) {
    for (const auto& c : *calls) v.observed_calls.push_back(c.get<tools::ToolCall>());
  }
  if (const auto* s = find_non_null(j, "policyStatus")) v.policy_status = s->get<a1::PolicyStatus>();
  if (const auto* p = find_non_null(j, "policy")) v.policy = model::parse_as<model::A1Policy>(*p);
  if (auto it = j.find("usage"); it != j.end()) v.usage = *it;
}

namespace {

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

// Thrown inside the pipeline and turned into IntentView::error.
struct PipelineFailure {
  IntentError error;
};

[[noreturn]] void fail(Errc code, std::string detail, std::optional<Errc> cause = std::nullopt) {
  throw PipelineFailure{IntentError{code, std::move(detail), cause}};
}

std::string describe(const TranslatorDecision& d) {
  if (const auto* calls = std::get_if<ToolCalls>(&d)) {
    auto arr = json::array();
    for (const auto& c : calls->calls) arr.push_back({{"tool_name", c.tool_name}, {"arguments", c.arguments}});
    return json{{"tool_calls", arr}}.dump();
  }
  if (const auto* q = std::get_if<Clarification>(&d)) return q->question;
  return "refused: " + std::get<Refusal>(d).reason;
}

bool ignorable_on_cleanup(Errc code) {
  return code == Errc::not_found || code == Errc::already_released || code == Errc::unknown_policy;
}

}  // namespace

struct Gateway::Impl {
  struct Entry {
    std::mutex mu;  // serializes work on one conversation
    Conversation conversation;
    IntentView view;
    std::optional<model::SessionBooking> booking;
  };

  GatewayConfig config;
  std::shared_ptr<Translator> translator;
  tools::ToolClient tools;
  rapp::RappClient rapp;
  a1::MediatorClient mediator;
  booking::BookingClient bookings;

  mutable std::shared_mutex registry_mu;
  std::map<std::string, std::shared_ptr<Entry>> by_intent;
  std::map<std::string, std::string> by_conversation;
  std::vector<std::string> order;
  std::uint64_t next_intent = 1;
  std::uint64_t next_conversation = 1;

  std::mutex descriptors_mu;
  std::vector<tools::ToolDescriptor> descriptors;

  std::mutex sink_mu;
  EventSink sink;

  Impl(GatewayConfig cfg, std::shared_ptr<Translator> t)
      : config(std::move(cfg)),
        translator(std::move(t)),
        tools(config.tool_url, config.downstream_timeout),
        rapp(config.rapp_url, config.downstream_timeout),
        mediator(config.mediator_url, config.downstream_timeout),
        bookings(config.booking_url, config.downstream_timeout) {}

  void emit(const std::string& kind, const Entry& e, json payload) {
    EventSink s;
    {
      std::lock_guard lock(sink_mu);
      s = sink;
    }
    if (!s) return;
    payload["kind"] = kind;
    payload["intentId"] = e.view.record.intent_id;
    payload["conversationId"] = e.view.record.conversation_id;
    try {
      s(payload);
    } catch (const std::exception& ex) {
      spdlog::warn("gateway event sink: {}", ex.what());
    }
  }

  void set_state(Entry& e, model::IntentState state) {
    e.view.record.state = state;
    emit("state_change", e, {{"state", state}});
  }

  std::shared_ptr<Entry> find(const std::string& id) const {
    std::shared_lock lock(registry_mu);
    if (auto it = by_intent.find(id); it != by_intent.end()) return it->second;
    if (auto it = by_conversation.find(id); it != by_conversation.end()) return by_intent.at(it->second);
    throw Error(Errc::unknown_intent, "no intent or conversation '" + id + "'");
  }

  std::vector<tools::ToolDescriptor> tool_descriptors() {
    std::lock_guard lock(descriptors_mu);
    if (descriptors.empty()) {
      try {
        descriptors = tools.list_tools();
      } catch (const Error& ex) {
        fail(Errc::downstream_error, "tool listing failed: " + ex.detail(), ex.code());
      }
    }
    return descriptors;
  }

  void release_quietly(const std::string& session_id) {
    try {
      bookings.release_session(session_id);
    } catch (const Error& ex) {
      if (!ignorable_on_cleanup(ex.code())) spdlog::warn("releasing session {}: {}", session_id, ex.what());
    }
  }

  // Translator phase 1, tool execution, phase 2 and policy generation. On
  // success the entry holds the booking and the policy; state is untouched.
  void run_pipeline(Entry& e) {
    auto& v = e.view;
    v.error.reset();
    v.refusal.reset();
    v.observed_calls.clear();
    auto t0 = Clock::now();

    auto descriptors = tool_descriptors();
    TranslatorDecision decision;
    try {
      decision = translator->propose(e.conversation, descriptors);
    } catch (const Error& ex) {
      fail(Errc::translation_failed, ex.detail(), ex.code());
    } catch (const std::exception& ex) {
      fail(Errc::translation_failed, ex.what());
    }
    e.conversation.turns.push_back({Role::translator, describe(decision)});

    if (const auto* q = std::get_if<Clarification>(&decision)) {
      if (e.conversation.clarification_rounds >= config.clarification_bound) {
        fail(Errc::translation_failed, "clarification bound of " + std::to_string(config.clarification_bound) +
                                           " rounds reached: " + q->question);
      }
      ++e.conversation.clarification_rounds;
      e.conversation.pending_clarification = q->question;
      v.pending_clarification = q->question;
      emit("clarification", e, {{"question", q->question}, {"round", e.conversation.clarification_rounds}});
      return;
    }
    if (const auto* r = std::get_if<Refusal>(&decision)) {
      v.refusal = r->reason;
      fail(Errc::translation_failed, "translator refused: " + r->reason);
    }

    auto calls = std::get<ToolCalls>(std::move(decision)).calls;
    if (calls.empty()) fail(Errc::translation_failed, "translator produced no tool call");
    for (std::size_t i = 0; i < calls.size(); ++i) {
      calls[i].conversation_id = e.conversation.conversation_id;
      calls[i].call_id = e.conversation.conversation_id + "-call-" + std::to_string(i + 1);
    }
    v.observed_calls = calls;

    const auto& first = calls.front();
    auto it = std::find_if(descriptors.begin(), descriptors.end(),
                           [&](const tools::ToolDescriptor& d) { return d.answers_to(first.tool_name); });
    if (it == descriptors.end()) fail(Errc::translation_failed, "unknown tool '" + first.tool_name + "'");
    auto issues = tools::schema_issues(*it, first.arguments);
    if (!issues.empty()) {
      std::string msg;
      for (const auto& issue : issues) msg += (msg.empty() ? "" : "; ") + issue.message;
      fail(Errc::validation_failed, msg);
    }
    auto requirements = model::parse_as<model::SliceRequirements>(first.arguments);
    if (auto violations = model::validate_requirements(requirements); !violations.empty()) {
      std::string msg;
      for (const auto& viol : violations) msg += (msg.empty() ? "" : "; ") + viol.message();
      fail(Errc::validation_failed, msg);
    }

    // Every call the translator emitted is executed, as a real client would.
    auto tool_t0 = Clock::now();
    std::vector<tools::ToolResult> results;
    for (const auto& call : calls) {
      tools::ToolResult result;
      try {
        result = tools.invoke_tool(call);
      } catch (const Error& ex) {
        result = tools::ToolResult{call.call_id, tools::Outcome::error,
                                   json{{"error", to_string(ex.code())}, {"detail", ex.detail()}}, std::nullopt};
      }
      e.conversation.turns.push_back({Role::tool, json(result).dump()});
      results.push_back(std::move(result));
    }
    v.record.timings.set(model::Stage::smo_mcp_tool_execution, ms_since(tool_t0));

    for (std::size_t i = 1; i < results.size(); ++i) {
      if (results[i].outcome == tools::Outcome::ok) {
        release_quietly(results[i].payload.value("sessionId", std::string()));
      }
    }
    const auto& head = results.front();
    if (head.outcome == tools::Outcome::rejected) {
      fail(Errc::downstream_error, "booking refused: " + head.payload.dump(), Errc::admission_refused);
    }
    if (head.outcome == tools::Outcome::error) {
      auto name = head.payload.value("error", std::string("downstream_error"));
      fail(Errc::downstream_error, "booking failed: " + head.payload.value("detail", name), errc_from_string(name));
    }
    auto booking = model::parse_as<model::SessionBooking>(head.payload);

    model::SliceType type;
    try {
      type = translator->classify(e.conversation, booking);
    } catch (const std::exception& ex) {
      release_quietly(booking.session_id);
      auto* err = dynamic_cast<const Error*>(&ex);
      fail(Errc::translation_failed, err ? err->detail() : ex.what(), err ? std::optional(err->code()) : std::nullopt);
    }
    v.slice_type = type;

    model::A1Policy policy;
    try {
      policy = rapp.generate_policy(rapp::ClassifiedIntent{booking.requirements, type, booking.session_id});
    } catch (const Error& ex) {
      release_quietly(booking.session_id);
      fail(Errc::downstream_error, "policy generation failed: " + ex.detail(), ex.code());
    }
    v.record.timings.set(model::Stage::smo_intent_to_policy, ms_since(t0));
    e.booking = booking;
    v.record.session_id = booking.session_id;
    v.record.policy_id = policy.policy_id;
    v.policy = policy;
    v.usage = translator->usage();
    emit("timing", e, {{"timings", v.record.timings}});
  }

  // Polls the mediator until the policy leaves CREATED or the wait expires.
  void await_enforcement(Entry& e) {
    if (!e.view.policy) return;
    auto deadline = Clock::now() + config.enforcement_wait;
    std::optional<a1::PolicyStatus> last;
    while (true) {
      try {
        last = mediator.status(e.view.policy->policy_id, e.view.policy->policytype_id);
      } catch (const Error& ex) {
        spdlog::warn("status poll for {}: {}", e.view.policy->policy_id, ex.what());
      }
      if ((last && last->state != a1::PolicyState::created) || Clock::now() >= deadline) break;
      std::this_thread::sleep_for(config.poll_interval);
    }
    if (!last) return;
    e.view.policy_status = last;
    e.view.record.timings.merge(last->timings);
    emit("policy_status", e, {{"status", *last}});
    if (last->quota) {
      e.view.record.quota = last->quota;
      emit("quota_update", e, {{"quota", *last->quota}});
    }
    emit("timing", e, {{"timings", e.view.record.timings}});
  }

  // Runs the pipeline and, on success with auto-activation, activates.
  void drive(Entry& e) {
    try {
      run_pipeline(e);
    } catch (const PipelineFailure& f) {
      e.view.error = f.error;
      e.view.usage = translator->usage();
      emit("error", e, {{"code", to_string(f.error.code)}, {"detail", f.error.detail}});
      return;
    } catch (const Error& ex) {
      e.view.error = IntentError{Errc::downstream_error, ex.detail(), ex.code()};
      emit("error", e, {{"code", to_string(Errc::downstream_error)}, {"detail", ex.detail()}});
      return;
    }
    if (e.view.pending_clarification || !e.view.policy) return;
    if (config.auto_activate && e.view.record.state == model::IntentState::created) {
      set_state(e, model::lifecycle_transition(e.view.record.state, model::LifecycleEvent::activate));
      await_enforcement(e);
    }
  }

  void withdraw_policy(Entry& e) {
    if (!e.view.policy) return;
    try {
      e.view.policy_status = mediator.delete_policy(e.view.policy->policy_id, e.view.policy->policytype_id);
      emit("policy_status", e, {{"status", *e.view.policy_status}});
    } catch (const Error& ex) {
      if (!ignorable_on_cleanup(ex.code())) throw Error(Errc::downstream_error, "policy delete failed: " + ex.detail());
    }
    e.view.record.quota.reset();
  }

  void release_booking(Entry& e) {
    if (!e.booking) return;
    try {
      bookings.release_session(e.booking->session_id);
    } catch (const Error& ex) {
      if (!ignorable_on_cleanup(ex.code())) throw Error(Errc::downstream_error, "session release failed: " + ex.detail());
    }
    e.booking.reset();
  }
};

Gateway::Gateway(GatewayConfig config, std::shared_ptr<Translator> translator)
    : impl_(std::make_unique<Impl>(std::move(config), std::move(translator))) {
  if (!impl_->translator) throw Error(Errc::invalid_config, "gateway needs a translator");
  if (impl_->config.clarification_bound < 0) throw Error(Errc::invalid_config, "clarification bound must be >= 0");
}

Gateway::~Gateway() = default;

void Gateway::set_event_sink(EventSink sink) {
  std::lock_guard lock(impl_->sink_mu);
  impl_->sink = std::move(sink);
}

const Translator& Gateway::translator() const noexcept { return *impl_->translator; }

IntentView Gateway::submit_intent(const std::string& text, std::optional<std::string> conversation_id) {
  if (text.find_first_not_of(" \t\r\n") == std::string::npos) {
    throw Error(Errc::invalid_argument, "intent text must be non-empty");
  }
  auto& s = *impl_;
  auto entry = std::make_shared<Impl::Entry>();
  {
    std::unique_lock lock(s.registry_mu);
    if (conversation_id) {
      if (conversation_id->empty()) throw Error(Errc::invalid_argument, "conversation_id must be non-empty");
      if (s.by_conversation.count(*conversation_id)) {
        throw Error(Errc::conflict, "conversation '" + *conversation_id + "' already has an intent");
      }
    } else {
      do {
        char buf[32];
        std::snprintf(buf, sizeof buf, "conv-%04llu", static_cast<unsigned long long>(s.next_conversation++));
        conversation_id = buf;
      } while (s.by_conversation.count(*conversation_id));
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "intent-%04llu", static_cast<unsigned long long>(s.next_intent++));
    entry->view.record.intent_id = buf;
    entry->view.record.conversation_id = *conversation_id;
    entry->view.record.text = text;
    entry->conversation.conversation_id = *conversation_id;
    entry->conversation.turns.push_back({Role::operator_, text});
    s.by_intent.emplace(buf, entry);
    s.by_conversation.emplace(*conversation_id, buf);
    s.order.push_back(buf);
  }
  std::lock_guard lock(entry->mu);
  s.emit("state_change", *entry, {{"state", entry->view.record.state}});
  s.drive(*entry);
  return entry->view;
}

IntentView Gateway::answer_clarification(const std::string& id, const std::string& answer) {
  auto& s = *impl_;
  auto entry = s.find(id);
  std::lock_guard lock(entry->mu);
  if (!entry->conversation.pending_clarification) {
    throw Error(Errc::no_pending_clarification, "intent " + entry->view.record.intent_id + " has no pending question");
  }
  entry->conversation.turns.push_back({Role::operator_, answer});
  entry->conversation.pending_clarification.reset();
  entry->view.pending_clarification.reset();
  s.drive(*entry);
  return entry->view;
}

IntentView Gateway::lifecycle_command(const std::string& intent_id, model::LifecycleEvent event,
                                      const std::optional<std::string>& text) {
  using model::IntentState;
  using model::LifecycleEvent;
  auto& s = *impl_;
  auto entry = s.find(intent_id);
  std::lock_guard lock(entry->mu);
  auto& e = *entry;
  auto from = e.view.record.state;
  auto to = model::lifecycle_transition(from, event);

  switch (event) {
    case LifecycleEvent::activate:
      if (from == IntentState::modified) {
        // A modified intent is re-translated from the whole conversation.
        s.withdraw_policy(e);
        s.release_booking(e);
        e.view.policy.reset();
        e.view.policy_status.reset();
        e.view.record.policy_id.reset();
        e.view.record.session_id.reset();
        e.view.record.timings = {};
        try {
          s.run_pipeline(e);
        } catch (const PipelineFailure& f) {
          e.view.error = f.error;
          return e.view;
        }
        if (e.view.pending_clarification || !e.view.policy) return e.view;
      } else if (!e.view.policy) {
        throw Error(Errc::not_ready, "intent " + intent_id + " has no policy to activate");
      }
      s.set_state(e, to);
      s.await_enforcement(e);
      return e.view;
    case LifecycleEvent::monitor:
      break;
    case LifecycleEvent::modify:
      if (text && !text->empty()) e.conversation.turns.push_back({Role::operator_, *text});
      break;
    case LifecycleEvent::suspend:
      s.withdraw_policy(e);
      break;
    case LifecycleEvent::resume:
      if (e.view.policy) {
        try {
          e.view.policy_status = s.mediator.put_policy(*e.view.policy);
        } catch (const Error& ex) {
          throw Error(Errc::downstream_error, "policy re-push failed: " + ex.detail());
        }
        s.set_state(e, to);
        s.await_enforcement(e);
        return e.view;
      }
      break;
    case LifecycleEvent::terminate:
      s.release_booking(e);
      s.withdraw_policy(e);
      break;
  }
  s.set_state(e, to);
  return e.view;
}

IntentView Gateway::intent(const std::string& id) const {
  auto entry = impl_->find(id);
  std::lock_guard lock(entry->mu);
  return entry->view;
}

std::vector<IntentView> Gateway::intents() const {
  std::vector<std::shared_ptr<Impl::Entry>> entries;
  {
    std::shared_lock lock(impl_->registry_mu);
    for (const auto& id : impl_->order) entries.push_back(impl_->by_intent.at(id));
  }
  std::vector<IntentView> out;
  for (const auto& e : entries) {
    std::lock_guard lock(e->mu);
    out.push_back(e->view);
  }
  return out;
}

}  // namespace orion::gateway
