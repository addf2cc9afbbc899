#include <gtest/gtest.h>

#include <mutex>

#include "orion/a1/service.hpp"
#include "orion/booking/service.hpp"
#include "orion/deploy/deployment.hpp"
#include "orion/error.hpp"
#include "orion/gateway/deterministic_translator.hpp"
#include "orion/gateway/service.hpp"
#include "orion/node/node_sim.hpp"

namespace orion {
namespace {

using model::IntentState;
using model::LifecycleEvent;

Errc code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error";
  return Errc::invalid_argument;
}

struct GatewayFixture : ::testing::Test {
  static deploy::DeploymentConfig config() {
    deploy::DeploymentConfig c;
    c.booking_threshold = 2;
    return c;
  }

  deploy::Deployment d{config()};
  std::unique_ptr<gateway::GatewayClient> client;
  std::mutex mu;
  std::vector<nlohmann::json> events;

  void SetUp() override {
    d.start(std::make_shared<gateway::DeterministicTranslator>());
    client = std::make_unique<gateway::GatewayClient>(d.endpoints().gateway);
    d.gateway().gateway().set_event_sink([this](const nlohmann::json& e) {
      std::lock_guard lock(mu);
      events.push_back(e);
    });
  }

  std::size_t active_sessions() { return d.booking().store().active_count(); }
};

TEST_F(GatewayFixture, IntentIsEnforcedEndToEnd) {
  auto v = client->submit_intent("4K media streaming at 400 Mbps in area downtown");
  ASSERT_FALSE(v.error) << v.error->detail;
  EXPECT_EQ(v.record.state, IntentState::activated);
  EXPECT_EQ(v.slice_type, model::SliceType::embb);
  ASSERT_TRUE(v.record.session_id);
  ASSERT_TRUE(v.policy);
  ASSERT_TRUE(v.policy_status);
  EXPECT_EQ(v.policy_status->state, a1::PolicyState::enforced);
  ASSERT_TRUE(v.record.quota);
  EXPECT_EQ(v.record.quota->dedicated_pct, 16);
  EXPECT_TRUE(v.record.timings.complete());
  ASSERT_EQ(v.observed_calls.size(), 1u);
  EXPECT_EQ(v.observed_calls[0].arguments["maxDlThptPerSlice"], 400000000);
  EXPECT_EQ(d.node(0).snapshot().dedicated_sum(), 16);
  EXPECT_EQ(client->intent(v.record.intent_id), v);
  EXPECT_EQ(client->intent(v.record.conversation_id).record.intent_id, v.record.intent_id);
  EXPECT_EQ(client->intents().size(), 1u);

  std::lock_guard lock(mu);
  EXPECT_TRUE(std::any_of(events.begin(), events.end(), [](const auto& e) { return e["kind"] == "state_change"; }));
}

TEST_F(GatewayFixture, LifecycleSuspendResumeTerminate) {
  auto v = client->submit_intent("URLLC slice in area X with 2 ms latency, 99.99% reliability and 20 Mbps");
  ASSERT_FALSE(v.error) << v.error->detail;
  auto id = v.record.intent_id;
  EXPECT_EQ(client->lifecycle(id, LifecycleEvent::monitor).record.state, IntentState::monitoring);

  auto s = client->lifecycle(id, LifecycleEvent::suspend);
  EXPECT_EQ(s.record.state, IntentState::suspended);
  EXPECT_TRUE(d.node(0).snapshot().allocations.empty());
  EXPECT_EQ(active_sessions(), 1u);

  auto r = client->lifecycle(id, LifecycleEvent::resume);
  EXPECT_EQ(r.record.state, IntentState::activated);
  ASSERT_TRUE(r.policy_status);
  EXPECT_EQ(r.policy_status->state, a1::PolicyState::enforced);
  EXPECT_EQ(d.node(0).snapshot().allocations.size(), 1u);

  auto t = client->lifecycle(id, LifecycleEvent::terminate);
  EXPECT_EQ(t.record.state, IntentState::terminated);
  EXPECT_EQ(active_sessions(), 0u);
  EXPECT_TRUE(d.node(0).snapshot().allocations.empty());
  EXPECT_EQ(code_of([&] { client->lifecycle(id, LifecycleEvent::activate); }), Errc::illegal_transition);
}

TEST_F(GatewayFixture, ModifyThenActivateRetranslates) {
  auto v = client->submit_intent("Stream video at 100 Mbps in area north");
  ASSERT_FALSE(v.error);
  auto old_policy = *v.record.policy_id;
  auto id = v.record.intent_id;
  client->lifecycle(id, LifecycleEvent::monitor);
  EXPECT_EQ(client->lifecycle(id, LifecycleEvent::modify, std::string("make it 300 Mbps")).record.state,
            IntentState::modified);
  auto a = client->lifecycle(id, LifecycleEvent::activate);
  ASSERT_FALSE(a.error) << a.error->detail;
  EXPECT_EQ(a.record.state, IntentState::activated);
  EXPECT_NE(*a.record.policy_id, old_policy);
  EXPECT_EQ(a.observed_calls.at(0).arguments["maxDlThptPerSlice"], 300000000);
  EXPECT_EQ(active_sessions(), 1u);
  EXPECT_EQ(d.node(0).snapshot().allocations.size(), 1u);
}

TEST_F(GatewayFixture, ClarificationRoundTrip) {
  auto v = client->submit_intent("Provision a URLLC slice in this area with 1 ms latency and 10 Mbps");
  EXPECT_EQ(v.pending_clarification, "Which area?");
  EXPECT_EQ(v.record.state, IntentState::created);
  EXPECT_FALSE(v.record.session_id);
  EXPECT_EQ(active_sessions(), 0u);
  auto a = client->answer_clarification(v.record.intent_id, "campus-east");
  ASSERT_FALSE(a.error) << a.error->detail;
  EXPECT_FALSE(a.pending_clarification);
  EXPECT_EQ(a.observed_calls.at(0).arguments["areaOfService"], "campus-east");
  EXPECT_EQ(a.record.state, IntentState::activated);
  EXPECT_EQ(code_of([&] { client->answer_clarification(v.record.intent_id, "again"); }),
            Errc::no_pending_clarification);
  EXPECT_EQ(code_of([&] { client->answer_clarification("nope", "x"); }), Errc::unknown_intent);
}

TEST_F(GatewayFixture, ClarificationBoundEndsInFailure) {
  auto v = client->submit_intent("URLLC slice in this area with 1 ms latency and 10 Mbps");
  ASSERT_TRUE(v.pending_clarification);
  v = client->answer_clarification(v.record.intent_id, "the same place as before");
  ASSERT_TRUE(v.pending_clarification);
  v = client->answer_clarification(v.record.intent_id, "right here");
  EXPECT_FALSE(v.pending_clarification);
  ASSERT_TRUE(v.error);
  EXPECT_EQ(v.record.state, IntentState::created);
}

TEST_F(GatewayFixture, AdmissionRefusalLeavesIntentCreated) {
  ASSERT_FALSE(client->submit_intent("Stream at 100 Mbps in area a").error);
  ASSERT_FALSE(client->submit_intent("Stream at 100 Mbps in area b").error);
  auto v = client->submit_intent("Stream at 100 Mbps in area c");
  ASSERT_TRUE(v.error);
  EXPECT_EQ(v.error->code, Errc::downstream_error);
  EXPECT_EQ(v.error->cause, Errc::admission_refused);
  EXPECT_EQ(v.record.state, IntentState::created);
  EXPECT_FALSE(v.policy);
  EXPECT_EQ(active_sessions(), 2u);
  EXPECT_EQ(code_of([&] { client->lifecycle(v.record.intent_id, LifecycleEvent::activate); }), Errc::not_ready);
}

TEST_F(GatewayFixture, MissingThroughputReleasesBooking) {
  auto v = client->submit_intent("Remote surgery slice in area X with a 1 ms delay budget");
  ASSERT_TRUE(v.error);
  EXPECT_EQ(v.error->cause, Errc::missing_throughput);
  EXPECT_EQ(v.record.state, IntentState::created);
  EXPECT_EQ(active_sessions(), 0u);
}

TEST_F(GatewayFixture, RefusalAndBadInput) {
  auto v = client->submit_intent("good morning");
  EXPECT_TRUE(v.refusal);
  EXPECT_EQ(v.record.state, IntentState::created);
  EXPECT_EQ(code_of([&] { client->submit_intent(""); }), Errc::invalid_argument);
  client->submit_intent("Stream at 100 Mbps in area a", std::string("conv-x"));
  EXPECT_EQ(code_of([&] { client->submit_intent("Stream at 50 Mbps", std::string("conv-x")); }), Errc::conflict);
  EXPECT_EQ(code_of([&] { client->intent("missing"); }), Errc::unknown_intent);
}

TEST(DeployConfigTest, StrictParsing) {
  auto c = deploy::parse_deployment_config(nlohmann::json::parse(R"({
    "booking": {"threshold": 3},
    "ports": {"gateway": 18080},
    "composer": {"sst_profile": "listing1-compat", "nci": 2},
    "enforcer": {"capacity_override_bps": 1000000000}
  })"));
  EXPECT_EQ(c.booking_threshold, 3u);
  EXPECT_EQ(c.ports.gateway, 18080);
  EXPECT_EQ(c.composer.sst_profile, model::SstProfile::listing1_compat);
  EXPECT_EQ(c.composer.nci, 2u);
  EXPECT_EQ(c.enforcer.capacity_override_bps, 1'000'000'000);
  EXPECT_EQ(code_of([] { deploy::parse_deployment_config({{"bogus", 1}}); }), Errc::invalid_config);
  EXPECT_EQ(code_of([] { deploy::parse_deployment_config({{"booking", {{"threshold", "three"}}}}); }), Errc::invalid_config);
  EXPECT_EQ(code_of([] { deploy::load_deployment_config("/nonexistent/orion.json"); }), Errc::io_error);
}

}  // namespace
}  // namespace orion
