#include <gtest/gtest.h>

#include "orion/error.hpp"
#include "orion/model/json.hpp"
#include "orion/model/rules.hpp"
#include "support/testkit.hpp"

namespace orion::model {
namespace {

using testkit::Gen;

TEST(SliceTypeTest, NamesRoundTrip) {
  EXPECT_EQ(to_string(SliceType::embb), "eMBB");
  EXPECT_EQ(to_string(SliceType::urllc), "URLLC");
  EXPECT_EQ(to_string(SliceType::mmtc), "mMTC");
  for (auto t : kSliceTypes) EXPECT_EQ(parse_slice_type(to_string(t)), t);
  EXPECT_EQ(parse_slice_type("embb"), SliceType::embb);
  EXPECT_FALSE(parse_slice_type("lte").has_value());
  EXPECT_FALSE(parse_slice_type("").has_value());
}

TEST(ValidateRequirementsTest, AllNullIsOk) { EXPECT_TRUE(validate_requirements({}).empty()); }

TEST(ValidateRequirementsTest, NegativeDelayNamesFieldAndRule) {
  SliceRequirements r;
  r.dl_delay_budget_ms = -1;
  auto v = validate_requirements(r);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].message(), "dl_delay_budget_ms must be positive");
}

TEST(ValidateRequirementsTest, ReferenceMmtcThroughputsAreOk) {
  SliceRequirements r;
  r.max_dl_thpt_per_device_bps = 50'000;
  r.max_dl_thpt_per_slice_bps = 300'000'000;
  EXPECT_TRUE(validate_requirements(r).empty());
}

TEST(ValidateRequirementsTest, RangeViolations) {
  SliceRequirements r;
  r.packet_error_rate = 1.5;
  r.availability_pct = 0;
  r.reliability_pct = 100.5;
  r.duration_s = 0;
  r.area_of_service = "";
  auto v = validate_requirements(r);
  std::vector<std::string> fields;
  for (const auto& x : v) fields.push_back(x.field);
  EXPECT_EQ(fields, (std::vector<std::string>{"area_of_service", "duration_s", "packet_error_rate",
                                              "availability_pct", "reliability_pct"}));
}

TEST(ValidateRequirementsTest, SliceBelowDevice) {
  SliceRequirements r;
  r.max_ul_thpt_per_device_bps = 10;
  r.max_ul_thpt_per_slice_bps = 9;
  auto v = validate_requirements(r);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].field, "max_ul_thpt_per_slice_bps");
}

TEST(ValidateRequirementsTest, NaNDelayRejected) {
  SliceRequirements r;
  r.ul_delay_budget_ms = std::nan("");
  EXPECT_EQ(validate_requirements(r).size(), 1u);
}

// Nulling any subset of a valid instance keeps it valid.
TEST(ValidateRequirementsTest, MonotoneUnderNulling) {
  Gen g(11);
  for (int i = 0; i < 2000; ++i) {
    auto r = testkit::valid_requirements(g);
    ASSERT_TRUE(validate_requirements(r).empty()) << nlohmann::json(r).dump();
    auto weaker = r;
    for (auto f : kAllFields) {
      if (g.coin()) set_field(weaker, f, std::nullopt);
    }
    EXPECT_TRUE(validate_requirements(weaker).empty()) << nlohmann::json(weaker).dump();
  }
}

// Same property from the other side: adding one bad field to any instance
// is always reported, and nulling that field clears it.
TEST(ValidateRequirementsTest, SingleBadFieldIsReportedAlone) {
  Gen g(12);
  for (int i = 0; i < 500; ++i) {
    auto r = testkit::valid_requirements(g);
    r.dl_delay_budget_ms = -g.real(0.0, 10.0);
    auto v = validate_requirements(r);
    ASSERT_EQ(v.size(), 1u);
    EXPECT_EQ(v[0].field, "dl_delay_budget_ms");
    r.dl_delay_budget_ms.reset();
    EXPECT_TRUE(validate_requirements(r).empty());
  }
}

TEST(LifecycleTest, Examples) {
  EXPECT_EQ(lifecycle_transition(IntentState::created, LifecycleEvent::activate), IntentState::activated);
  EXPECT_EQ(lifecycle_transition(IntentState::monitoring, LifecycleEvent::modify), IntentState::modified);
  try {
    lifecycle_transition(IntentState::terminated, LifecycleEvent::activate);
    FAIL() << "expected IllegalTransition";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::illegal_transition);
  }
}

TEST(LifecycleTest, FullGridMatchesTable) {
  int legal = 0;
  for (auto s : kIntentStates) {
    for (auto e : kLifecycleEvents) {
      auto want = testkit::expected_successor(s, e);
      EXPECT_EQ(lifecycle_successor(s, e), want) << to_string(s) << " " << to_string(e);
      if (want) {
        ++legal;
        EXPECT_EQ(lifecycle_transition(s, e), *want);
      } else {
        EXPECT_THROW(lifecycle_transition(s, e), Error);
      }
    }
  }
  // 5 non-terminal terminates + activate x2 + monitor + modify + suspend x3 + resume
  EXPECT_EQ(legal, 13);
}

TEST(LifecycleTest, EventAndStateNames) {
  for (auto e : kLifecycleEvents) EXPECT_EQ(parse_lifecycle_event(to_string(e)), e);
  for (auto s : kIntentStates) EXPECT_EQ(parse_intent_state(to_string(s)), s);
  EXPECT_EQ(to_string(LifecycleEvent::activate), "activate");
  EXPECT_EQ(to_string(IntentState::monitoring), "MONITORING");
}

// Standardized SST values: eMBB 1, URLLC 2, MIoT 3.
TEST(SstTest, Profiles) {
  EXPECT_EQ(sst_for(SliceType::mmtc, SstProfile::standard), 3);
  EXPECT_EQ(sst_for(SliceType::urllc, SstProfile::standard), 2);
  EXPECT_EQ(sst_for(SliceType::embb, SstProfile::standard), 1);
  for (auto t : kSliceTypes) EXPECT_EQ(sst_for(t, SstProfile::listing1_compat), 1);
  EXPECT_EQ(parse_sst_profile("listing1-compat"), SstProfile::listing1_compat);
  EXPECT_EQ(parse_sst_profile("standard"), SstProfile::standard);
  EXPECT_FALSE(parse_sst_profile("legacy"));
}

TEST(FieldReflectionTest, KeysAndCounterparts) {
  EXPECT_EQ(json_key(Field::ul_delay_budget_ms), "upStreamDelayBudget");
  EXPECT_EQ(json_key(Field::dl_delay_budget_ms), "downStreamDelayBudget");
  EXPECT_EQ(json_key(Field::max_dl_thpt_per_device_bps), "maxDlThptPerDevice");
  for (auto f : kAllFields) EXPECT_EQ(field_from_json_key(json_key(f)), f);
  EXPECT_EQ(downlink_counterpart(Field::ul_delay_budget_ms), Field::dl_delay_budget_ms);
  EXPECT_EQ(downlink_counterpart(Field::max_ul_thpt_per_slice_bps), Field::max_dl_thpt_per_slice_bps);
  EXPECT_FALSE(downlink_counterpart(Field::device_count));
  EXPECT_TRUE(is_uplink(Field::max_ul_thpt_per_device_bps));
  EXPECT_FALSE(is_uplink(Field::max_dl_thpt_per_device_bps));
}

TEST(SliceIdTest, Invariants) {
  SliceId id;
  id.sd = "456DEF";
  id.plmn_mcc = "724";
  id.plmn_mnc = "11";
  EXPECT_FALSE(check_slice_id(id));
  id.sd = "456def";
  EXPECT_TRUE(check_slice_id(id));
  id.sd = "456DEF";
  id.plmn_mnc = "1";
  EXPECT_TRUE(check_slice_id(id));
  id.plmn_mnc = "1a1";
  EXPECT_TRUE(check_slice_id(id));
  id.plmn_mnc = "011";
  id.plmn_mcc = "72";
  EXPECT_TRUE(check_slice_id(id));
}

TEST(QuotaTest, Invariants) {
  PrbQuota q;
  q.dedicated_pct = 30;
  EXPECT_FALSE(check_quota(q));
  q.dedicated_pct = 0;
  EXPECT_TRUE(check_quota(q));
  q.dedicated_pct = 30;
  q.min_pct = 40;
  EXPECT_TRUE(check_quota(q));
  q.min_pct = 0;
  q.max_pct = 101;
  EXPECT_TRUE(check_quota(q));
}

TEST(StageTimingsTest, FixedKeys) {
  StageTimings t;
  EXPECT_FALSE(t.complete());
  for (auto s : kStages) t.set(s, 1.5);
  EXPECT_TRUE(t.complete());
  EXPECT_THROW(t.set(Stage::a1_mediator, -1.0), Error);
  auto j = nlohmann::json(t);
  EXPECT_EQ(j.size(), 6u);
  EXPECT_TRUE(j.contains("smo_intent_to_policy"));
  EXPECT_TRUE(j.contains("e2_node_control_processing"));
  EXPECT_THROW(parse_as<StageTimings>(nlohmann::json{{"gpu_time", 1.0}}), Error);
  EXPECT_THROW(parse_as<StageTimings>(nlohmann::json{{"a1_mediator", -2.0}}), Error);
}

TEST(JsonTest, RequirementsNullsAreExplicit) {
  SliceRequirements r;
  r.device_count = 6000;
  auto j = nlohmann::json(r);
  EXPECT_EQ(j.size(), kAllFields.size());
  EXPECT_EQ(j["deviceCount"], 6000);
  EXPECT_TRUE(j["maxUlThptPerSlice"].is_null());
}

TEST(JsonTest, StrictParsing) {
  EXPECT_THROW(parse_as<SliceRequirements>(nlohmann::json{{"deviceCnt", 1}}), Error);
  EXPECT_THROW(parse_as<SliceRequirements>(nlohmann::json{{"deviceCount", "many"}}), Error);
  EXPECT_THROW(parse_as<SliceRequirements>(nlohmann::json{{"deviceCount", 1.5}}), Error);
  EXPECT_THROW(parse_as<SliceRequirements>(nlohmann::json::array()), Error);
  try {
    parse_as<SliceRequirements>(nlohmann::json{{"bogus", 1}});
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::schema_violation);
  }
  auto ok = parse_as<SliceRequirements>(nlohmann::json{{"downStreamDelayBudget", 5}, {"areaOfService", nullptr}});
  EXPECT_EQ(ok.dl_delay_budget_ms, 5.0);
  EXPECT_FALSE(ok.area_of_service);
}

TEST(JsonTest, PolicyLayout) {
  A1Policy p;
  p.ric_id = "ric4";
  p.policy_id = "48782";
  p.service_id = "intentSlice";
  p.slice = SliceId{1, "456DEF", "724", "11", 1};
  p.slice_type = SliceType::mmtc;
  p.objectives.max_dl_thpt_per_ue_bps = 50000;
  auto j = nlohmann::json(p);
  EXPECT_EQ(j["policy_data"]["scope"]["sliceId"]["plmnId"]["mcc"], "724");
  EXPECT_EQ(j["policy_data"]["scope"]["sliceType"], "mMTC");
  EXPECT_EQ(j["policy_data"]["sliceSlaObjectives"]["maxDlThptPerUe"], 50000);
  EXPECT_FALSE(j["policy_data"]["sliceSlaObjectives"].contains("downStreamDelayBudget"));
}

// parse(render(x)) == x for randomized instances of every domain type.
TEST(JsonTest, RoundTripProperty) {
  Gen g(13);
  for (int i = 0; i < 500; ++i) {
    auto req = testkit::valid_requirements(g);
    EXPECT_EQ(parse_as<SliceRequirements>(nlohmann::json(req)), req);

    SessionBooking b{"id-" + g.digits(8), req, g.range(0, 1LL << 40),
                     g.coin() ? SessionStatus::active : SessionStatus::released};
    EXPECT_EQ(parse_as<SessionBooking>(nlohmann::json(b)), b);

    auto slice = testkit::slice_id(g);
    EXPECT_EQ(parse_as<SliceId>(nlohmann::json(slice)), slice);

    SliceSlaObjectives o;
    o.max_dl_thpt_per_ue_bps = g.range(0, 1'000'000);
    o.max_ul_thpt_per_ue_bps = g.range(0, 1'000'000);
    o.max_dl_thpt_per_slice_bps = o.max_dl_thpt_per_ue_bps + g.range(0, 1'000'000'000);
    o.max_ul_thpt_per_slice_bps = o.max_ul_thpt_per_ue_bps + g.range(0, 1'000'000'000);
    if (g.coin()) o.dl_delay_budget_ms = g.real(0.5, 100);
    if (g.coin()) o.ul_delay_budget_ms = g.real(0.5, 100);
    if (g.coin()) o.packet_error_rate = g.real(1e-9, 0.5);
    EXPECT_EQ(parse_as<SliceSlaObjectives>(nlohmann::json(o)), o);

    A1Policy p{"ric" + g.digits(1), g.digits(5), "intentSlice", kSliceSlaPolicyType, slice,
               kSliceTypes[static_cast<std::size_t>(g.range(0, 2))], o};
    EXPECT_EQ(parse_as<A1Policy>(nlohmann::json(p)), p);

    auto cell = testkit::cell_config(g);
    EXPECT_EQ(parse_as<CellConfig>(nlohmann::json(cell)), cell);

    PrbQuota q;
    q.slice = slice;
    q.node_id = cell.node_id;
    q.dedicated_pct = static_cast<int>(g.range(1, 100));
    q.min_pct = static_cast<int>(g.range(0, q.dedicated_pct));
    q.max_pct = static_cast<int>(g.range(q.dedicated_pct, 100));
    EXPECT_EQ(parse_as<PrbQuota>(nlohmann::json(q)), q);

    IntentRecord rec;
    rec.intent_id = "intent-" + g.digits(4);
    rec.conversation_id = "conv-" + g.digits(4);
    rec.text = g.text(60);
    rec.state = kIntentStates[static_cast<std::size_t>(g.range(0, 5))];
    if (g.coin()) rec.session_id = g.digits(10);
    if (g.coin()) rec.policy_id = p.policy_id;
    if (g.coin()) rec.quota = q;
    for (auto s : kStages) {
      if (g.coin()) rec.timings.set(s, g.real(0, 50));
    }
    EXPECT_EQ(parse_as<IntentRecord>(nlohmann::json(rec)), rec);
  }
}

TEST(ErrorTest, CodesHaveNames) {
  EXPECT_EQ(to_string(Errc::admission_refused), "AdmissionRefused");
  EXPECT_EQ(errc_from_string("IllegalTransition"), Errc::illegal_transition);
  EXPECT_FALSE(errc_from_string("nope"));
  Error e(Errc::not_found, "x");
  EXPECT_STREQ(e.what(), "NotFound: x");
}

}  // namespace
}  // namespace orion::model
