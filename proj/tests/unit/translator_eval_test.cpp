#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "orion/error.hpp"
#include "orion/eval/dataset.hpp"
#include "orion/eval/rules.hpp"
#include "orion/eval/runner.hpp"
#include "orion/gateway/deterministic_translator.hpp"
#include "orion/gateway/replay_translator.hpp"
#include "orion/model/json.hpp"
#include "orion/model/rules.hpp"
#include "support/rule_fixtures.hpp"

namespace orion {
namespace {

using testkit::fixture_entry;
using testkit::good_call;
using testkit::rule_fixtures;

using gateway::Conversation;
using gateway::DeterministicTranslator;
using gateway::Role;
using model::SliceType;

Conversation conv(std::vector<std::pair<Role, std::string>> turns) {
  Conversation c;
  c.conversation_id = "c";
  for (auto& [r, t] : turns) c.turns.push_back({r, t});
  return c;
}

const std::vector<tools::ToolDescriptor> kTools = {tools::create_session_descriptor()};

model::SliceRequirements propose_args(const std::string& text) {
  DeterministicTranslator t;
  auto d = t.propose(conv({{Role::operator_, text}}), kTools);
  auto* calls = std::get_if<gateway::ToolCalls>(&d);
  EXPECT_TRUE(calls) << text;
  if (!calls) return {};
  EXPECT_EQ(calls->calls.size(), 1u);
  EXPECT_EQ(calls->calls[0].tool_name, "create_session");
  EXPECT_EQ(calls->calls[0].arguments.size(), model::kAllFields.size());
  return model::parse_as<model::SliceRequirements>(calls->calls[0].arguments);
}

TEST(ExtractTest, UrllcTrace) {
  auto r = propose_args(
      "Provision a URLLC slice in area X with 1 ms latency and 99.999% reliability for 2 hours");
  model::SliceRequirements want;
  want.area_of_service = "X";
  want.dl_delay_budget_ms = 1;
  want.reliability_pct = 99.999;
  want.duration_s = 7200;
  EXPECT_EQ(r, want) << nlohmann::json(r).dump();
}

TEST(ExtractTest, NoThroughputStaysNull) {
  auto r = propose_args("Set up a slice for remote surgery with a 5 ms delay budget");
  EXPECT_FALSE(r.max_dl_thpt_per_device_bps);
  EXPECT_FALSE(r.max_ul_thpt_per_device_bps);
  EXPECT_FALSE(r.max_dl_thpt_per_slice_bps);
  EXPECT_FALSE(r.max_ul_thpt_per_slice_bps);
  EXPECT_EQ(r.dl_delay_budget_ms, 5.0);
  EXPECT_FALSE(r.ul_delay_budget_ms);
}

TEST(ExtractTest, StreamingThroughput) {
  auto text = "4K media streaming at 400 Mbps";
  auto r = propose_args(text);
  EXPECT_EQ(r.max_dl_thpt_per_slice_bps, 400'000'000);
  EXPECT_FALSE(r.max_ul_thpt_per_slice_bps);
  EXPECT_EQ(gateway::classify_text(text, r), SliceType::embb);
}

TEST(ExtractTest, Units) {
  EXPECT_EQ(gateway::extract("uplink 2 Gbps").requirements.max_ul_thpt_per_slice_bps, 2'000'000'000);
  EXPECT_EQ(gateway::extract("50 kbps per device").requirements.max_dl_thpt_per_device_bps, 50'000);
  EXPECT_EQ(gateway::extract("for 30 minutes").requirements.duration_s, 1800);
  EXPECT_EQ(gateway::extract("for 3 days").requirements.duration_s, 3 * 86'400);
  EXPECT_EQ(gateway::extract("serve 6,000 sensors").requirements.device_count, 6000);
  EXPECT_EQ(gateway::extract("serve 250k meters").requirements.device_count, 250'000);
  EXPECT_EQ(gateway::extract("1 million devices").requirements.device_count, 1'000'000);
  EXPECT_EQ(gateway::extract("packet error rate 1e-5.").requirements.packet_error_rate, 1e-5);
  EXPECT_EQ(gateway::extract("99.95% availability").requirements.availability_pct, 99.95);
  EXPECT_EQ(gateway::extract("uplink delay budget of 4 ms").requirements.ul_delay_budget_ms, 4.0);
}

TEST(ClassifyTest, Vocabulary) {
  EXPECT_EQ(gateway::classify_text("smart city sensors, 1 million devices per square km",
                                   gateway::extract("smart city sensors, 1 million devices per square km").requirements),
            SliceType::mmtc);
  EXPECT_EQ(gateway::classify_text("remote surgery, 1 ms budget", gateway::extract("remote surgery, 1 ms budget").requirements),
            SliceType::urllc);
  EXPECT_EQ(gateway::classify_text("cloud gaming", {}), SliceType::embb);
  EXPECT_EQ(gateway::classify_text("utility metering", {}), SliceType::mmtc);
  // An explicit keyword outranks every derived rule.
  model::SliceRequirements fast;
  fast.dl_delay_budget_ms = 2;
  EXPECT_EQ(gateway::classify_text("an mMTC slice", fast), SliceType::mmtc);
  EXPECT_EQ(gateway::classify_text("plain slice", fast), SliceType::urllc);
}

TEST(DeterministicTranslatorTest, RefusesContentFreeText) {
  DeterministicTranslator t;
  auto d = t.propose(conv({{Role::operator_, "hello there"}}), kTools);
  EXPECT_TRUE(std::holds_alternative<gateway::Refusal>(d));
  EXPECT_THROW(t.propose(conv({{Role::operator_, "x"}}), {}), Error);
}

TEST(DeterministicTranslatorTest, AreaClarificationLoop) {
  DeterministicTranslator t;
  auto c = conv({{Role::operator_, "Provision a URLLC slice in this area with 2 ms latency"}});
  auto d1 = t.propose(c, kTools);
  ASSERT_TRUE(std::holds_alternative<gateway::Clarification>(d1));
  EXPECT_EQ(std::get<gateway::Clarification>(d1).question, "Which area?");

  auto unanswered = c;
  unanswered.turns.push_back({Role::translator, "Which area?"});
  unanswered.turns.push_back({Role::operator_, "the one near here please"});
  EXPECT_TRUE(std::holds_alternative<gateway::Clarification>(t.propose(unanswered, kTools)));

  c.turns.push_back({Role::translator, "Which area?"});
  c.turns.push_back({Role::operator_, "campus-east"});
  auto d2 = t.propose(c, kTools);
  ASSERT_TRUE(std::holds_alternative<gateway::ToolCalls>(d2));
  auto args = model::parse_as<model::SliceRequirements>(std::get<gateway::ToolCalls>(d2).calls[0].arguments);
  EXPECT_EQ(args.area_of_service, "campus-east");
}

// The translator reproduces ground truth for every templated intent, and its
// calls pass the rule checker, over many seeds.
TEST(DatasetPropertyTest, ExtractionMatchesGroundTruth) {
  DeterministicTranslator t;
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    for (const auto& e : eval::generate_dataset(seed)) {
      auto ex = gateway::extract(e.text);
      ASSERT_EQ(ex.requirements, e.ground_truth)
          << "seed " << seed << " " << e.id << ": " << e.text << "\n got " << nlohmann::json(ex.requirements).dump();
      ASSERT_EQ(gateway::classify_text(e.text, ex.requirements), e.slice_type) << e.text;
      auto d = t.propose(conv({{Role::operator_, e.text}}), kTools);
      ASSERT_TRUE(std::holds_alternative<gateway::ToolCalls>(d)) << e.text;
      eval::Observation obs{std::get<gateway::ToolCalls>(d).calls, std::nullopt, std::nullopt};
      auto v = eval::check_tool_use_rules(e, obs);
      ASSERT_TRUE(v.empty()) << e.text << " " << eval::to_string(v[0].rule) << " " << v[0].field;
    }
  }
}

TEST(DatasetTest, SplitAndRanges) {
  auto ds = eval::generate_dataset(42);
  ASSERT_EQ(ds.size(), 100u);
  int counts[3] = {0, 0, 0};
  std::set<std::string> ids;
  for (const auto& e : ds) {
    ++counts[static_cast<int>(e.slice_type)];
    ids.insert(e.id);
    EXPECT_TRUE(model::validate_requirements(e.ground_truth).empty()) << e.text;
    switch (e.slice_type) {
      case SliceType::embb:
        ASSERT_TRUE(e.ground_truth.max_dl_thpt_per_slice_bps);
        EXPECT_GE(*e.ground_truth.max_dl_thpt_per_slice_bps, 100'000'000);
        EXPECT_LE(*e.ground_truth.max_dl_thpt_per_slice_bps, 500'000'000);
        break;
      case SliceType::urllc:
        ASSERT_TRUE(e.ground_truth.dl_delay_budget_ms);
        EXPECT_GE(*e.ground_truth.dl_delay_budget_ms, 1.0);
        EXPECT_LE(*e.ground_truth.dl_delay_budget_ms, 7.0);
        ASSERT_TRUE(e.ground_truth.reliability_pct);
        EXPECT_GE(*e.ground_truth.reliability_pct, 99.9);
        break;
      case SliceType::mmtc:
        ASSERT_TRUE(e.ground_truth.device_count);
        EXPECT_GE(*e.ground_truth.device_count, 1'000);
        EXPECT_LE(*e.ground_truth.device_count, 1'000'000);
        break;
    }
  }
  EXPECT_EQ(counts[0], 20);
  EXPECT_EQ(counts[1], 20);
  EXPECT_EQ(counts[2], 60);
  EXPECT_EQ(ids.size(), 100u);
}

TEST(DatasetTest, DeterministicFilesAndRoundTrip) {
  auto dir = std::filesystem::temp_directory_path() / "orion_dataset_test";
  std::filesystem::create_directories(dir);
  eval::write_dataset(dir / "a.jsonl", eval::generate_dataset(7));
  eval::write_dataset(dir / "b.jsonl", eval::generate_dataset(7));
  auto slurp = [](const std::filesystem::path& p) {
    std::ifstream in(p);
    return std::string(std::istreambuf_iterator<char>(in), {});
  };
  EXPECT_EQ(slurp(dir / "a.jsonl"), slurp(dir / "b.jsonl"));
  EXPECT_NE(eval::generate_dataset(7), eval::generate_dataset(8));
  EXPECT_EQ(eval::load_dataset(dir / "a.jsonl"), eval::generate_dataset(7));

  {
    std::ofstream bad(dir / "bad.jsonl");
    bad << nlohmann::json(eval::generate_dataset(1)[0]).dump() << "\n{\"id\": 3}\n";
  }
  try {
    eval::load_dataset(dir / "bad.jsonl");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::schema_violation);
    EXPECT_NE(e.detail().find("2"), std::string::npos);
  }
  EXPECT_THROW(eval::load_dataset(dir / "missing.jsonl"), Error);
  std::filesystem::remove_all(dir);
}

TEST(RuleCheckerTest, EachFixtureTriggersExactlyItsRule) {
  auto entry = fixture_entry();
  EXPECT_TRUE(eval::check_tool_use_rules(entry, {{good_call()}, std::nullopt, std::nullopt}).empty());
  for (const auto& fx : rule_fixtures()) {
    auto v = eval::check_tool_use_rules(entry, fx.obs);
    ASSERT_EQ(v.size(), 1u) << eval::to_string(fx.rule);
    EXPECT_EQ(v[0].rule, fx.rule) << eval::to_string(v[0].rule) << " " << v[0].detail;
  }
}

TEST(RuleCheckerTest, Details) {
  auto entry = fixture_entry();
  EXPECT_EQ(eval::to_string(eval::Rule::r5), "R5");
  EXPECT_FALSE(eval::describe(eval::Rule::r8).empty());
  auto none = eval::check_tool_use_rules(entry, {{}, std::nullopt, std::nullopt});
  ASSERT_EQ(none.size(), 1u);
  EXPECT_EQ(none[0].rule, eval::Rule::r1);
  auto asked = eval::check_tool_use_rules(entry, {{}, std::nullopt, std::string("Which area?")});
  ASSERT_EQ(asked.size(), 1u);
  EXPECT_EQ(asked[0].rule, eval::Rule::r8);
  auto missing = good_call();
  missing.arguments.erase("downStreamDelayBudget");
  auto v = eval::check_tool_use_rules(entry, {{missing}, std::nullopt, std::nullopt});
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].rule, eval::Rule::r4);
  EXPECT_EQ(v[0].field, "downStreamDelayBudget");
  // A bad type is a schema problem only, not also a value mismatch.
  auto typed = good_call();
  typed.arguments["maxDlThptPerSlice"] = "10 Mbps";
  v = eval::check_tool_use_rules(entry, {{typed}, std::nullopt, std::nullopt});
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].rule, eval::Rule::r7);
  EXPECT_EQ(nlohmann::json(v[0])["rule"], "R7");
}

TEST(ReplayTranslatorTest, TranscriptRoundTripAndDecisions) {
  auto path = std::filesystem::temp_directory_path() / "orion_transcript_test.jsonl";
  gateway::TranscriptEntry ok{"a", {good_call()}, std::nullopt, std::nullopt, SliceType::urllc};
  gateway::TranscriptEntry refused{"b", {}, std::string("no"), std::nullopt, std::nullopt};
  gateway::TranscriptEntry asks{"c", {good_call()}, std::nullopt, std::string("Which area?"), SliceType::embb};
  gateway::write_transcript(path, {ok, refused, asks});
  auto loaded = gateway::load_transcript(path);
  ASSERT_EQ(loaded.size(), 3u);
  EXPECT_EQ(loaded.at("b").refusal, "no");

  gateway::ReplayTranslator t(path);
  Conversation c;
  c.conversation_id = "a";
  auto d = t.propose(c, kTools);
  ASSERT_TRUE(std::holds_alternative<gateway::ToolCalls>(d));
  EXPECT_EQ(std::get<gateway::ToolCalls>(d).calls[0].arguments, good_call().arguments);
  EXPECT_EQ(t.classify(c, {}), SliceType::urllc);

  c.conversation_id = "b";
  EXPECT_TRUE(std::holds_alternative<gateway::Refusal>(t.propose(c, kTools)));

  c.conversation_id = "c";
  EXPECT_TRUE(std::holds_alternative<gateway::Clarification>(t.propose(c, kTools)));
  c.clarification_rounds = 1;
  EXPECT_TRUE(std::holds_alternative<gateway::ToolCalls>(t.propose(c, kTools)));

  c.conversation_id = "zzz";
  try {
    t.propose(c, kTools);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::translation_failed);
  }
  std::filesystem::remove(path);
}

eval::RunReport sample_report() {
  eval::RunReport r;
  r.adapter = "deterministic";
  r.planned = 3;
  for (int i = 0; i < 3; ++i) {
    eval::EntryResult e;
    e.id = "ds-" + std::to_string(i);
    e.expected = SliceType::mmtc;
    e.predicted = i < 2 ? std::optional(SliceType::mmtc) : std::nullopt;
    e.policy_created = i < 2;
    e.enforced = i == 0;
    if (i == 2) e.failure = "downstream_error";
    for (auto s : model::kStages) e.timings.set(s, 1.0 + i);
    r.entries.push_back(e);
  }
  return r;
}

TEST(ReportTest, Aggregates) {
  auto r = sample_report();
  EXPECT_EQ(r.successes(), 2u);
  EXPECT_EQ(r.failures(), 1u);
  EXPECT_EQ(r.successes() + r.failures(), r.entries.size());
  EXPECT_EQ(r.enforced(), 1u);
  EXPECT_EQ(r.predictions(), 2u);
  EXPECT_DOUBLE_EQ(r.success_rate(), 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(r.classification_accuracy(), 1.0);
  EXPECT_DOUBLE_EQ(r.prediction_rate(), 2.0 / 3.0);
  auto stats = r.stage_stats();
  ASSERT_EQ(stats.size(), 6u);
  for (const auto& [stage, st] : stats) {
    EXPECT_EQ(st.n, 3u);
    EXPECT_DOUBLE_EQ(st.mean, 2.0);
    EXPECT_DOUBLE_EQ(st.stddev, 1.0);
  }
}

TEST(ReportTest, EmitFiles) {
  auto dir = std::filesystem::temp_directory_path() / "orion_report_test";
  std::filesystem::remove_all(dir);
  eval::emit_report(sample_report(), dir);
  for (auto name : {"report.json", "entries.csv", "summary.txt"}) EXPECT_TRUE(std::filesystem::exists(dir / name));
  std::ifstream csv(dir / "entries.csv");
  std::string line;
  int rows = 0;
  while (std::getline(csv, line)) ++rows;
  EXPECT_EQ(rows, 4);
  std::ifstream rj(dir / "report.json");
  auto j = nlohmann::json::parse(rj);
  EXPECT_EQ(j["processed"], 3);
  EXPECT_EQ(j["stages"].size(), 6u);
  EXPECT_NE(eval::summary_table(sample_report()).find("smo_intent_to_policy"), std::string::npos);
  std::filesystem::remove_all(dir);
}

TEST(ReportTest, EmptyReportHasHeaderOnlyCsv) {
  eval::RunReport r;
  auto csv = eval::entries_csv(r);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 1);
  EXPECT_EQ(r.success_rate(), 0.0);
  EXPECT_EQ(r.classification_accuracy(), 0.0);
}

}  // namespace
}  // namespace orion
