#include <gtest/gtest.h>

#include <atomic>
#include <thread>

#include "orion/node/ledger.hpp"
#include "orion/node/node_sim.hpp"
#include "support/testkit.hpp"

namespace orion::node {
namespace {

model::SliceId slice(int n) {
  model::SliceId s;
  s.sd = testkit::Gen(static_cast<std::uint64_t>(n)).hex6();
  s.nci = static_cast<std::uint32_t>(n);
  return s;
}

e2::RatioTriple ded(int d) { return {0, static_cast<std::uint8_t>(d), 100}; }

TEST(LedgerTest, FirstAllocation) {
  PrbLedger l(default_cell());
  EXPECT_FALSE(l.apply(slice(1), ded(30), e2::Discipline::proportional_fair));
  EXPECT_EQ(l.snapshot().dedicated_sum(), 30);
  EXPECT_EQ(l.snapshot().allocations.size(), 1u);
}

TEST(LedgerTest, RejectsOverCapacityAndKeepsState) {
  PrbLedger l(default_cell());
  ASSERT_FALSE(l.apply(slice(1), ded(50), e2::Discipline::proportional_fair));
  ASSERT_FALSE(l.apply(slice(2), ded(30), e2::Discipline::proportional_fair));
  auto before = l.snapshot();
  auto failure = l.apply(slice(3), ded(30), e2::Discipline::proportional_fair);
  ASSERT_TRUE(failure);
  EXPECT_EQ(failure->cause, e2::FailureCause::capacity_exceeded);
  EXPECT_EQ(l.snapshot(), before);
}

TEST(LedgerTest, RecontrolReplaces) {
  PrbLedger l(default_cell());
  ASSERT_FALSE(l.apply(slice(1), ded(30), e2::Discipline::proportional_fair));
  ASSERT_FALSE(l.apply(slice(2), ded(40), e2::Discipline::proportional_fair));
  EXPECT_FALSE(l.apply(slice(1), ded(50), e2::Discipline::earliest_deadline_first));
  EXPECT_EQ(l.snapshot().dedicated_sum(), 90);
  EXPECT_EQ(l.snapshot().allocations.at(slice(1)).discipline, e2::Discipline::earliest_deadline_first);
}

TEST(LedgerTest, ZeroRemovesAndBadTriplesRejected) {
  PrbLedger l(default_cell());
  ASSERT_FALSE(l.apply(slice(1), ded(30), e2::Discipline::proportional_fair));
  EXPECT_FALSE(l.apply(slice(1), {0, 0, 0}, e2::Discipline::proportional_fair));
  EXPECT_TRUE(l.snapshot().allocations.empty());
  auto bad = l.apply(slice(2), {40, 30, 100}, e2::Discipline::proportional_fair);
  ASSERT_TRUE(bad);
  EXPECT_EQ(bad->cause, e2::FailureCause::malformed);
}

TEST(LedgerPropertyTest, MatchesReferenceLedger) {
  testkit::Gen g(41);
  for (int seq = 0; seq < 300; ++seq) {
    PrbLedger l(default_cell());
    testkit::ReferenceLedger ref;
    for (int step = 0; step < 40; ++step) {
      auto s = slice(static_cast<int>(g.range(0, 6)));
      e2::RatioTriple r{static_cast<std::uint8_t>(g.range(0, 60)), static_cast<std::uint8_t>(g.range(0, 70)),
                        static_cast<std::uint8_t>(g.range(0, 101))};
      bool accepted = !l.apply(s, r, e2::Discipline::proportional_fair);
      ASSERT_EQ(accepted, ref.apply(s, r));
      auto snap = l.snapshot();
      ASSERT_LE(snap.dedicated_sum(), 100);
      ASSERT_EQ(snap.dedicated_sum(), ref.sum());
      auto want = ref.state();
      ASSERT_EQ(snap.allocations.size(), want.size());
      std::size_t i = 0;
      for (const auto& [id, a] : snap.allocations) {
        ASSERT_EQ(id, want[i].first);
        ASSERT_EQ(a.ratios, want[i].second);
        ++i;
      }
    }
  }
}

TEST(LedgerPropertyTest, ConcurrentSnapshotsStayWithinCapacity) {
  PrbLedger l(default_cell());
  std::atomic<bool> done{false};
  std::atomic<int> worst{0};
  std::thread reader([&] {
    while (!done) {
      auto sum = l.snapshot().dedicated_sum();
      int prev = worst.load();
      while (sum > prev && !worst.compare_exchange_weak(prev, sum)) {
      }
    }
  });
  std::vector<std::thread> writers;
  for (int w = 0; w < 4; ++w) {
    writers.emplace_back([&, w] {
      testkit::Gen g(static_cast<std::uint64_t>(100 + w));
      for (int i = 0; i < 5000; ++i) {
        l.apply(slice(static_cast<int>(g.range(0, 9))), ded(static_cast<int>(g.range(0, 45))),
                e2::Discipline::proportional_fair);
      }
    });
  }
  for (auto& t : writers) t.join();
  done = true;
  reader.join();
  EXPECT_LE(worst.load(), 100);
  EXPECT_GT(worst.load(), 0);
}

TEST(NodeAgentTest, SetupAdvertisesStyleTwoActionSix) {
  PrbLedger l(default_cell("gnb-9"));
  NodeAgent a(l, {e2::FunctionAdvert{}});
  auto pdu = a.setup_request(5);
  const auto& req = std::get<e2::SetupRequest>(pdu.body);
  EXPECT_EQ(req.node_id, "gnb-9");
  ASSERT_EQ(req.functions.size(), 1u);
  EXPECT_EQ(req.functions[0].style, 2);
  EXPECT_EQ(req.functions[0].action, 6);
  ASSERT_TRUE(req.cell);
  EXPECT_EQ(req.cell->n_prb, 273);
}

TEST(NodeAgentTest, ProtocolOrdering) {
  PrbLedger l(default_cell());
  NodeAgent a(l, {e2::FunctionAdvert{}});
  e2::ControlRequest req;
  req.slice = slice(1);
  req.ratios = ded(30);

  auto early = a.handle(e2::ControlPdu{9, req});
  ASSERT_TRUE(early);
  EXPECT_EQ(early->transaction_id, 9u);
  ASSERT_TRUE(std::holds_alternative<e2::ControlFailure>(early->body));
  EXPECT_TRUE(l.snapshot().allocations.empty());

  EXPECT_FALSE(a.handle(e2::ControlPdu{1, e2::SetupResponse{{3}}}));
  EXPECT_TRUE(a.setup_complete());
  auto second = a.handle(e2::ControlPdu{2, e2::SetupResponse{{3}}});
  ASSERT_TRUE(second);
  EXPECT_TRUE(std::holds_alternative<e2::ControlFailure>(second->body));

  auto ack = a.handle(e2::ControlPdu{10, req});
  ASSERT_TRUE(ack);
  EXPECT_EQ(ack->transaction_id, 10u);
  EXPECT_TRUE(std::holds_alternative<e2::ControlAcknowledge>(ack->body));

  req.action_id = 7;
  auto unknown = a.handle(e2::ControlPdu{11, req});
  ASSERT_TRUE(unknown);
  EXPECT_EQ(std::get<e2::ControlFailure>(unknown->body).cause, e2::FailureCause::unknown_function);
}

TEST(NodeAgentTest, CapacityFailureCause) {
  PrbLedger l(default_cell());
  NodeAgent a(l, {e2::FunctionAdvert{}});
  a.handle(e2::ControlPdu{1, e2::SetupResponse{{3}}});
  ASSERT_FALSE(l.apply(slice(1), ded(80), e2::Discipline::proportional_fair));
  e2::ControlRequest req;
  req.slice = slice(2);
  req.ratios = ded(30);
  auto out = a.handle_control(4, req);
  EXPECT_EQ(out.transaction_id, 4u);
  EXPECT_EQ(std::get<e2::ControlFailure>(out.body).cause, e2::FailureCause::capacity_exceeded);
  EXPECT_EQ(l.snapshot().dedicated_sum(), 80);
}

// Every control request yields exactly one reply carrying its transaction id.
TEST(NodeAgentTest, Liveness) {
  PrbLedger l(default_cell());
  NodeAgent a(l, {e2::FunctionAdvert{}});
  a.handle(e2::ControlPdu{1, e2::SetupResponse{{3}}});
  testkit::Gen g(42);
  for (int i = 0; i < 2000; ++i) {
    e2::ControlRequest req;
    req.slice = slice(static_cast<int>(g.range(0, 5)));
    req.ratios = testkit::ratio_triple(g);
    if (g.coin(0.1)) req.style = 1;
    auto txid = static_cast<std::uint32_t>(g.u64());
    auto out = a.handle(e2::ControlPdu{txid, req});
    ASSERT_TRUE(out);
    EXPECT_EQ(out->transaction_id, txid);
    EXPECT_TRUE(std::holds_alternative<e2::ControlAcknowledge>(out->body) ||
                std::holds_alternative<e2::ControlFailure>(out->body));
  }
  EXPECT_LE(l.snapshot().dedicated_sum(), 100);
}

}  // namespace
}  // namespace orion::node
