#include <gtest/gtest.h>

#include <thread>

#include "orion/e2/codec.hpp"
#include "orion/e2/transport.hpp"
#include "orion/error.hpp"

namespace orion::e2 {
namespace {

using namespace std::chrono_literals;

struct Pair {
  FrameListener listener{"127.0.0.1", 0};
  std::unique_ptr<FramedConnection> client;
  std::unique_ptr<FramedConnection> server;

  Pair() {
    std::thread t([&] { server = listener.accept(2s); });
    client = FramedConnection::connect("127.0.0.1", listener.port(), 2s);
    t.join();
  }
};

Errc code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error";
  return Errc::invalid_argument;
}

TEST(TransportTest, EchoKeepsTransactionId) {
  Pair p;
  ASSERT_TRUE(p.server);
  ControlRequest req;
  req.slice.sd = "ABCDEF";
  req.ratios = {0, 30, 100};
  p.client->send(ControlPdu{77, req});
  auto in = p.server->receive(2s);
  EXPECT_EQ(in.transaction_id, 77u);
  EXPECT_EQ(std::get<ControlRequest>(in.body), req);
  p.server->send(ControlPdu{in.transaction_id, ControlAcknowledge{3}});
  auto ack = p.client->receive(2s);
  EXPECT_EQ(ack.transaction_id, 77u);
  EXPECT_TRUE(std::holds_alternative<ControlAcknowledge>(ack.body));
}

TEST(TransportTest, SplitWritesReassemble) {
  Pair p;
  auto bytes = frame(encode(ControlPdu{5, ControlAcknowledge{1}}));
  std::span<const std::uint8_t> all(bytes);
  p.client->write_raw(all.subspan(0, 3));
  EXPECT_EQ(code_of([&] { p.server->receive(50ms); }), Errc::timeout);
  p.client->write_raw(all.subspan(3));
  EXPECT_EQ(p.server->receive(2s).transaction_id, 5u);
}

TEST(TransportTest, OversizedPrefixClosesConnection) {
  Pair p;
  std::vector<std::uint8_t> prefix = {0x00, 0x10, 0x00, 0x00};  // 2^20
  p.client->write_raw(prefix);
  EXPECT_EQ(code_of([&] { p.server->receive(2s); }), Errc::frame_too_large);
  EXPECT_FALSE(p.server->is_open());
}

TEST(TransportTest, PeerCloseIsConnectionLost) {
  Pair p;
  p.client->close();
  EXPECT_EQ(code_of([&] { p.server->receive(2s); }), Errc::connection_lost);
}

TEST(TransportTest, MalformedPayloadIsTyped) {
  Pair p;
  std::vector<std::uint8_t> junk = {1, 2, 3, 4, 5, 6, 7, 8, 9};
  p.client->send_payload(junk);
  EXPECT_EQ(code_of([&] { p.server->receive(2s); }), Errc::malformed_frame);
}

TEST(TransportTest, AcceptTimesOutAndConnectFails) {
  FrameListener l("127.0.0.1", 0);
  EXPECT_EQ(l.accept(30ms), nullptr);
  auto port = l.port();
  l.close();
  EXPECT_THROW(FramedConnection::connect("127.0.0.1", port, 500ms), Error);
}

}  // namespace
}  // namespace orion::e2
