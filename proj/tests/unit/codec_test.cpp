#include <gtest/gtest.h>

#include "orion/e2/codec.hpp"
#include "orion/error.hpp"
#include "support/testkit.hpp"

namespace orion::e2 {
namespace {

using Bytes = std::vector<std::uint8_t>;

Errc decode_error(const Bytes& b) {
  try {
    decode(b);
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "decode accepted the input";
  return Errc::invalid_argument;
}

ControlPdu reference_request() {
  ControlRequest req;
  req.slice = model::SliceId{1, "456DEF", "724", "11", 1};
  req.ratios = {0, 30, 100};
  req.discipline = Discipline::proportional_fair;
  return ControlPdu{7, req};
}

// Golden vectors, written out by hand from the documented layout.
const Bytes kGoldenControlRequest = {
    0x4F, 0x52, 0x01, 0x03, 0x00, 0x00, 0x00, 0x07,  // header
    0x10, 0x00, 0x02, 0x00, 0x03,                    // ran_function 3
    0x11, 0x00, 0x01, 0x02,                          // style 2
    0x12, 0x00, 0x01, 0x06,                          // action 6
    0x13, 0x00, 0x0E, 0x01, 0x45, 0x6D, 0xEF,        // slice: sst, sd
    0x37, 0x32, 0x34, 0x31, 0x31, 0x46,              // "72411F"
    0x00, 0x00, 0x00, 0x01,                          // nci
    0x14, 0x00, 0x03, 0x00, 0x1E, 0x64,              // ratios 0/30/100
    0x15, 0x00, 0x01, 0x02,                          // proportional fair
};
const Bytes kGoldenSetupRequest = {
    0x4F, 0x52, 0x01, 0x01, 0x00, 0x00, 0x00, 0x01,
    0x01, 0x00, 0x07, 'g',  'n',  'b',  '-',  '0', '0', '1',
    0x02, 0x00, 0x04, 0x00, 0x03, 0x02, 0x06,
};
const Bytes kGoldenSetupResponse = {0x4F, 0x52, 0x01, 0x02, 0x00, 0x00, 0x00, 0x01, 0x10, 0x00, 0x02, 0x00, 0x03};
const Bytes kGoldenAck = {0x4F, 0x52, 0x01, 0x04, 0x00, 0x00, 0x00, 0x07, 0x10, 0x00, 0x02, 0x00, 0x03};
const Bytes kGoldenFailure = {0x4F, 0x52, 0x01, 0x05, 0x00, 0x00, 0x00, 0x07, 0x20, 0x00,
                              0x01, 0x01, 0x21, 0x00, 0x04, 'f',  'u',  'l',  'l'};

TEST(CodecGoldenTest, EveryVariant) {
  EXPECT_EQ(encode(reference_request()), kGoldenControlRequest);
  EXPECT_EQ(encode(ControlPdu{1, SetupRequest{"gnb-001", {FunctionAdvert{}}, std::nullopt}}), kGoldenSetupRequest);
  EXPECT_EQ(encode(ControlPdu{1, SetupResponse{{3}}}), kGoldenSetupResponse);
  EXPECT_EQ(encode(ControlPdu{7, ControlAcknowledge{3}}), kGoldenAck);
  EXPECT_EQ(encode(ControlPdu{7, ControlFailure{FailureCause::capacity_exceeded, "full"}}), kGoldenFailure);

  EXPECT_EQ(decode(kGoldenControlRequest), reference_request());
  EXPECT_EQ(decode(kGoldenFailure), (ControlPdu{7, ControlFailure{FailureCause::capacity_exceeded, "full"}}));
}

TEST(CodecTest, StyleAndActionOctets) {
  auto bytes = encode(reference_request());
  // style TLV value at 8+5+3, action TLV value at 8+5+4+3
  EXPECT_EQ(bytes[16], 0x02);
  EXPECT_EQ(bytes[20], 0x06);
  EXPECT_EQ(bytes, encode(reference_request()));
}

TEST(CodecTest, ThreeDigitMnc) {
  auto pdu = reference_request();
  std::get<ControlRequest>(pdu.body).slice.plmn_mnc = "011";
  auto bytes = encode(pdu);
  EXPECT_EQ(bytes[31], '0');
  EXPECT_EQ(bytes[33], '1');
  EXPECT_EQ(decode(bytes), pdu);
}

TEST(CodecTest, SetupWithCellConfig) {
  SetupRequest req{"gnb-7", {FunctionAdvert{}}, model::CellConfig{"gnb-7", 9, 100'000'000, 1, 4, 8, 273, 140'000}};
  ControlPdu pdu{42, req};
  EXPECT_EQ(decode(encode(pdu)), pdu);
}

TEST(CodecTest, UnknownTagSkipped) {
  auto bytes = kGoldenAck;
  Bytes extra = {0x7E, 0x00, 0x03, 0xAA, 0xBB, 0xCC};
  bytes.insert(bytes.end(), extra.begin(), extra.end());
  EXPECT_EQ(decode(bytes), (ControlPdu{7, ControlAcknowledge{3}}));
}

TEST(CodecTest, DecodeErrors) {
  auto truncated = kGoldenControlRequest;
  truncated.resize(truncated.size() - 2);
  EXPECT_EQ(decode_error(truncated), Errc::malformed_frame);
  EXPECT_EQ(decode_error(Bytes{0x4F, 0x52}), Errc::malformed_frame);

  auto bad_type = kGoldenAck;
  bad_type[3] = 0x7F;
  EXPECT_EQ(decode_error(bad_type), Errc::unknown_message_type);

  auto bad_ratio = kGoldenControlRequest;
  bad_ratio[42] = 0x65;  // dedicated = 101
  EXPECT_EQ(decode_error(bad_ratio), Errc::field_range_error);

  auto bad_magic = kGoldenAck;
  bad_magic[0] = 0x00;
  EXPECT_EQ(decode_error(bad_magic), Errc::malformed_frame);

  auto bad_version = kGoldenAck;
  bad_version[2] = 0x02;
  EXPECT_EQ(decode_error(bad_version), Errc::malformed_frame);

  auto trailing = kGoldenAck;
  trailing.push_back(0x00);
  EXPECT_EQ(decode_error(trailing), Errc::malformed_frame);

  auto dup = kGoldenControlRequest;
  dup.insert(dup.end(), {0x11, 0x00, 0x01, 0x02});
  EXPECT_EQ(decode_error(dup), Errc::malformed_frame);

  auto missing = kGoldenControlRequest;
  missing.resize(missing.size() - 4);  // drop the discipline TLV
  EXPECT_EQ(decode_error(missing), Errc::malformed_frame);
}

TEST(CodecTest, EncodeRejectsUnrepresentable) {
  auto pdu = reference_request();
  std::get<ControlRequest>(pdu.body).ratios.max = 101;
  EXPECT_THROW(encode(pdu), Error);
  pdu = reference_request();
  std::get<ControlRequest>(pdu.body).slice.sd = "XYZ";
  EXPECT_THROW(encode(pdu), Error);
}

TEST(CodecTest, FrameCap) {
  Bytes big(1u << 20, 0);
  try {
    frame(big);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::frame_too_large);
  }
  auto f = frame(kGoldenAck);
  ASSERT_EQ(f.size(), kGoldenAck.size() + 4);
  EXPECT_EQ(f[3], kGoldenAck.size());
  EXPECT_EQ(Bytes(f.begin() + 4, f.end()), kGoldenAck);
}

TEST(CodecPropertyTest, RoundTrip) {
  testkit::Gen g(21);
  for (int i = 0; i < 5000; ++i) {
    auto pdu = testkit::pdu(g);
    auto bytes = encode(pdu);
    ASSERT_EQ(decode(bytes), pdu) << i;
    ASSERT_EQ(encode(pdu), bytes);
  }
}

// Random bytes, and mutations of valid payloads, decode or fail with a
// typed error; nothing else escapes.
TEST(CodecPropertyTest, DecodeIsTotal) {
  testkit::Gen g(22);
  for (int i = 0; i < 20000; ++i) {
    Bytes b;
    if (g.coin()) {
      b = encode(testkit::pdu(g));
      auto flips = g.range(1, 4);
      for (int k = 0; k < flips && !b.empty(); ++k) {
        b[static_cast<std::size_t>(g.range(0, static_cast<std::int64_t>(b.size()) - 1))] =
            static_cast<std::uint8_t>(g.range(0, 255));
      }
      if (g.coin()) b.resize(static_cast<std::size_t>(g.range(0, static_cast<std::int64_t>(b.size()))));
    } else {
      b.resize(static_cast<std::size_t>(g.range(0, 64)));
      for (auto& x : b) x = static_cast<std::uint8_t>(g.range(0, 255));
      if (b.size() >= 4 && g.coin()) {
        b[0] = 0x4F;
        b[1] = 0x52;
        b[2] = 0x01;
        b[3] = static_cast<std::uint8_t>(g.range(1, 5));
      }
    }
    try {
      auto pdu = decode(b);
      (void)encode(pdu);
    } catch (const Error& e) {
      auto c = e.code();
      EXPECT_TRUE(c == Errc::malformed_frame || c == Errc::unknown_message_type || c == Errc::field_range_error)
          << to_string(c);
    }
  }
}

}  // namespace
}  // namespace orion::e2
