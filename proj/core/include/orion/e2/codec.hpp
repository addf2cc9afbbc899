#pragma once

// Canonical binary layout for E2 PDUs.
//
//   payload := magic(0x4F52) version(0x01) msg_type(u8) transaction_id(u32 BE) tlv*
//   tlv     := tag(u8) length(u16 BE) value[length]
//
// Tags:
//   0x01 node_id      utf-8
//   0x02 function     function_id u16, style u8, action u8 (repeatable)
//   0x03 cell_config  bandwidth_hz u32, numerology u8, mimo u8, modulation u8,
//                     n_prb u16, overhead_ppm u32, nci u32
//   0x10 ran_function u16 (repeatable in setup responses)
//   0x11 style        u8
//   0x12 action_id    u8
//   0x13 slice        sst u8, sd 3 bytes, mcc+mnc 6 ascii (2-digit mnc padded
//                     with a trailing 'F'), nci u32
//   0x14 ratios       min u8, dedicated u8, max u8 (each 0..100)
//   0x15 discipline   u8
//   0x20 cause        u8
//   0x21 detail       utf-8
//
// Unknown tags are skipped. A frame on the stream is a u32 BE payload length
// followed by the payload.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "orion/e2/pdu.hpp"

namespace orion::e2 {

inline constexpr std::uint16_t kMagic = 0x4F52;
inline constexpr std::uint8_t kVersion = 0x01;
inline constexpr std::size_t kHeaderSize = 8;
inline constexpr std::size_t kMaxFrameSize = 64 * 1024;

namespace tag {
inline constexpr std::uint8_t node_id = 0x01;
inline constexpr std::uint8_t function = 0x02;
inline constexpr std::uint8_t cell_config = 0x03;
inline constexpr std::uint8_t ran_function = 0x10;
inline constexpr std::uint8_t style = 0x11;
inline constexpr std::uint8_t action_id = 0x12;
inline constexpr std::uint8_t slice = 0x13;
inline constexpr std::uint8_t ratios = 0x14;
inline constexpr std::uint8_t discipline = 0x15;
inline constexpr std::uint8_t cause = 0x20;
inline constexpr std::uint8_t detail = 0x21;
}  // namespace tag

// Deterministic; throws Error(field_range_error) if the PDU cannot be
// represented (ratio > 100, malformed slice id, oversized string).
std::vector<std::uint8_t> encode(const ControlPdu& pdu);

// Throws Error(malformed_frame | unknown_message_type | field_range_error).
ControlPdu decode(std::span<const std::uint8_t> bytes);

// Length-prefixed frame around an encoded payload. Throws
// Error(frame_too_large) above kMaxFrameSize.
std::vector<std::uint8_t> frame(std::span<const std::uint8_t> payload);

}  // namespace orion::e2
