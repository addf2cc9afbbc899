#pragma once

#include <chrono>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "orion/e2/pdu.hpp"

namespace orion::e2 {

// One length-prefixed PDU stream over TCP. Frames are read into an internal
// buffer, so a receive timeout never desynchronizes the stream. Intended for
// one reader and one writer; callers serialize access per connection.
class FramedConnection {
 public:
  struct Impl;

  ~FramedConnection();
  FramedConnection(const FramedConnection&) = delete;
  FramedConnection& operator=(const FramedConnection&) = delete;

  static std::unique_ptr<FramedConnection> connect(const std::string& host, std::uint16_t port,
                                                   std::chrono::milliseconds timeout);

  void send(const ControlPdu& pdu);
  void send_payload(std::span<const std::uint8_t> payload);
  // Writes bytes verbatim, bypassing framing. Diagnostics and tests only.
  void write_raw(std::span<const std::uint8_t> bytes);

  // Throws Error(timeout) when nothing complete arrives in time,
  // Error(connection_lost) on EOF/reset, Error(frame_too_large) on an
  // oversized length prefix (the connection is closed afterwards).
  std::vector<std::uint8_t> receive_payload(std::optional<std::chrono::milliseconds> timeout = std::nullopt);
  ControlPdu receive(std::optional<std::chrono::milliseconds> timeout = std::nullopt);

  void close();
  bool is_open() const;
  std::string peer() const;

 private:
  friend class FrameListener;
  explicit FramedConnection(std::unique_ptr<Impl> impl);
  std::unique_ptr<Impl> impl_;
};

class FrameListener {
 public:
  // port 0 binds an ephemeral port.
  FrameListener(const std::string& host, std::uint16_t port);
  ~FrameListener();
  FrameListener(const FrameListener&) = delete;
  FrameListener& operator=(const FrameListener&) = delete;

  std::uint16_t port() const;
  // Returns nullptr on timeout.
  std::unique_ptr<FramedConnection> accept(std::chrono::milliseconds timeout);
  void close();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace orion::e2
