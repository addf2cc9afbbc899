#pragma once

#include <chrono>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "orion/booking/store.hpp"

namespace orion::booking {

struct BookingServiceConfig {
  std::string host = "127.0.0.1";
  std::uint16_t port = 0;
  std::size_t threshold = kDefaultThreshold;
  std::optional<std::uint64_t> id_seed;
};

// NetworkSliceBooking mock:
//   POST   /sessions       SliceRequirements -> SessionBooking (201);
//                          429 {"status":429,"code":"TOO_MANY_REQUESTS"}; 400 on schema errors
//   DELETE /sessions/{id}  -> released SessionBooking
//   GET    /sessions       -> [SessionBooking]
//   GET    /sessions/{id}  -> SessionBooking
class BookingService {
 public:
  explicit BookingService(BookingServiceConfig config = {});
  ~BookingService();
  BookingService(const BookingService&) = delete;
  BookingService& operator=(const BookingService&) = delete;

  std::uint16_t start();
  void stop();
  std::uint16_t port() const noexcept;
  std::string url() const;
  BookingStore& store() noexcept;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

class BookingClient {
 public:
  explicit BookingClient(std::string base_url, std::chrono::milliseconds timeout = std::chrono::milliseconds(10000));

  // Throws Error(not_found | already_released | transport_error).
  model::SessionBooking release_session(const std::string& session_id) const;
  std::vector<model::SessionBooking> list_sessions() const;

 private:
  std::string base_url_;
  std::chrono::milliseconds timeout_;
};

}  // namespace orion::booking
