#include "orion/booking/store.hpp"

#include <chrono>
#include <memory>
#include <random>

#include "orion/error.hpp"
#include "orion/model/rules.hpp"

namespace orion::booking {

IdGenerator random_id_generator(std::optional<std::uint64_t> seed) {
  auto state = std::make_shared<std::pair<std::mutex, std::mt19937_64>>();
  state->second.seed(seed ? *seed : std::random_device{}() ^ (std::uint64_t{std::random_device{}()} << 32));
  return [state] {
    static constexpr char kHex[] = "0123456789abcdef";
    std::lock_guard lock(state->first);
    std::string id;
    id.reserve(32);
    for (int word = 0; word < 2; ++word) {
      auto bits = state->second();
      for (int i = 0; i < 16; ++i) {
        id.push_back(kHex[bits & 0xF]);
        bits >>= 4;
      }
    }
    return id;
  };
}

BookingStore::BookingStore(std::size_t threshold, IdGenerator ids) : threshold_(threshold), ids_(std::move(ids)) {
  if (threshold_ == 0) throw Error(Errc::invalid_config, "capacity threshold must be positive");
}

model::SessionBooking BookingStore::create_session(const model::SliceRequirements& req) {
  auto violations = model::validate_requirements(req);
  if (!violations.empty()) {
    std::string detail;
    for (const auto& v : violations) detail += (detail.empty() ? "" : "; ") + v.message();
    throw Error(Errc::schema_violation, detail);
  }
  std::lock_guard lock(mu_);
  if (active_ >= threshold_) {
    throw Error(Errc::admission_refused,
                std::to_string(active_) + " active sessions, threshold " + std::to_string(threshold_));
  }
  std::string id;
  do {
    id = ids_();
  } while (index_.contains(id));
  model::SessionBooking booking;
  booking.session_id = id;
  booking.requirements = req;
  booking.created_at_ms =
      std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::system_clock::now().time_since_epoch())
          .count();
  booking.status = model::SessionStatus::active;
  index_.emplace(id, sessions_.size());
  sessions_.push_back(booking);
  ++active_;
  return booking;
}

model::SessionBooking BookingStore::release_session(const std::string& session_id) {
  std::lock_guard lock(mu_);
  auto it = index_.find(session_id);
  if (it == index_.end()) throw Error(Errc::not_found, "no session " + session_id);
  auto& booking = sessions_[it->second];
  if (booking.status == model::SessionStatus::released) {
    throw Error(Errc::already_released, "session " + session_id + " already released");
  }
  booking.status = model::SessionStatus::released;
  --active_;
  return booking;
}

std::vector<model::SessionBooking> BookingStore::list_sessions() const {
  std::lock_guard lock(mu_);
  return sessions_;
}

std::optional<model::SessionBooking> BookingStore::find(const std::string& session_id) const {
  std::lock_guard lock(mu_);
  auto it = index_.find(session_id);
  if (it == index_.end()) return std::nullopt;
  return sessions_[it->second];
}

std::size_t BookingStore::active_count() const {
  std::lock_guard lock(mu_);
  return active_;
}

}  // namespace orion::booking
