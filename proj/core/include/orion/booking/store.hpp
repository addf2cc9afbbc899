#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "orion/model/types.hpp"

namespace orion::booking {

using IdGenerator = std::function<std::string()>;

// 128-bit ids as 32 lowercase hex characters. A seed makes the sequence
// reproducible.
IdGenerator random_id_generator(std::optional<std::uint64_t> seed = std::nullopt);

inline constexpr std::size_t kDefaultThreshold = 10;

// In-memory session store with admission control: at most `threshold`
// sessions are ACTIVE at any time. Ids are never reused.
class BookingStore {
 public:
  explicit BookingStore(std::size_t threshold = kDefaultThreshold, IdGenerator ids = random_id_generator());

  // Throws Error(schema_violation) when validation fails and
  // Error(admission_refused) when the store is full. Refusals leave the store
  // unchanged.
  model::SessionBooking create_session(const model::SliceRequirements& req);
  // Throws Error(not_found | already_released).
  model::SessionBooking release_session(const std::string& session_id);

  std::vector<model::SessionBooking> list_sessions() const;
  std::optional<model::SessionBooking> find(const std::string& session_id) const;
  std::size_t active_count() const;
  std::size_t threshold() const noexcept { return threshold_; }

 private:
  std::size_t threshold_;
  IdGenerator ids_;
  mutable std::mutex mu_;
  std::vector<model::SessionBooking> sessions_;
  std::unordered_map<std::string, std::size_t> index_;
  std::size_t active_ = 0;
};

}  // namespace orion::booking
