#pragma once

// Hand-rolled generators and reference models shared by the unit tests and
// the acceptance binary.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "orion/e2/pdu.hpp"
#include "orion/model/types.hpp"

namespace orion::testkit {

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  std::uint64_t u64() { return rng_(); }
  std::int64_t range(std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng_);
  }
  double real(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(rng_); }
  template <typename T>
  const T& pick(const std::vector<T>& v) {
    return v[static_cast<std::size_t>(range(0, static_cast<std::int64_t>(v.size()) - 1))];
  }

  std::string digits(std::size_t n) {
    std::string s;
    for (std::size_t i = 0; i < n; ++i) s.push_back(static_cast<char>('0' + range(0, 9)));
    return s;
  }
  std::string hex6() {
    static constexpr char kHex[] = "0123456789ABCDEF";
    std::string s;
    for (int i = 0; i < 6; ++i) s.push_back(kHex[range(0, 15)]);
    return s;
  }
  std::string text(std::size_t max_len) {
    std::string s;
    auto n = static_cast<std::size_t>(range(0, static_cast<std::int64_t>(max_len)));
    for (std::size_t i = 0; i < n; ++i) s.push_back(static_cast<char>(range(0x20, 0x7E)));
    return s;
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

inline model::SliceId slice_id(Gen& g) {
  model::SliceId s;
  s.sst = static_cast<std::uint8_t>(g.range(0, 255));
  s.sd = g.hex6();
  s.plmn_mcc = g.digits(3);
  s.plmn_mnc = g.digits(g.coin() ? 2 : 3);
  s.nci = static_cast<std::uint32_t>(g.range(0, 0xFFFFFFFFLL));
  return s;
}

// Requirements that pass validation: each field independently stated or
// not, per-slice throughput never below per-device.
inline model::SliceRequirements valid_requirements(Gen& g) {
  model::SliceRequirements r;
  if (g.coin()) r.area_of_service = "area-" + g.digits(3);
  if (g.coin()) r.duration_s = g.range(1, 86'400 * 30);
  if (g.coin()) r.device_count = g.range(1, 2'000'000);
  if (g.coin()) r.max_dl_thpt_per_device_bps = g.range(1, 1'000'000'000);
  if (g.coin()) r.max_ul_thpt_per_device_bps = g.range(1, 1'000'000'000);
  if (g.coin()) {
    auto floor = r.max_dl_thpt_per_device_bps.value_or(1);
    r.max_dl_thpt_per_slice_bps = g.range(floor, floor + 10'000'000'000LL);
  }
  if (g.coin()) {
    auto floor = r.max_ul_thpt_per_device_bps.value_or(1);
    r.max_ul_thpt_per_slice_bps = g.range(floor, floor + 10'000'000'000LL);
  }
  if (g.coin()) r.dl_delay_budget_ms = g.real(0.1, 500.0);
  if (g.coin()) r.ul_delay_budget_ms = g.real(0.1, 500.0);
  if (g.coin()) r.packet_error_rate = g.real(1e-9, 0.5);
  if (g.coin()) r.availability_pct = g.real(0.5, 100.0);
  if (g.coin()) r.reliability_pct = g.real(0.5, 100.0);
  return r;
}

inline e2::RatioTriple ratio_triple(Gen& g) {
  e2::RatioTriple t;
  t.dedicated = static_cast<std::uint8_t>(g.range(0, 100));
  t.min = static_cast<std::uint8_t>(g.range(0, t.dedicated));
  t.max = static_cast<std::uint8_t>(g.range(t.dedicated, 100));
  return t;
}

inline model::CellConfig cell_config(Gen& g) {
  model::CellConfig c;
  c.node_id = "gnb-" + g.digits(3);
  c.nci = static_cast<std::uint32_t>(g.range(0, 0xFFFFFFFFLL));
  c.bandwidth_hz = g.range(1, 4'000'000'000LL);
  c.numerology_mu = static_cast<int>(g.range(0, 4));
  c.mimo_layers = static_cast<int>(g.range(1, 8));
  c.modulation_bits = static_cast<int>(2 * g.range(1, 4));
  c.n_prb = static_cast<int>(g.range(1, 275));
  c.overhead_ppm = static_cast<std::uint32_t>(g.range(0, 500'000));
  return c;
}

inline e2::ControlPdu pdu(Gen& g) {
  e2::ControlPdu p;
  p.transaction_id = static_cast<std::uint32_t>(g.u64());
  switch (g.range(0, 4)) {
    case 0: {
      e2::SetupRequest req;
      req.node_id = "gnb-" + g.text(20);
      auto n = g.range(0, 4);
      for (std::int64_t i = 0; i < n; ++i) {
        req.functions.push_back({static_cast<std::uint16_t>(g.range(0, 0xFFFF)),
                                 static_cast<std::uint8_t>(g.range(0, 255)),
                                 static_cast<std::uint8_t>(g.range(0, 255))});
      }
      if (g.coin()) {
        auto cell = cell_config(g);
        cell.node_id = req.node_id;
        req.cell = cell;
      }
      p.body = std::move(req);
      break;
    }
    case 1: {
      e2::SetupResponse resp;
      auto n = g.range(0, 4);
      for (std::int64_t i = 0; i < n; ++i) resp.accepted_functions.push_back(static_cast<std::uint16_t>(g.range(0, 0xFFFF)));
      p.body = std::move(resp);
      break;
    }
    case 2: {
      e2::ControlRequest req;
      req.ran_function_id = static_cast<std::uint16_t>(g.range(0, 0xFFFF));
      req.style = static_cast<std::uint8_t>(g.range(0, 255));
      req.action_id = static_cast<std::uint8_t>(g.range(0, 255));
      req.slice = slice_id(g);
      req.ratios = ratio_triple(g);
      req.discipline = g.coin() ? e2::Discipline::earliest_deadline_first : e2::Discipline::proportional_fair;
      p.body = std::move(req);
      break;
    }
    case 3:
      p.body = e2::ControlAcknowledge{static_cast<std::uint16_t>(g.range(0, 0xFFFF))};
      break;
    default: {
      static const std::vector<e2::FailureCause> causes = {
          e2::FailureCause::capacity_exceeded, e2::FailureCause::unknown_function, e2::FailureCause::malformed};
      p.body = e2::ControlFailure{g.pick(causes), g.text(40)};
      break;
    }
  }
  return p;
}

// PRB percentage by search: the least k with k * capacity >= 100 * requested.
// nullopt when no k <= 100 qualifies.
inline std::optional<int> prb_percent_oracle(std::int64_t requested, std::int64_t capacity) {
  const auto need = static_cast<__int128>(requested) * 100;
  for (int k = 0; k <= 100; ++k) {
    if (static_cast<__int128>(k) * capacity >= need) return k;
  }
  return std::nullopt;
}

// Capacity guard over a flat list, mirroring the node's acceptance rule with
// none of its data structures.
class ReferenceLedger {
 public:
  struct Row {
    model::SliceId slice;
    e2::RatioTriple ratios;
  };

  // Returns true when the request is accepted.
  bool apply(const model::SliceId& slice, const e2::RatioTriple& r) {
    if (r.min > r.dedicated || r.dedicated > r.max || r.max > 100) return false;
    int others = 0;
    for (const auto& row : rows_) {
      if (!(row.slice == slice)) others += row.ratios.dedicated;
    }
    if (r.dedicated == 0) {
      rows_.erase(std::remove_if(rows_.begin(), rows_.end(), [&](const Row& row) { return row.slice == slice; }),
                  rows_.end());
      return true;
    }
    if (others + r.dedicated > 100) return false;
    for (auto& row : rows_) {
      if (row.slice == slice) {
        row.ratios = r;
        return true;
      }
    }
    rows_.push_back({slice, r});
    return true;
  }

  int sum() const {
    int s = 0;
    for (const auto& row : rows_) s += row.ratios.dedicated;
    return s;
  }

  // Sorted (slice, triple) pairs for comparison with a ledger snapshot.
  std::vector<std::pair<model::SliceId, e2::RatioTriple>> state() const {
    std::vector<std::pair<model::SliceId, e2::RatioTriple>> out;
    for (const auto& row : rows_) out.emplace_back(row.slice, row.ratios);
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
  }

 private:
  std::vector<Row> rows_;
};

// Legal lifecycle table written out longhand.
inline std::optional<model::IntentState> expected_successor(model::IntentState s, model::LifecycleEvent e) {
  using model::IntentState;
  using model::LifecycleEvent;
  if (s == IntentState::terminated) return std::nullopt;
  if (e == LifecycleEvent::terminate) return IntentState::terminated;
  if (s == IntentState::created && e == LifecycleEvent::activate) return IntentState::activated;
  if (s == IntentState::activated && e == LifecycleEvent::monitor) return IntentState::monitoring;
  if (s == IntentState::monitoring && e == LifecycleEvent::modify) return IntentState::modified;
  if (s == IntentState::modified && e == LifecycleEvent::activate) return IntentState::activated;
  if (e == LifecycleEvent::suspend &&
      (s == IntentState::activated || s == IntentState::monitoring || s == IntentState::modified)) {
    return IntentState::suspended;
  }
  if (s == IntentState::suspended && e == LifecycleEvent::resume) return IntentState::activated;
  return std::nullopt;
}

}  // namespace orion::testkit
