#include "orion/xapp/capacity.hpp"

#include <array>
#include <string>
#include <utility>

#include "orion/error.hpp"

namespace orion::xapp {

namespace {

struct PrbRow {
  int mu;
  int mhz;
  int n_prb;
};

constexpr std::array kPrbTable = {
    // FR1, 15 kHz
    PrbRow{0, 5, 25}, PrbRow{0, 10, 52}, PrbRow{0, 15, 79}, PrbRow{0, 20, 106}, PrbRow{0, 25, 133},
    PrbRow{0, 30, 160}, PrbRow{0, 35, 188}, PrbRow{0, 40, 216}, PrbRow{0, 45, 242}, PrbRow{0, 50, 270},
    // FR1, 30 kHz
    PrbRow{1, 5, 11}, PrbRow{1, 10, 24}, PrbRow{1, 15, 38}, PrbRow{1, 20, 51}, PrbRow{1, 25, 65},
    PrbRow{1, 30, 78}, PrbRow{1, 35, 92}, PrbRow{1, 40, 106}, PrbRow{1, 45, 119}, PrbRow{1, 50, 133},
    PrbRow{1, 60, 162}, PrbRow{1, 70, 189}, PrbRow{1, 80, 217}, PrbRow{1, 90, 245}, PrbRow{1, 100, 273},
    // FR1, 60 kHz
    PrbRow{2, 10, 11}, PrbRow{2, 15, 18}, PrbRow{2, 20, 24}, PrbRow{2, 25, 31}, PrbRow{2, 30, 38},
    PrbRow{2, 40, 51}, PrbRow{2, 50, 65}, PrbRow{2, 60, 79}, PrbRow{2, 70, 93}, PrbRow{2, 80, 107},
    PrbRow{2, 90, 121}, PrbRow{2, 100, 135},
    // FR2, 120 kHz
    PrbRow{3, 50, 32}, PrbRow{3, 100, 66}, PrbRow{3, 200, 132}, PrbRow{3, 400, 264},
};

constexpr std::int64_t kSubcarriersPerPrb = 12;
constexpr std::int64_t kSymbolsPerSecondMu0 = 14 * 1000;
constexpr std::int64_t kPpm = 1'000'000;

}  // namespace

std::optional<int> n_prb_for(std::int64_t bandwidth_hz, int numerology_mu) noexcept {
  if (bandwidth_hz <= 0 || bandwidth_hz % 1'000'000 != 0) return std::nullopt;
  auto mhz = bandwidth_hz / 1'000'000;
  for (const auto& row : kPrbTable) {
    if (row.mu == numerology_mu && row.mhz == mhz) return row.n_prb;
  }
  return std::nullopt;
}

void check_capacity_inputs(const model::CellConfig& cfg) {
  auto fail = [](const std::string& what) { throw Error(Errc::invalid_config, what); };
  if (cfg.n_prb <= 0 || cfg.n_prb > 275) fail("n_prb must be in 1..275, got " + std::to_string(cfg.n_prb));
  if (cfg.numerology_mu < 0 || cfg.numerology_mu > 4) fail("numerology must be in 0..4");
  if (cfg.mimo_layers < 1 || cfg.mimo_layers > 8) fail("mimo_layers must be in 1..8");
  if (cfg.modulation_bits != 2 && cfg.modulation_bits != 4 && cfg.modulation_bits != 6 && cfg.modulation_bits != 8) {
    fail("modulation_bits must be one of 2, 4, 6, 8");
  }
  if (cfg.overhead_ppm > kPpm / 2) fail("overhead fraction must be in [0, 0.5]");
}

void check_cell(const model::CellConfig& cfg) {
  check_capacity_inputs(cfg);
  auto expected = n_prb_for(cfg.bandwidth_hz, cfg.numerology_mu);
  if (!expected) {
    throw Error(Errc::invalid_config, "no PRB table entry for " + std::to_string(cfg.bandwidth_hz) + " Hz at mu " +
                                          std::to_string(cfg.numerology_mu));
  }
  if (*expected != cfg.n_prb) {
    throw Error(Errc::invalid_config, "n_prb " + std::to_string(cfg.n_prb) + " does not match table value " +
                                          std::to_string(*expected));
  }
}

std::int64_t cell_capacity(const model::CellConfig& cfg, Direction) {
  check_capacity_inputs(cfg);
  std::int64_t raw = cfg.n_prb * kSubcarriersPerPrb * (kSymbolsPerSecondMu0 << cfg.numerology_mu) *
                     cfg.modulation_bits * cfg.mimo_layers;
  return raw * (kPpm - cfg.overhead_ppm) / kPpm;
}

int compute_prb_percent(std::int64_t requested_bps, std::int64_t capacity_bps) {
  if (requested_bps <= 0 || capacity_bps <= 0) {
    throw Error(Errc::invalid_argument, "requested and capacity throughput must be positive");
  }
  auto num = static_cast<unsigned __int128>(requested_bps) * 100u;
  auto pct = (num + static_cast<unsigned __int128>(capacity_bps) - 1) / static_cast<unsigned __int128>(capacity_bps);
  if (pct > 100) {
    throw Error(Errc::infeasible, "infeasible: quota > 100 (requested " + std::to_string(requested_bps) +
                                      " bps, capacity " + std::to_string(capacity_bps) + " bps)");
  }
  return static_cast<int>(pct);
}

}  // namespace orion::xapp
