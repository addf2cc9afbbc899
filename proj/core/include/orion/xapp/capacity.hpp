#pragma once

#include <cstdint>
#include <optional>

#include "orion/model/types.hpp"

namespace orion::xapp {

enum class Direction : std::uint8_t { downlink, uplink };

// Transmission-bandwidth configuration: PRB count for a channel bandwidth and
// subcarrier spacing (FR1 for mu 0..2, FR2 for mu 3). nullopt when the
// combination is not listed.
std::optional<int> n_prb_for(std::int64_t bandwidth_hz, int numerology_mu) noexcept;

// Throws Error(invalid_config) when a capacity input is out of range.
void check_capacity_inputs(const model::CellConfig& cfg);

// check_capacity_inputs plus consistency of n_prb with the bandwidth table.
void check_cell(const model::CellConfig& cfg);

// n_prb * 12 * 14000 * 2^mu * modulation_bits * mimo_layers * (1 - overhead),
// floored to whole bits per second. Both directions use the same model.
// Throws Error(invalid_config).
std::int64_t cell_capacity(const model::CellConfig& cfg, Direction direction = Direction::downlink);

// ceil(100 * requested / capacity) in exact integer arithmetic.
// Throws Error(invalid_argument) for non-positive inputs and
// Error(infeasible) when the result exceeds 100.
int compute_prb_percent(std::int64_t requested_bps, std::int64_t capacity_bps);

}  // namespace orion::xapp
