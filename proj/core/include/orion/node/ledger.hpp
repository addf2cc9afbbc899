#pragma once

#include <map>
#include <nlohmann/json.hpp>
#include <mutex>
#include <optional>
#include <string>

#include "orion/e2/pdu.hpp"
#include "orion/model/types.hpp"

namespace orion::node {

struct Allocation {
  e2::RatioTriple ratios;
  e2::Discipline discipline = e2::Discipline::proportional_fair;

  bool operator==(const Allocation&) const = default;
};

struct LedgerSnapshot {
  model::CellConfig cell;
  std::map<model::SliceId, Allocation> allocations;

  int dedicated_sum() const noexcept;
  bool operator==(const LedgerSnapshot&) const = default;
};

void to_json(nlohmann::json& j, const LedgerSnapshot& snap);

// Per-cell PRB partition. Invariant: the dedicated ratios of all slices sum
// to at most 100, and each triple satisfies min <= dedicated <= max.
class PrbLedger {
 public:
  explicit PrbLedger(model::CellConfig cell) : cell_(std::move(cell)) {}

  // Upserts the slice's triple, replacing any previous one. A dedicated ratio
  // of 0 removes the slice. Returns the failure to report, or nullopt when
  // applied; a rejected request leaves the ledger unchanged.
  std::optional<e2::ControlFailure> apply(const model::SliceId& slice, const e2::RatioTriple& ratios,
                                          e2::Discipline discipline);

  LedgerSnapshot snapshot() const;
  const model::CellConfig& cell() const noexcept { return cell_; }

 private:
  mutable std::mutex mu_;
  model::CellConfig cell_;
  std::map<model::SliceId, Allocation> allocations_;
};

}  // namespace orion::node
