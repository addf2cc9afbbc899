#include "orion/node/ledger.hpp"

#include "orion/model/json.hpp"

namespace orion::node {

int LedgerSnapshot::dedicated_sum() const noexcept {
  int sum = 0;
  for (const auto& [_, a] : allocations) sum += a.ratios.dedicated;
  return sum;
}

void to_json(nlohmann::json& j, const LedgerSnapshot& snap) {
  auto rows = nlohmann::json::array();
  for (const auto& [slice, a] : snap.allocations) {
    rows.push_back({{"sliceId", slice},
                    {"minPct", a.ratios.min},
                    {"dedicatedPct", a.ratios.dedicated},
                    {"maxPct", a.ratios.max},
                    {"discipline", a.discipline == e2::Discipline::earliest_deadline_first ? "EDF" : "PF"}});
  }
  j = {{"nodeId", snap.cell.node_id}, {"cell", snap.cell}, {"allocations", rows}, {"dedicatedSum", snap.dedicated_sum()}};
}

std::optional<e2::ControlFailure> PrbLedger::apply(const model::SliceId& slice, const e2::RatioTriple& r,
                                                   e2::Discipline discipline) {
  if (r.min > 100 || r.dedicated > 100 || r.max > 100 || r.min > r.dedicated || r.dedicated > r.max) {
    return e2::ControlFailure{e2::FailureCause::malformed, "ratios must satisfy min <= dedicated <= max <= 100"};
  }
  std::lock_guard lock(mu_);
  if (r.dedicated == 0) {
    allocations_.erase(slice);
    return std::nullopt;
  }
  int others = 0;
  for (const auto& [id, a] : allocations_) {
    if (!(id == slice)) others += a.ratios.dedicated;
  }
  if (others + r.dedicated > 100) {
    return e2::ControlFailure{e2::FailureCause::capacity_exceeded,
                              "capacity exceeded: " + std::to_string(others) + "% allocated, " +
                                  std::to_string(r.dedicated) + "% requested"};
  }
  allocations_[slice] = Allocation{r, discipline};
  return std::nullopt;
}

LedgerSnapshot PrbLedger::snapshot() const {
  std::lock_guard lock(mu_);
  return LedgerSnapshot{cell_, allocations_};
}

}  // namespace orion::node
