#include "orion/model/rules.hpp"

#include <cmath>

#include "orion/error.hpp"

namespace orion::model {

std::vector<Violation> validate_requirements(const SliceRequirements& r) {
  std::vector<Violation> out;
  auto add = [&](Field f, std::string rule) { out.push_back({std::string(snake_name(f)), std::move(rule)}); };

  if (r.area_of_service && r.area_of_service->empty()) add(Field::area_of_service, "must be non-empty");

  for (auto f : {Field::duration_s, Field::device_count, Field::max_dl_thpt_per_device_bps,
                 Field::max_ul_thpt_per_device_bps, Field::max_dl_thpt_per_slice_bps,
                 Field::max_ul_thpt_per_slice_bps}) {
    auto v = get_field(r, f);
    if (v && std::get<std::int64_t>(*v) <= 0) add(f, "must be positive");
  }
  for (auto f : {Field::dl_delay_budget_ms, Field::ul_delay_budget_ms}) {
    auto v = get_field(r, f);
    if (v) {
      double d = std::get<double>(*v);
      if (!std::isfinite(d) || d <= 0.0) add(f, "must be positive");
    }
  }
  if (r.packet_error_rate) {
    double p = *r.packet_error_rate;
    if (!(p > 0.0 && p < 1.0)) add(Field::packet_error_rate, "must be in (0,1)");
  }
  for (auto f : {Field::availability_pct, Field::reliability_pct}) {
    auto v = get_field(r, f);
    if (v) {
      double d = std::get<double>(*v);
      if (!(d > 0.0 && d <= 100.0)) add(f, "must be in (0,100]");
    }
  }
  auto slice_covers_device = [&](Field slice, Field device) {
    auto s = get_field(r, slice);
    auto d = get_field(r, device);
    if (s && d && std::get<std::int64_t>(*s) < std::get<std::int64_t>(*d)) {
      add(slice, "must be >= " + std::string(snake_name(device)));
    }
  };
  slice_covers_device(Field::max_dl_thpt_per_slice_bps, Field::max_dl_thpt_per_device_bps);
  slice_covers_device(Field::max_ul_thpt_per_slice_bps, Field::max_ul_thpt_per_device_bps);
  return out;
}

std::optional<IntentState> lifecycle_successor(IntentState s, LifecycleEvent e) noexcept {
  using S = IntentState;
  using E = LifecycleEvent;
  if (s == S::terminated) return std::nullopt;
  switch (e) {
    case E::activate:
      if (s == S::created || s == S::modified) return S::activated;
      break;
    case E::monitor:
      if (s == S::activated) return S::monitoring;
      break;
    case E::modify:
      if (s == S::monitoring) return S::modified;
      break;
    case E::suspend:
      if (s == S::activated || s == S::monitoring || s == S::modified) return S::suspended;
      break;
    case E::resume:
      if (s == S::suspended) return S::activated;
      break;
    case E::terminate:
      return S::terminated;
  }
  return std::nullopt;
}

IntentState lifecycle_transition(IntentState state, LifecycleEvent event) {
  if (auto next = lifecycle_successor(state, event)) return *next;
  throw Error(Errc::illegal_transition, std::string(to_string(event)) + " is not allowed from " +
                                            std::string(to_string(state)));
}

std::string_view to_string(SstProfile profile) noexcept {
  return profile == SstProfile::standard ? "standard" : "listing1-compat";
}

std::optional<SstProfile> parse_sst_profile(std::string_view text) noexcept {
  if (text == "standard") return SstProfile::standard;
  if (text == "listing1-compat") return SstProfile::listing1_compat;
  return std::nullopt;
}

std::uint8_t sst_for(SliceType type, SstProfile profile) noexcept {
  if (profile == SstProfile::listing1_compat) return 1;
  switch (type) {
    case SliceType::embb: return 1;
    case SliceType::urllc: return 2;
    case SliceType::mmtc: return 3;
  }
  return 1;
}

}  // namespace orion::model
