#include "orion/eval/dataset.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <fstream>
#include <random>

#include "orion/error.hpp"
#include "orion/model/json.hpp"
#include "util/json_read.hpp"

namespace orion::eval {

using nlohmann::json;
using model::SliceType;

void to_json(json& j, const DatasetEntry& e) {
  json gt = json::object();
  gt["slice_type"] = e.slice_type;
  for (auto f : model::kAllFields) {
    if (auto v = model::get_field(e.ground_truth, f)) gt[std::string(model::json_key(f))] = model::field_value_to_json(v);
  }
  j = json{{"id", e.id}, {"text", e.text}, {"ground_truth", gt}};
}

void from_json(const json& j, DatasetEntry& e) {
  using namespace jsonio;
  require_object(j, "dataset entry");
  reject_unknown(j, {"id", "text", "ground_truth"}, "dataset entry");
  e.id = as_string(require(j, "id"), "id");
  e.text = as_string(require(j, "text"), "text");
  auto gt = require(j, "ground_truth");
  require_object(gt, "ground_truth");
  model::from_json(require(gt, "slice_type"), e.slice_type);
  gt.erase("slice_type");
  model::from_json(gt, e.ground_truth);
  if (e.id.empty() || e.text.empty()) bad("dataset entry needs a non-empty id and text");
}

namespace {

// Draws come straight from the engine so files are stable across standard
// library implementations.
class Draw {
 public:
  explicit Draw(std::uint64_t seed) : g_(seed) {}
  std::int64_t range(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(g_() % static_cast<std::uint64_t>(hi - lo + 1));
  }
  bool chance(int pct) { return range(1, 100) <= pct; }
  template <typename C>
  const auto& pick(const C& items) {
    return items[static_cast<std::size_t>(range(0, static_cast<std::int64_t>(std::size(items)) - 1))];
  }
  std::mt19937_64& engine() { return g_; }

 private:
  std::mt19937_64 g_;
};

constexpr std::array kAreas = {"campus-east", "harbor-3",  "downtown",  "riverside", "airport-2",
                               "north-stadium", "industrial-park", "old-town", "X", "sector-12"};

std::string num(double v) {
  if (v == static_cast<double>(static_cast<std::int64_t>(v))) return std::to_string(static_cast<std::int64_t>(v));
  return json(v).dump();
}

std::string with_commas(std::int64_t v) {
  auto s = std::to_string(v);
  for (int i = static_cast<int>(s.size()) - 3; i > 0; i -= 3) s.insert(static_cast<std::size_t>(i), ",");
  return s;
}

std::string area_phrase(Draw& d, model::SliceRequirements& gt) {
  if (!d.chance(70)) return "";
  std::string area = d.pick(kAreas);
  gt.area_of_service = area;
  if (area != "X" && d.chance(30)) return " across the " + area + " district";
  return " in area " + area;
}

std::string duration_phrase(Draw& d, model::SliceRequirements& gt, bool long_lived) {
  if (!d.chance(50)) return "";
  if (long_lived && d.chance(50)) {
    auto days = d.range(1, 30);
    gt.duration_s = days * 86400;
    return " for " + std::to_string(days) + (days == 1 ? " day" : " days");
  }
  if (d.chance(25)) {
    auto minutes = d.range(2, 12) * 5;
    gt.duration_s = minutes * 60;
    return " for " + std::to_string(minutes) + " minutes";
  }
  auto hours = d.range(1, 12);
  gt.duration_s = hours * 3600;
  return " for " + std::to_string(hours) + (hours == 1 ? " hour" : " hours");
}

DatasetEntry embb(Draw& d) {
  static constexpr std::array kScenarios = {"video journalism", "cloud gaming", "4K media streaming",
                                           "live event broadcast", "VR training sessions"};
  static constexpr std::array kOpeners = {"Set up a slice for", "Provision a network slice for",
                                          "We need capacity for", "Create a slice supporting"};
  DatasetEntry e;
  e.slice_type = SliceType::embb;
  auto& gt = e.ground_truth;
  std::string text = d.chance(30) ? std::string("Set up an eMBB slice for ") : std::string(d.pick(kOpeners)) + " ";
  text += d.pick(kScenarios);

  auto dl = d.range(100, 500);
  gt.max_dl_thpt_per_slice_bps = dl * 1'000'000;
  switch (d.range(0, 2)) {
    case 0: text += " with " + std::to_string(dl) + " Mbps downlink"; break;
    case 1: text += " with " + std::to_string(dl) + " Mbps of downlink throughput"; break;
    default: text += " with a downlink throughput of " + std::to_string(dl) + " Mbps"; break;
  }
  if (d.chance(50)) {
    auto ul = d.range(10, 100);
    gt.max_ul_thpt_per_slice_bps = ul * 1'000'000;
    text += " and " + std::to_string(ul) + " Mbps uplink";
  }
  text += area_phrase(d, gt);
  if (d.chance(25)) {
    auto latency = d.range(20, 60);
    gt.dl_delay_budget_ms = static_cast<double>(latency);
    text += ", keeping latency under " + std::to_string(latency) + " ms";
  }
  if (d.chance(25)) {
    static constexpr std::array kAvail = {99.0, 99.5, 99.9};
    double a = d.pick(kAvail);
    gt.availability_pct = a;
    text += ", with " + num(a) + "% availability";
  }
  text += duration_phrase(d, gt, false) + ".";
  e.text = text;
  return e;
}

DatasetEntry urllc(Draw& d) {
  static constexpr std::array kScenarios = {"autonomous robotics", "remote surgery", "industrial automation",
                                           "motion control loops", "teleoperated cranes"};
  static constexpr std::array kOpeners = {"Provision a slice for", "Set up a low-latency slice for",
                                          "We need a dedicated slice for"};
  DatasetEntry e;
  e.slice_type = SliceType::urllc;
  auto& gt = e.ground_truth;
  std::string text = d.chance(40) ? std::string("Provision a URLLC slice for ") : std::string(d.pick(kOpeners)) + " ";
  text += d.pick(kScenarios);
  text += area_phrase(d, gt);

  auto delay = d.range(1, 7);
  gt.dl_delay_budget_ms = static_cast<double>(delay);
  if (d.chance(50)) text += " with " + std::to_string(delay) + " ms latency";
  else text += " with a downlink delay budget of " + std::to_string(delay) + " ms";
  if (d.chance(40)) {
    auto ul = d.range(1, 10);
    gt.ul_delay_budget_ms = static_cast<double>(ul);
    text += " and " + std::to_string(ul) + " ms uplink delay";
  }
  static constexpr std::array kReliability = {99.9, 99.99, 99.999};
  double r = d.pick(kReliability);
  gt.reliability_pct = r;
  text += ", " + num(r) + "% reliability";
  if (d.chance(30)) {
    static constexpr std::array kPer = {"1e-4", "1e-5", "1e-6"};
    std::string per = d.pick(kPer);
    gt.packet_error_rate = std::stod(per);
    text += ", a packet error rate of " + per;
  }
  auto thpt = d.range(10, 100);
  gt.max_dl_thpt_per_slice_bps = thpt * 1'000'000;
  text += " and " + std::to_string(thpt) + " Mbps downlink";
  text += duration_phrase(d, gt, false) + ".";
  e.text = text;
  return e;
}

DatasetEntry mmtc(Draw& d) {
  struct Scenario {
    const char* name;
    const char* noun;      // plural, possibly with a modifier
    const char* singular;  // head noun for "per <noun>"
  };
  static constexpr std::array kScenarios = {
      Scenario{"smart city sensors", "sensors", "sensor"},
      Scenario{"environmental monitoring", "air quality sensors", "sensor"},
      Scenario{"utility metering", "smart meters", "meter"},
      Scenario{"asset tracking", "trackers", "tracker"},
      Scenario{"smart agriculture", "soil sensors", "sensor"},
      Scenario{"connected parking", "devices", "device"},
  };
  static constexpr std::array kOpeners = {"Deploy a slice for", "Provision connectivity for",
                                          "Set up a slice for"};
  DatasetEntry e;
  e.slice_type = SliceType::mmtc;
  auto& gt = e.ground_truth;
  const auto& sc = d.pick(kScenarios);
  std::string text = d.chance(30) ? std::string("Deploy an mMTC slice for ") : std::string(d.pick(kOpeners)) + " ";
  text += sc.name;

  std::int64_t count = 0;
  std::string count_text;
  switch (d.range(0, 3)) {
    case 0:
      count = d.range(1000, 9999);
      count_text = d.chance(50) ? with_commas(count) : std::to_string(count);
      break;
    case 1:
      count = d.range(10, 999) * 1000;
      count_text = std::to_string(count / 1000) + "k";
      break;
    case 2:
      count = d.range(1, 9) * 100'000;
      count_text = with_commas(count);
      break;
    default:
      count = 1'000'000;
      count_text = "1 million";
      break;
  }
  gt.device_count = count;
  text += " with " + count_text + " " + sc.noun;
  text += area_phrase(d, gt);

  // Keep the aggregate within a few Gbps so most quotas are feasible.
  auto cap_kbps = std::max<std::int64_t>(1, std::min<std::int64_t>(200, 2'000'000 / count));
  bool has_dl = d.chance(80);
  bool has_ul = !has_dl || d.chance(60);
  std::string rates;
  if (has_dl) {
    auto r = d.range(1, cap_kbps);
    gt.max_dl_thpt_per_device_bps = r * 1000;
    rates = std::to_string(r) + " kbps downlink";
  }
  if (has_ul) {
    auto r = d.range(1, std::max<std::int64_t>(1, cap_kbps / 2));
    gt.max_ul_thpt_per_device_bps = r * 1000;
    rates += (rates.empty() ? "" : " and ") + std::to_string(r) + " kbps uplink";
  }
  if (d.chance(50)) text += ", each with " + rates;
  else text += ", " + rates + " per " + sc.singular;

  if (has_dl && d.chance(15)) {
    auto agg = d.range(50, 500);
    gt.max_dl_thpt_per_slice_bps = agg * 1'000'000;
    text += ", with an aggregate downlink cap of " + std::to_string(agg) + " Mbps";
  }
  if (d.chance(40)) {
    static constexpr std::array kAvail = {99.0, 99.5, 99.9};
    double a = d.pick(kAvail);
    gt.availability_pct = a;
    text += ", at " + num(a) + "% availability";
  }
  text += duration_phrase(d, gt, true) + ".";
  e.text = text;
  return e;
}

}  // namespace

std::vector<DatasetEntry> generate_dataset(std::uint64_t seed) {
  Draw d(seed);
  std::vector<DatasetEntry> out;
  for (int i = 0; i < kEmbbCount; ++i) out.push_back(embb(d));
  for (int i = 0; i < kUrllcCount; ++i) out.push_back(urllc(d));
  for (int i = 0; i < kMmtcCount; ++i) out.push_back(mmtc(d));
  for (std::size_t i = out.size() - 1; i > 0; --i) {
    std::swap(out[i], out[static_cast<std::size_t>(d.range(0, static_cast<std::int64_t>(i)))]);
  }
  for (std::size_t i = 0; i < out.size(); ++i) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "ds-%03zu", i + 1);
    out[i].id = buf;
  }
  return out;
}

void write_dataset(const std::filesystem::path& path, const std::vector<DatasetEntry>& entries) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw Error(Errc::io_error, "cannot write dataset " + path.string());
  for (const auto& e : entries) out << json(e).dump() << '\n';
  if (!out) throw Error(Errc::io_error, "write failed for " + path.string());
}

std::vector<DatasetEntry> load_dataset(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::io_error, "cannot read dataset " + path.string());
  std::vector<DatasetEntry> out;
  std::string line;
  int n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.push_back(json::parse(line).get<DatasetEntry>());
    } catch (const json::exception& ex) {
      throw Error(Errc::schema_violation, path.string() + ":" + std::to_string(n) + ": " + ex.what());
    } catch (const Error& ex) {
      throw Error(Errc::schema_violation, path.string() + ":" + std::to_string(n) + ": " + ex.detail());
    }
  }
  return out;
}

}  // namespace orion::eval
