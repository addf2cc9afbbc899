#pragma once

#include <cstdint>
#include <filesystem>
#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "orion/model/types.hpp"

namespace orion::eval {

// One labelled intent. Exactly the stated fields are set in ground_truth.
struct DatasetEntry {
  std::string id;
  std::string text;
  model::SliceType slice_type = model::SliceType::embb;
  model::SliceRequirements ground_truth;

  bool operator==(const DatasetEntry&) const = default;
};

// {"id", "text", "ground_truth": {"slice_type", <stated fields by JSON key>}}
void to_json(nlohmann::json& j, const DatasetEntry& e);
void from_json(const nlohmann::json& j, DatasetEntry& e);

inline constexpr int kEmbbCount = 20;
inline constexpr int kUrllcCount = 20;
inline constexpr int kMmtcCount = 60;

// 100 templated intents, 20 eMBB / 20 URLLC / 60 mMTC, in shuffled order.
// Identical for identical seeds.
std::vector<DatasetEntry> generate_dataset(std::uint64_t seed);

// One JSON object per line. Throws Error(io_error) or Error(schema_violation)
// naming the offending line.
void write_dataset(const std::filesystem::path& path, const std::vector<DatasetEntry>& entries);
std::vector<DatasetEntry> load_dataset(const std::filesystem::path& path);

}  // namespace orion::eval
