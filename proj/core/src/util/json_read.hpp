#pragma once

// Strict JSON field readers shared by the payload parsers. Every failure
// raises Error(schema_violation).

#include <cstdint>
#include <initializer_list>
#include <limits>
#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <string_view>

#include "orion/error.hpp"

namespace orion::jsonio {

using nlohmann::json;

[[noreturn]] inline void bad(const std::string& what) { throw Error(Errc::schema_violation, what); }

inline void require_object(const json& j, std::string_view what) {
  if (!j.is_object()) bad(std::string(what) + " must be a JSON object");
}

inline void reject_unknown(const json& j, std::initializer_list<std::string_view> keys, std::string_view what) {
  for (const auto& [k, _] : j.items()) {
    bool known = false;
    for (auto key : keys) known = known || key == k;
    if (!known) bad("unknown key '" + k + "' in " + std::string(what));
  }
}

inline const json& require(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) bad(std::string("missing key '") + key + "'");
  return *it;
}

inline const json* find_non_null(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return nullptr;
  return &*it;
}

inline std::int64_t as_int(const json& v, std::string_view key) {
  if (v.is_number_unsigned()) {
    auto u = v.get<std::uint64_t>();
    if (u > static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max())) {
      bad(std::string(key) + " out of range");
    }
    return static_cast<std::int64_t>(u);
  }
  if (!v.is_number_integer()) bad(std::string(key) + " must be an integer");
  return v.get<std::int64_t>();
}

inline double as_number(const json& v, std::string_view key) {
  if (!v.is_number()) bad(std::string(key) + " must be a number");
  return v.get<double>();
}

inline std::string as_string(const json& v, std::string_view key) {
  if (!v.is_string()) bad(std::string(key) + " must be a string");
  return v.get<std::string>();
}

inline bool as_bool(const json& v, std::string_view key) {
  if (!v.is_boolean()) bad(std::string(key) + " must be a boolean");
  return v.get<bool>();
}

template <typename T>
T int_in(const json& v, std::string_view key, std::int64_t lo, std::int64_t hi) {
  auto x = as_int(v, key);
  if (x < lo || x > hi) bad(std::string(key) + " out of range");
  return static_cast<T>(x);
}

inline std::optional<std::string> opt_string(const json& j, const char* key) {
  if (const auto* v = find_non_null(j, key)) return as_string(*v, key);
  return std::nullopt;
}

}  // namespace orion::jsonio
