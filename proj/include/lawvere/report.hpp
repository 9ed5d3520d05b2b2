#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"

namespace lawvere {

inline constexpr int kSchemaVersion = 1;

/// Outcome of a bounded check. Every checked case is counted exactly once,
/// either through pass() or fail(), so failures.empty() iff all cases passed.
struct Report {
  std::string subject;
  std::map<std::string, long long> bounds;
  std::uint64_t seed = 0;
  std::size_t sample_count = 0;
  std::size_t pass_count = 0;
  std::vector<nlohmann::json> failures;
  std::map<std::string, bool> stability;
  nlohmann::json details = nlohmann::json::object();
  double wall_ms = 0.0;

  void pass() {
    ++sample_count;
    ++pass_count;
  }
  void fail(nlohmann::json witness) {
    ++sample_count;
    failures.push_back(std::move(witness));
  }
  void check(bool ok, const nlohmann::json& witness) { ok ? pass() : fail(witness); }
  bool ok() const { return failures.empty(); }

  /// Merges another report's counts and failures (subject and seed kept).
  void absorb(const Report& other);

  /// Wall time is excluded unless asked for, so that equal requests give
  /// byte-identical output.
  nlohmann::json to_json(bool include_timing = false) const;
};

}  // namespace lawvere
