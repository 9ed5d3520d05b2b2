#include "lawvere/report.hpp"

namespace lawvere {

void Report::absorb(const Report& other) {
  sample_count += other.sample_count;
  pass_count += other.pass_count;
  failures.insert(failures.end(), other.failures.begin(), other.failures.end());
  for (const auto& [k, v] : other.stability) stability[k] = v;
  wall_ms += other.wall_ms;
}

nlohmann::json Report::to_json(bool include_timing) const {
  nlohmann::json j;
  j["schemaVersion"] = kSchemaVersion;
  j["subject"] = subject;
  j["bounds"] = bounds;
  j["seed"] = seed;
  j["sampleCount"] = sample_count;
  j["passCount"] = pass_count;
  j["failures"] = failures;
  j["stability"] = stability;
  j["details"] = details;
  if (include_timing) j["wallTimeMs"] = wall_ms;
  return j;
}

}  // namespace lawvere
