#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace vlab {

inline constexpr const char* kToolVersion = "virial-lab 1.0.0";

// One verified statement. `pass` is |value| <= tolerance, except for checks
// whose value is a count of offending terms (tolerance 0 means exact).
struct CheckRecord {
  std::string check_id;
  std::string statement;      // the identity or bound that was checked
  std::string inputs_digest;  // digest of the scenario inputs
  double value = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct VerificationReport {
  std::string tool_version = kToolVersion;
  std::string config_digest;
  std::string timestamp;  // informational; excluded from determinism checks
  std::vector<CheckRecord> checks;

  int passed() const;
  int failed() const;
  void sort_by_id();
};

// 64-bit FNV-1a, hex-encoded.
std::string fnv1a_digest(std::string_view data);

std::string utc_timestamp();

nlohmann::json report_to_json(const VerificationReport& report);
VerificationReport report_from_json(const nlohmann::json& j);

// Helper for suite code.
CheckRecord make_check(std::string id, std::string statement, std::string digest,
                       double value, double tolerance);

}  // namespace vlab
