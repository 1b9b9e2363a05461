#include "vlab/report.hpp"

#include <algorithm>
#include <cmath>
#include <ctime>

#include <nlohmann/json.hpp>

#include "vlab/errors.hpp"

namespace vlab {

int VerificationReport::passed() const {
  int n = 0;
  for (const auto& c : checks) n += c.pass ? 1 : 0;
  return n;
}

int VerificationReport::failed() const {
  return static_cast<int>(checks.size()) - passed();
}

void VerificationReport::sort_by_id() {
  std::sort(checks.begin(), checks.end(),
            [](const CheckRecord& a, const CheckRecord& b) {
              return a.check_id < b.check_id;
            });
}

std::string fnv1a_digest(std::string_view data) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string utc_timestamp() {
  std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

nlohmann::json report_to_json(const VerificationReport& report) {
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : report.checks) {
    checks.push_back({{"check_id", c.check_id},
                      {"statement", c.statement},
                      {"inputs_digest", c.inputs_digest},
                      {"value", c.value},
                      {"tolerance", c.tolerance},
                      {"pass", c.pass}});
  }
  return nlohmann::json{{"tool_version", report.tool_version},
                        {"config_digest", report.config_digest},
                        {"timestamp", report.timestamp},
                        {"summary",
                         {{"total", report.checks.size()},
                          {"passed", report.passed()},
                          {"failed", report.failed()}}},
                        {"checks", checks}};
}

VerificationReport report_from_json(const nlohmann::json& j) {
  VerificationReport report;
  try {
    report.tool_version = j.at("tool_version").get<std::string>();
    report.config_digest = j.at("config_digest").get<std::string>();
    report.timestamp = j.value("timestamp", std::string{});
    for (const auto& c : j.at("checks")) {
      CheckRecord rec;
      rec.check_id = c.at("check_id").get<std::string>();
      rec.statement = c.at("statement").get<std::string>();
      rec.inputs_digest = c.at("inputs_digest").get<std::string>();
      rec.value = c.at("value").get<double>();
      rec.tolerance = c.at("tolerance").get<double>();
      rec.pass = c.at("pass").get<bool>();
      report.checks.push_back(std::move(rec));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed report JSON: ") + e.what());
  }
  return report;
}

CheckRecord make_check(std::string id, std::string statement, std::string digest,
                       double value, double tolerance) {
  CheckRecord rec;
  rec.check_id = std::move(id);
  rec.statement = std::move(statement);
  rec.inputs_digest = std::move(digest);
  rec.value = value;
  rec.tolerance = tolerance;
  rec.pass = std::isfinite(value) && std::abs(value) <= tolerance;
  return rec;
}

}  // namespace vlab
