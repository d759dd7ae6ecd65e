#include "frogcert/certificate.hpp"

#include <chrono>
#include <ctime>

namespace frogcert {

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

namespace {

nlohmann::json region_json(const std::array<double, 6>& sums) {
  nlohmann::json j = nlohmann::json::object();
  for (std::size_t k = 0; k < analytic::kRegions.size(); ++k) {
    j[std::string(analytic::region_name(analytic::kRegions[k]))] = sums[k];
  }
  return j;
}

}  // namespace

nlohmann::json to_json(const analytic::Certificate& cert, const std::string& timestamp) {
  nlohmann::json j;
  j["method"] = analytic::method_name(cert.method);
  j["d"] = cert.d;
  j["mu"] = cert.mu;
  if (cert.method == analytic::Method::infinite_mean) {
    j["N_n"] = cert.n;
    j["m_n"] = cert.m;
    j["component_alpha"] = cert.component_alpha;
    j["remainder_bound"] = cert.remainder_bound;
  } else {
    j["N"] = cert.n.empty() ? nlohmann::json(nullptr) : nlohmann::json(cert.n.front());
    j["m"] = cert.m.empty() ? nlohmann::json(nullptr) : nlohmann::json(cert.m.front());
  }
  j["lambda"] = cert.lambda;
  j["beta"] = cert.beta;
  j["C_hit"] = cert.c_hit;
  j["alpha"] = cert.alpha ? nlohmann::json(*cert.alpha) : nlohmann::json(nullptr);
  j["region_sums"] = cert.region_sums ? region_json(*cert.region_sums) : nlohmann::json(nullptr);
  j["transient_certified"] = cert.transient_certified;
  j["reason"] = cert.reason;
  j["tool_version"] = kToolVersion;
  j["timestamp"] = timestamp;
  return j;
}

nlohmann::json to_json(const analytic::BoundReport& report) {
  return {
      {"method", analytic::method_name(report.method)},
      {"region_sums", region_json(report.region_sums)},
      {"total", report.total},
      {"alpha", report.alpha},
      {"transient_certified", report.transient_certified},
  };
}

}  // namespace frogcert
