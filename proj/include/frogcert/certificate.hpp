#pragma once

#include <string>

#include <json.hpp>

#include "frogcert/analytic.hpp"

namespace frogcert {

inline constexpr const char* kToolVersion = "frogcert 0.1.0";

/// Current UTC time as YYYY-MM-DDTHH:MM:SSZ.
std::string utc_timestamp();

/// Certificate JSON:
///   {method, d, mu, N | N_n, m | m_n, lambda, beta, C_hit, alpha, region_sums,
///    transient_certified, reason, tool_version, timestamp}
/// plus component_alpha and remainder_bound for infinite-mean certificates.
/// alpha and region_sums are null when no certificate could be computed.
nlohmann::json to_json(const analytic::Certificate& cert, const std::string& timestamp);

nlohmann::json to_json(const analytic::BoundReport& report);

}  // namespace frogcert
