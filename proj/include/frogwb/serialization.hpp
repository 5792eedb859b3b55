#pragma once

#include <string>

#include <json.hpp>

#include "frogwb/distributions.hpp"
#include "frogwb/frog_sim.hpp"
#include "frogwb/slowly_varying.hpp"

namespace frogwb {

inline constexpr int kSchemaVersion = 1;

nlohmann::json to_json(const SlowlyVarying& L);
nlohmann::json to_json(const EdgeLaw& edge);
nlohmann::json to_json(const EtaLaw& eta);
nlohmann::json to_json(const LifetimeLaw& law);
nlohmann::json to_json(const FrogConfig& config);

SlowlyVarying slowly_varying_from_json(const nlohmann::json& j);
EdgeLaw edge_law_from_json(const nlohmann::json& j);
EtaLaw eta_law_from_json(const nlohmann::json& j);
LifetimeLaw lifetime_law_from_json(const nlohmann::json& j);
/// Missing fields keep the values already in base.
FrogConfig frog_config_from_json(const nlohmann::json& j, FrogConfig base = {});

/// Short command-line forms: "beta:A,B", "logcorr:DELTA", "trunc:CAP" (uniform
/// base) or "trunc:CAP:A,B".
EdgeLaw parse_edge_spec(const std::string& spec);
/// "det:K", "poisson:LAMBDA", "geom:Q".
EtaLaw parse_eta_spec(const std::string& spec);
/// "const:C", "logpow:DELTA", "powlog:C,RHO".
SlowlyVarying parse_slowly_varying_spec(const std::string& spec);

}  // namespace frogwb
