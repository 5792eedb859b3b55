#include "frogwb/serialization.hpp"

#include <stdexcept>
#include <vector>

namespace frogwb {

using nlohmann::json;

namespace {

std::string family_of(const json& j) {
  if (!j.is_object() || !j.contains("family")) throw std::invalid_argument("JSON object needs a \"family\" field");
  return j.at("family").get<std::string>();
}

std::vector<double> split_numbers(const std::string& s) {
  std::vector<double> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    const std::size_t end = s.find(',', start);
    const std::string tok = s.substr(start, end == std::string::npos ? std::string::npos : end - start);
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(tok, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad number '" + tok + "'");
    }
    if (used != tok.size()) throw std::invalid_argument("bad number '" + tok + "'");
    out.push_back(v);
    if (end == std::string::npos) break;
    start = end + 1;
  }
  return out;
}

std::pair<std::string, std::string> split_head(const std::string& spec) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos) throw std::invalid_argument("expected NAME:PARAMS, got '" + spec + "'");
  return {spec.substr(0, colon), spec.substr(colon + 1)};
}

std::vector<double> expect(const std::string& params, std::size_t count, const std::string& name) {
  auto v = split_numbers(params);
  if (v.size() != count) {
    throw std::invalid_argument(name + " takes " + std::to_string(count) + " parameter(s)");
  }
  return v;
}

}  // namespace

json to_json(const SlowlyVarying& L) {
  return std::visit(
      [](const auto& f) -> json {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, SlowlyVarying::Constant>) {
          return {{"family", "constant"}, {"c", f.c}};
        } else if constexpr (std::is_same_v<T, SlowlyVarying::LogPower>) {
          return {{"family", "log_power"}, {"delta", f.delta}};
        } else {
          return {{"family", "power_of_log"}, {"c", f.c}, {"rho", f.rho}};
        }
      },
      L.family());
}

json to_json(const EdgeLaw& edge) {
  return std::visit(
      [](const auto& f) -> json {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, EdgeLaw::BetaFamily>) {
          return {{"family", "beta"}, {"a", f.a}, {"b", f.b}};
        } else if constexpr (std::is_same_v<T, EdgeLaw::LogCorrected>) {
          return {{"family", "log_corrected"}, {"delta", f.delta}};
        } else if constexpr (std::is_same_v<T, EdgeLaw::TruncatedSupport>) {
          return {{"family", "truncated"}, {"base", to_json(*f.base)}, {"cap", f.cap}};
        } else {
          json j = {{"family", "tabulated"}, {"u", f.u}, {"density", f.density}};
          if (f.beta) j["beta"] = *f.beta;
          if (f.L) j["L"] = to_json(*f.L);
          return j;
        }
      },
      edge.family());
}

json to_json(const EtaLaw& eta) {
  return std::visit(
      [](const auto& f) -> json {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, EtaLaw::Deterministic>) {
          return {{"family", "deterministic"}, {"k", f.k}};
        } else if constexpr (std::is_same_v<T, EtaLaw::Poisson>) {
          return {{"family", "poisson"}, {"lambda", f.lambda}};
        } else {
          return {{"family", "geometric"}, {"q", f.q}};
        }
      },
      eta.family());
}

json to_json(const LifetimeLaw& law) { return {{"family", "discrete_weibull"}, {"gamma", law.gamma}}; }

json to_json(const FrogConfig& c) {
  json j = {{"schema_version", kSchemaVersion},
            {"gamma", c.gamma},
            {"edge", to_json(c.edge)},
            {"eta", to_json(c.eta)},
            {"horizon", c.horizon},
            {"reps", c.reps},
            {"seed", c.seed}};
  if (c.origin_count) j["origin_count"] = *c.origin_count;
  return j;
}

SlowlyVarying slowly_varying_from_json(const json& j) {
  const auto fam = family_of(j);
  if (fam == "constant") return SlowlyVarying::constant(j.at("c").get<double>());
  if (fam == "log_power") return SlowlyVarying::log_power(j.at("delta").get<double>());
  if (fam == "power_of_log") return SlowlyVarying::power_of_log(j.at("c").get<double>(), j.at("rho").get<double>());
  throw std::invalid_argument("unknown slowly varying family '" + fam + "'");
}

EdgeLaw edge_law_from_json(const json& j) {
  const auto fam = family_of(j);
  if (fam == "beta") return EdgeLaw::beta(j.at("a").get<double>(), j.at("b").get<double>());
  if (fam == "log_corrected") return EdgeLaw::log_corrected(j.at("delta").get<double>());
  if (fam == "truncated") return EdgeLaw::truncated(edge_law_from_json(j.at("base")), j.at("cap").get<double>());
  if (fam == "tabulated") {
    std::optional<double> beta;
    std::optional<SlowlyVarying> L;
    if (j.contains("beta")) beta = j.at("beta").get<double>();
    if (j.contains("L")) L = slowly_varying_from_json(j.at("L"));
    return EdgeLaw::tabulated(j.at("u").get<std::vector<double>>(), j.at("density").get<std::vector<double>>(), beta,
                              L);
  }
  throw std::invalid_argument("unknown edge law family '" + fam + "'");
}

EtaLaw eta_law_from_json(const json& j) {
  const auto fam = family_of(j);
  if (fam == "deterministic") return EtaLaw::deterministic(j.at("k").get<std::uint32_t>());
  if (fam == "poisson") return EtaLaw::poisson(j.at("lambda").get<double>());
  if (fam == "geometric") return EtaLaw::geometric(j.at("q").get<double>());
  throw std::invalid_argument("unknown eta family '" + fam + "'");
}

LifetimeLaw lifetime_law_from_json(const json& j) {
  const auto fam = family_of(j);
  if (fam != "discrete_weibull") throw std::invalid_argument("unknown lifetime family '" + fam + "'");
  return LifetimeLaw(j.at("gamma").get<double>());
}

FrogConfig frog_config_from_json(const json& j, FrogConfig c) {
  if (!j.is_object()) throw std::invalid_argument("config must be a JSON object");
  if (j.contains("schema_version") && j.at("schema_version").get<int>() != kSchemaVersion) {
    throw std::invalid_argument("unsupported schema_version " + j.at("schema_version").dump());
  }
  if (j.contains("gamma")) c.gamma = j.at("gamma").get<double>();
  if (j.contains("edge")) c.edge = edge_law_from_json(j.at("edge"));
  if (j.contains("eta")) c.eta = eta_law_from_json(j.at("eta"));
  if (j.contains("horizon")) c.horizon = j.at("horizon").get<std::uint64_t>();
  if (j.contains("reps")) c.reps = j.at("reps").get<std::uint64_t>();
  if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("origin_count")) c.origin_count = j.at("origin_count").get<std::uint32_t>();
  return c;
}

EdgeLaw parse_edge_spec(const std::string& spec) {
  const auto [name, params] = split_head(spec);
  if (name == "beta") {
    const auto v = expect(params, 2, "beta");
    return EdgeLaw::beta(v[0], v[1]);
  }
  if (name == "logcorr") return EdgeLaw::log_corrected(expect(params, 1, "logcorr")[0]);
  if (name == "trunc") {
    const auto colon = params.find(':');
    const double cap = expect(params.substr(0, colon), 1, "trunc")[0];
    EdgeLaw base = EdgeLaw::beta(1.0, 1.0);
    if (colon != std::string::npos) {
      const auto v = expect(params.substr(colon + 1), 2, "trunc base");
      base = EdgeLaw::beta(v[0], v[1]);
    }
    return EdgeLaw::truncated(base, cap);
  }
  throw std::invalid_argument("unknown edge law '" + name + "' (beta|logcorr|trunc)");
}

EtaLaw parse_eta_spec(const std::string& spec) {
  const auto [name, params] = split_head(spec);
  if (name == "det") {
    const double k = expect(params, 1, "det")[0];
    if (k < 0 || k != static_cast<double>(static_cast<std::uint32_t>(k))) {
      throw std::invalid_argument("det needs a nonnegative integer");
    }
    return EtaLaw::deterministic(static_cast<std::uint32_t>(k));
  }
  if (name == "poisson") return EtaLaw::poisson(expect(params, 1, "poisson")[0]);
  if (name == "geom") return EtaLaw::geometric(expect(params, 1, "geom")[0]);
  throw std::invalid_argument("unknown eta law '" + name + "' (det|poisson|geom)");
}

SlowlyVarying parse_slowly_varying_spec(const std::string& spec) {
  const auto [name, params] = split_head(spec);
  if (name == "const") return SlowlyVarying::constant(expect(params, 1, "const")[0]);
  if (name == "logpow") return SlowlyVarying::log_power(expect(params, 1, "logpow")[0]);
  if (name == "powlog") {
    const auto v = expect(params, 2, "powlog");
    return SlowlyVarying::power_of_log(v[0], v[1]);
  }
  throw std::invalid_argument("unknown slowly varying family '" + name + "' (const|logpow|powlog)");
}

}  // namespace frogwb
