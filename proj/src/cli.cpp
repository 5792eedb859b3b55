#include "frogwb/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdint>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <limits>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "frogwb/asymptotics.hpp"
#include "frogwb/frog_sim.hpp"
#include "frogwb/one_particle.hpp"
#include "frogwb/parallel.hpp"
#include "frogwb/serialization.hpp"
#include "frogwb/verify.hpp"
#include "frogwb/walk_oracle.hpp"

namespace frogwb {

using nlohmann::json;

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string iso_now() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

std::string fmt(double x) {
  if (std::isnan(x)) return "";
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

json num_or_null(std::optional<double> x) { return x ? json(*x) : json(nullptr); }

void write_file(const std::string& path, const std::string& body) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot open '" + path + "' for writing");
  f << body;
  if (!f) throw UsageError("failed writing '" + path + "'");
}

struct Common {
  std::uint64_t seed = 0;
  unsigned threads = 0;
  std::string out_path;
  std::string json_path;
  std::string config_path;
};

struct ModelFlags {
  double gamma = 1.0;
  double beta = 0.5;
  double c0 = 1.0;
  std::string edge = "beta:1,0.5";
  std::string eta = "det:1";
  std::string L;
  std::uint64_t horizon = 4000;
  std::uint64_t reps = 400;
  std::uint32_t origin_count = 0;
  std::vector<std::int64_t> n_list;
  std::int64_t K = 0;
  std::string method = "exact";
  double eps = 1e-6;
  double tol = 0.02;
  std::vector<double> betas;
  std::vector<double> gammas;
  std::string suite = "all";
};

const char* const kTailHeader = "n,value,err,method,beta,gamma,L_at_n2gamma,ratio\n";
const char* const kSweepHeader = "beta,gamma,reps,horizon,survived,estimate,ci_low,ci_high,verdict\n";

std::string tail_rows(const std::vector<TailEstimate>& tails, const EdgeLaw& edge, double gamma) {
  const auto beta = edge.beta_exponent();
  const auto L = edge.L_spec();
  const bool normalized = beta && L && edge.regime() == EdgeRegime::Regular;
  std::ostringstream os;
  os << kTailHeader;
  for (const auto& t : tails) {
    double Lv = NAN, ratio = NAN;
    if (normalized && t.n >= 1) {
      Lv = (*L)(std::pow(static_cast<double>(t.n), 2.0 * gamma));
      ratio = t.value / ratio_normalization(t.n, *beta, *L, gamma);
    }
    os << t.n << ',' << fmt(t.value) << ',' << fmt(t.err) << ',' << to_string(t.method) << ','
       << (beta ? fmt(*beta) : "") << ',' << fmt(gamma) << ',' << fmt(Lv) << ',' << fmt(ratio) << '\n';
  }
  return os.str();
}

std::string sweep_row(double beta, double gamma, const SurvivalEstimate& s, std::uint64_t horizon,
                      const std::string& verdict) {
  std::ostringstream os;
  os << fmt(beta) << ',' << fmt(gamma) << ',' << s.reps << ',' << horizon << ',' << s.survived << ','
     << fmt(s.estimate) << ',' << fmt(s.ci_low) << ',' << fmt(s.ci_high) << ',' << verdict << '\n';
  return os.str();
}

json verdict_json(const PhaseVerdict& v) {
  return {{"verdict", to_string(v.verdict)},    {"reason", v.reason},
          {"beta_c", num_or_null(v.beta_c)},    {"K_up", num_or_null(v.K_up)},
          {"K_down", num_or_null(v.K_down)},    {"boundary_lhs", num_or_null(v.boundary_lhs)},
          {"boundary_rhs", num_or_null(v.boundary_rhs)}};
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Frog model with discrete Weibull lifetimes: one-particle tails, constants, simulation", "frogwb"};
  app.require_subcommand(1);
  app.fallthrough();
  Common c;
  ModelFlags m;
  app.add_option("--seed", c.seed, "Base seed (default 0)");
  app.add_option("--threads", c.threads, "Worker thread cap (0 = all cores)");
  app.add_option("--out", c.out_path, "Write CSV output here");
  app.add_option("--json", c.json_path, "Write JSON output here");
  app.add_option("--config", c.config_path, "JSON config; flags override its values");

  auto* tail = app.add_subcommand("tail", "Estimate P(D-> >= n) for one particle");
  auto* ratio = app.add_subcommand("ratio", "Normalized tail ratio curve");
  auto* constants = app.add_subcommand("constants", "Critical constants for (gamma, beta, c0)");
  auto* classify = app.add_subcommand("classify", "Phase classification");
  auto* frog = app.add_subcommand("frog", "Simulate the frog model");
  auto* sweep = app.add_subcommand("sweep", "Survival over a (beta, gamma) grid of Beta(1, beta) laws");
  auto* verify = app.add_subcommand("verify", "Run numerical verification checks");
  auto* pmf = app.add_subcommand("pmf", "First-passage pmf of tau_n as CSV");

  std::map<std::string, CLI::Option*> opt;
  for (auto* s : {tail, ratio, classify, frog, sweep, constants}) {
    opt[s->get_name() + ".gamma"] = s->add_option("--gamma", m.gamma, "Lifetime shape gamma");
  }
  for (auto* s : {tail, ratio, classify, frog}) {
    opt[s->get_name() + ".edge"] = s->add_option("--edge", m.edge, "Edge law: beta:A,B | logcorr:D | trunc:CAP[:A,B]");
  }
  for (auto* s : {tail, ratio}) {
    s->add_option("--n", m.n_list, "Levels n")->required()->delimiter(',');
    s->add_option("--method", m.method, "exact | mc | rb")->check(CLI::IsMember({"exact", "mc", "rb"}));
    opt[s->get_name() + ".reps"] = s->add_option("--reps", m.reps, "Monte Carlo replicates");
  }
  tail->add_option("--eps", m.eps, "Certified error target for the exact method");
  ratio->add_option("--tol", m.tol, "Certified error on the ratio scale for the exact method");
  constants->add_option("--beta", m.beta, "Edge exponent beta")->required();
  constants->add_option("--c0", m.c0, "c0 for the wear-out lower constant");
  auto* cls_beta = classify->add_option("--beta", m.beta, "Edge exponent beta (overrides --edge)");
  classify->add_option("--L", m.L, "Slowly varying L with --beta: const:C | logpow:D | powlog:C,RHO");
  for (auto* s : {classify, frog, sweep}) {
    opt[s->get_name() + ".eta"] = s->add_option("--eta", m.eta, "Occupation law: det:K | poisson:L | geom:Q");
  }
  for (auto* s : {frog, sweep}) {
    opt[s->get_name() + ".horizon"] = s->add_option("--horizon", m.horizon, "Horizon T");
    opt[s->get_name() + ".reps"] = s->add_option("--reps", m.reps, "Replicates");
    opt[s->get_name() + ".origin"] = s->add_option("--origin-count", m.origin_count, "Particles at the origin");
  }
  sweep->add_option("--betas", m.betas, "Beta grid")->required()->delimiter(',');
  sweep->add_option("--gammas", m.gammas, "Gamma grid")->required()->delimiter(',');
  verify->add_option("--suite", m.suite, "all or one of: tau1 ballot laplace superadd berry stable fexp potter "
                                         "reduction symmetry sandwich");
  pmf->add_option("--n", m.n_list, "Level n")->required()->expected(1);
  pmf->add_option("--K", m.K, "Truncation step")->required();

  std::vector<std::string> argv_store{"frogwb"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_store) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return 1;
  }

  const std::string started = iso_now();
  CLI::App* sub = app.get_subcommands().front();
  const std::string name = sub->get_name();
  auto given = [&](const std::string& key) { return opt.count(key) && opt[key]->count() > 0; };

  try {
    set_max_threads(c.threads);
    json config_file = json::object();
    if (!c.config_path.empty()) {
      std::ifstream f(c.config_path);
      if (!f) throw UsageError("cannot read config '" + c.config_path + "'");
      try {
        config_file = json::parse(f);
      } catch (const json::exception& e) {
        throw UsageError(std::string("bad config JSON: ") + e.what());
      }
      if (config_file.contains("seed") && app.get_option("--seed")->count() == 0) {
        c.seed = config_file.at("seed").get<std::uint64_t>();
      }
    }
    auto model_config = [&]() {
      FrogConfig cfg = frog_config_from_json(config_file);
      if (given(name + ".gamma") || !config_file.contains("gamma")) cfg.gamma = m.gamma;
      if (given(name + ".edge") || (!config_file.contains("edge") && opt.count(name + ".edge"))) {
        cfg.edge = parse_edge_spec(m.edge);
      }
      if (given(name + ".eta") || !config_file.contains("eta")) cfg.eta = parse_eta_spec(m.eta);
      if (given(name + ".horizon") || !config_file.contains("horizon")) cfg.horizon = m.horizon;
      if (given(name + ".reps") || !config_file.contains("reps")) cfg.reps = m.reps;
      if (given(name + ".origin")) cfg.origin_count = m.origin_count;
      cfg.seed = c.seed;
      cfg.validate();
      return cfg;
    };

    std::string csv;
    json result;
    int code = 0;

    if (name == "tail" || name == "ratio") {
      const FrogConfig cfg = model_config();
      const auto method = tail_method_from_string(m.method);
      std::vector<TailEstimate> tails;
      if (name == "ratio") {
        for (const auto& p : ratio_curve(m.n_list, cfg.edge, cfg.gamma, method, m.tol, cfg.reps, c.seed)) {
          tails.push_back(p.tail);
        }
      } else if (method == TailMethod::ExactQuadrature) {
        tails = tail_exact_many(m.n_list, cfg.edge, cfg.gamma, std::vector<double>(m.n_list.size(), m.eps));
      } else {
        for (auto n : m.n_list) {
          tails.push_back(method == TailMethod::DirectMC ? tail_mc(n, cfg.edge, cfg.gamma, cfg.reps, c.seed)
                                                         : tail_rb(n, cfg.edge, cfg.gamma, cfg.reps, c.seed));
        }
      }
      csv = tail_rows(tails, cfg.edge, cfg.gamma);
      result = json::array();
      for (const auto& t : tails) {
        result.push_back({{"n", t.n}, {"value", t.value}, {"err", t.err}, {"method", to_string(t.method)},
                          {"reps", t.reps}, {"truncation", t.truncation}, {"capped", t.capped}});
      }
      out << csv;
    } else if (name == "constants") {
      result = {{"gamma", m.gamma}, {"beta", m.beta}, {"c0", m.c0}, {"beta_c", beta_c(m.gamma)},
                {"K_up", K_up(m.gamma, m.beta)}, {"theta", theta(m.c0)}};
      if (m.gamma >= 1.0) {
        const auto sup = K_down_sup(m.gamma, m.beta);
        result["K_down"] = K_down(m.gamma, m.beta, m.c0);
        result["K_down_sup"] = sup.value;
        result["c0_star"] = sup.c0_star;
        result["boundary_hit"] = sup.boundary_hit;
      } else {
        result["K_down"] = K_down(m.gamma, m.beta);
        result["K_down_sup"] = nullptr;
        result["c0_star"] = nullptr;
      }
      out << result.dump(2) << '\n';
    } else if (name == "classify") {
      const auto eta = summarize(parse_eta_spec(m.eta));
      PhaseVerdict v;
      if (cls_beta->count() > 0) {
        const auto L = m.L.empty() ? SlowlyVarying::constant(1.0) : parse_slowly_varying_spec(m.L);
        v = classify_phase(m.gamma, m.beta, L, eta);
      } else {
        v = classify_phase(m.gamma, parse_edge_spec(m.edge), eta);
      }
      result = verdict_json(v);
      out << result.dump(2) << '\n';
    } else if (name == "frog") {
      const FrogConfig cfg = model_config();
      const auto s = survival_prob(cfg);
      const auto v = classify_phase(cfg.gamma, cfg.edge, summarize(cfg.eta));
      const auto beta = cfg.edge.beta_exponent();
      csv = kSweepHeader + sweep_row(beta ? *beta : NAN, cfg.gamma, s, cfg.horizon, to_string(v.verdict));
      result = {{"config", to_json(cfg)},     {"survived", s.survived},  {"estimate", s.estimate},
                {"ci_low", s.ci_low},         {"ci_high", s.ci_high},    {"censored", s.censored},
                {"verdict", verdict_json(v)}};
      out << "survived " << s.survived << "/" << s.reps << " to T=" << cfg.horizon << ", estimate "
          << s.estimate << " [" << s.ci_low << ", " << s.ci_high << "]; classifier: " << to_string(v.verdict)
          << '\n';
    } else if (name == "sweep") {
      const FrogConfig cfg = model_config();
      const auto rows = phase_sweep(m.betas, m.gammas, cfg);
      csv = kSweepHeader;
      result = json::array();
      for (const auto& r : rows) {
        csv += sweep_row(r.beta, r.gamma, r.survival, r.horizon, to_string(r.verdict.verdict));
        result.push_back({{"beta", r.beta}, {"gamma", r.gamma}, {"estimate", r.survival.estimate},
                          {"ci_low", r.survival.ci_low}, {"ci_high", r.survival.ci_high},
                          {"verdict", to_string(r.verdict.verdict)}});
      }
      out << csv;
    } else if (name == "verify") {
      const auto checks = run_suite(m.suite, c.seed);
      result = json::array();
      bool ok = true;
      for (const auto& r : checks) {
        ok = ok && r.passed;
        out << (r.passed ? "PASS " : "FAIL ") << r.name << ": observed " << r.observed << ", target " << r.target
            << ", tolerance " << r.tolerance << " | " << r.detail << '\n';
        result.push_back({{"name", r.name}, {"target", r.target}, {"observed", r.observed},
                          {"tolerance", r.tolerance}, {"passed", r.passed}, {"detail", r.detail}});
      }
      if (!ok) code = 2;
    } else if (name == "pmf") {
      if (m.n_list.size() != 1) throw UsageError("pmf takes a single --n");
      const auto table = first_passage_pmf(m.n_list.front(), m.K);
      std::ostringstream os;
      table.write_csv(os);
      csv = os.str();
      result = {{"n", table.n()}, {"K", table.K()}, {"tail_mass", table.tail_mass()}};
      out << csv;
    }

    if (!c.out_path.empty() || !c.json_path.empty()) {
      if (!c.out_path.empty()) {
        if (csv.empty()) throw UsageError("'" + name + "' has no CSV output; use --json");
        write_file(c.out_path, csv);
      }
      if (!c.json_path.empty()) write_file(c.json_path, result.dump(2) + "\n");
      json manifest = {{"subcommand", name},
                       {"args", args},
                       {"config_digest", fnv1a64(json(args).dump() + config_file.dump())},
                       {"seed", c.seed},
                       {"tool_version", kToolVersion},
                       {"started", started},
                       {"finished", iso_now()}};
      const std::string base = !c.out_path.empty() ? c.out_path : c.json_path;
      write_file(base + ".manifest.json", manifest.dump(2) + "\n");
    }
    return code;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace frogwb
