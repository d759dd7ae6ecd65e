#include "frogcert/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "frogcert/analytic.hpp"
#include "frogcert/blocks.hpp"
#include "frogcert/certificate.hpp"
#include "frogcert/numeric.hpp"
#include "frogcert/oracle.hpp"
#include "frogcert/parallel.hpp"
#include "frogcert/sim.hpp"

namespace frogcert::cli {

namespace {

using nlohmann::json;

// Thrown for output that would contain a non-finite number.
struct NonFinite : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void require_finite_json(const json& j) {
  if (j.is_number_float() && !std::isfinite(j.get<double>())) throw NonFinite("non-finite value in JSON output");
  if (j.is_structured()) {
    for (const auto& v : j) require_finite_json(v);
  }
}

void emit_json(std::ostream& out, const json& j) {
  require_finite_json(j);
  out << j.dump(2) << '\n';
}

// ---------------------------------------------------------------------------
// bound

struct BoundArgs {
  int d = 2;
  double mu = 1.0;
  int m = 1;
  double lambda = 0.0;
  double beta = 1.0;
  double c_hit = 1.0;
  std::string mode = "numeric";
  bool json_only = false;
};

int cmd_bound(const BoundArgs& a, bool lambda_given, std::ostream& out) {
  auto p = analytic::BoundParams::standard(a.d, a.mu, a.m);
  if (lambda_given) p.lambda = a.lambda;
  p.beta = a.beta;
  p.c_hit = a.c_hit;
  p.validate();
  analytic::SumMode mode;
  if (a.mode == "numeric") {
    mode = analytic::SumMode::numeric;
  } else if (a.mode == "closed-form") {
    mode = analytic::SumMode::closed_form;
  } else {
    throw std::invalid_argument("--mode must be numeric or closed-form");
  }
  const auto report = analytic::total_bound(p, mode);
  json j = to_json(report);
  j["params"] = {{"d", p.d}, {"mu", p.mu}, {"m", p.m}, {"N", std::pow(static_cast<double>(p.d), p.m)},
                 {"lambda", p.lambda}, {"beta", p.beta}, {"C_hit", p.c_hit}, {"mode", a.mode}};
  if (!a.json_only) {
    for (std::size_t i = 0; i < analytic::kRegions.size(); ++i) {
      out << analytic::region_name(analytic::kRegions[i]) << "\t" << format_number(report.region_sums[i]) << '\n';
    }
    out << "total\t" << format_number(report.total) << '\n';
    out << "alpha\t" << format_number(report.alpha) << '\n';
    out << "transient_certified\t" << (report.transient_certified ? "true" : "false") << "\n\n";
  }
  emit_json(out, j);
  return kOk;
}

// ---------------------------------------------------------------------------
// certify

struct CertifyArgs {
  std::string method = "two-point";
  int d = 2;
  double mu = 10.0;
  double lambda = 0.0;
  int n_max = 20;
  std::string out_path;
  std::string timestamp;
};

analytic::Method parse_method(const std::string& s) {
  if (s == "two-point") return analytic::Method::two_point;
  if (s == "infinite-mean") return analytic::Method::infinite_mean;
  if (s == "two-type") return analytic::Method::two_type;
  throw std::invalid_argument("--method must be two-point, infinite-mean or two-type");
}

int cmd_certify(const CertifyArgs& a, bool mu_given, bool lambda_given, std::ostream& out) {
  blocks::CertifyRequest req;
  req.method = parse_method(a.method);
  req.d = a.d;
  // The mixture's mu is per component.
  req.mu = mu_given || req.method != analytic::Method::infinite_mean ? a.mu : 1.0;
  if (lambda_given) req.lambda = a.lambda;
  req.n_max = a.n_max;
  const auto cert = blocks::certify(req);
  const json j = to_json(cert, a.timestamp.empty() ? utc_timestamp() : a.timestamp);
  if (a.out_path.empty()) {
    emit_json(out, j);
    return kOk;
  }
  require_finite_json(j);
  std::ofstream f(a.out_path);
  if (!f) throw std::invalid_argument("cannot write " + a.out_path);
  f << j.dump(2) << '\n';
  if (!f) throw std::runtime_error("write failed: " + a.out_path);
  out << "transient_certified=" << (cert.transient_certified ? "true" : "false");
  if (cert.alpha) out << " alpha=" << format_number(*cert.alpha);
  out << " reason=\"" << cert.reason << "\" -> " << a.out_path << '\n';
  return kOk;
}

// ---------------------------------------------------------------------------
// simulate

struct SimArgs {
  int d = 2;
  std::string tree_mode = "regular";
  std::string law;
  std::optional<laws::ParticleLaw> law_json;
  std::int64_t n = 0;
  double mu = 10.0;
  double lambda = 0.0;
  int r_record = 20;
  int r_kill = 40;
  std::int64_t t_max = 1'000'000;
  std::uint64_t seed = 1;
  std::int64_t replicas = 100;
  int workers = 0;
  std::string root;
  int n_max = 4;
  std::string variant = "plain";
  std::string plot_data;
  std::string config_path;
};

using Setter = std::function<void(SimArgs&, const json&)>;

const std::map<std::string, Setter>& config_fields() {
  static const std::map<std::string, Setter> fields{
      {"d", [](SimArgs& a, const json& v) { a.d = v.get<int>(); }},
      {"mode", [](SimArgs& a, const json& v) { a.tree_mode = v.get<std::string>(); }},
      {"law",
       [](SimArgs& a, const json& v) {
         if (v.is_string()) {
           a.law = v.get<std::string>();
         } else {
           a.law_json = laws::parse_law(v);
         }
       }},
      {"N", [](SimArgs& a, const json& v) { a.n = v.get<std::int64_t>(); }},
      {"mu", [](SimArgs& a, const json& v) { a.mu = v.get<double>(); }},
      {"lambda", [](SimArgs& a, const json& v) { a.lambda = v.get<double>(); }},
      {"r_record", [](SimArgs& a, const json& v) { a.r_record = v.get<int>(); }},
      {"r_kill", [](SimArgs& a, const json& v) { a.r_kill = v.get<int>(); }},
      {"t_max", [](SimArgs& a, const json& v) { a.t_max = v.get<std::int64_t>(); }},
      {"seed", [](SimArgs& a, const json& v) { a.seed = v.get<std::uint64_t>(); }},
      {"replicas", [](SimArgs& a, const json& v) { a.replicas = v.get<std::int64_t>(); }},
      {"workers", [](SimArgs& a, const json& v) { a.workers = v.get<int>(); }},
      {"root", [](SimArgs& a, const json& v) { a.root = v.get<std::string>(); }},
      {"n_max", [](SimArgs& a, const json& v) { a.n_max = v.get<int>(); }},
      {"variant", [](SimArgs& a, const json& v) { a.variant = v.get<std::string>(); }},
  };
  return fields;
}

// Config values fill every field not given on the command line.
void apply_config(SimArgs& a, const std::map<std::string, const CLI::Option*>& flags) {
  std::ifstream f(a.config_path);
  if (!f) throw std::invalid_argument("cannot read config " + a.config_path);
  json j;
  try {
    j = json::parse(f);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("config: ") + e.what());
  }
  if (!j.is_object()) throw std::invalid_argument("config: expected a JSON object");
  for (const auto& [key, value] : j.items()) {
    const auto it = config_fields().find(key);
    if (it == config_fields().end()) throw std::invalid_argument("config: unknown field '" + key + "'");
    const auto flag = flags.find(key);
    if (flag != flags.end() && flag->second->count() > 0) continue;
    try {
      it->second(a, value);
    } catch (const json::exception& e) {
      throw std::invalid_argument("config field '" + key + "': " + e.what());
    }
  }
}

struct Prepared {
  sim::SimConfig config;
  int workers;
};

Prepared prepare(const SimArgs& a, bool lambda_given, sim::RootStart default_root) {
  sim::SimConfig c;
  c.tree.d = a.d;
  if (a.tree_mode == "regular") {
    c.tree.mode = tree::Mode::regular;
  } else if (a.tree_mode == "d-ary") {
    c.tree.mode = tree::Mode::d_ary;
  } else {
    throw std::invalid_argument("--mode must be regular or d-ary");
  }
  c.tree.validate();
  if (a.law_json) {
    c.law = *a.law_json;
  } else if (!a.law.empty()) {
    c.law = laws::parse_law(a.law);
  } else if (a.n > 0) {
    c.law = laws::ParticleLaw::two_point(a.n, a.mu);
  } else {
    // Default: the certified two-point law for (d, mu).
    const auto found = analytic::find_min_m(a.d, a.mu, 1.0 / std::sqrt(static_cast<double>(a.d)));
    if (!found.m) throw std::invalid_argument("no certified two-point law for these (d, mu); pass --law or --N");
    c.law = laws::ParticleLaw::two_point(static_cast<laws::Count>(found.certificate.n.front()), a.mu);
  }
  c.lambda = lambda_given ? a.lambda : 1.0 / std::sqrt(static_cast<double>(a.d));
  c.r_record = a.r_record;
  c.r_kill = a.r_kill;
  c.t_max = a.t_max;
  c.seed = a.seed;
  c.replicas = a.replicas;
  if (a.root.empty()) {
    c.root = default_root;
  } else if (a.root == "single") {
    c.root = sim::RootStart::single_active;
  } else if (a.root == "sampled") {
    c.root = sim::RootStart::sampled;
  } else {
    throw std::invalid_argument("--root must be single or sampled");
  }
  if (a.replicas < 1) throw std::invalid_argument("--replicas must be >= 1");
  c.validate();
  if (a.workers < 0) throw std::invalid_argument("--workers must be >= 0");
  return {c, a.workers > 0 ? a.workers : default_workers()};
}

std::ofstream open_plot(const std::string& path) {
  std::ofstream f(path);
  if (!f) throw std::invalid_argument("cannot write " + path);
  return f;
}

void describe(const sim::SimConfig& c, std::ostream& err) {
  err << "# law " << c.law.describe() << ", d=" << c.tree.d << ", lambda=" << format_number(c.lambda)
      << ", r_record=" << c.r_record << ", r_kill=" << c.r_kill << ", t_max=" << c.t_max << '\n';
}

int sim_island(const SimArgs& a, bool lambda_given, std::ostream& out, std::ostream& err) {
  const auto [c, workers] = prepare(a, lambda_given, sim::RootStart::sampled);
  describe(c, err);
  const auto s = sim::estimate_island(c, workers);
  out << "replica,seed,walkers,sites,weight,bias_bound,truncated\n";
  RunningStats walkers, sites, truncated;
  for (std::size_t i = 0; i < s.replicas.size(); ++i) {
    const auto& r = s.replicas[i];
    out << i << ',' << c.seed << ',' << r.walkers << ',' << r.sites << ',' << format_number(r.weight) << ','
        << format_number(r.bias_bound) << ',' << (r.truncated ? 1 : 0) << '\n';
    walkers.add(static_cast<double>(r.walkers));
    sites.add(static_cast<double>(r.sites));
    truncated.add(r.truncated ? 1.0 : 0.0);
  }
  out << "mean," << c.seed << ',' << format_number(walkers.mean()) << ',' << format_number(sites.mean()) << ','
      << format_number(s.weight.mean) << ',' << format_number(s.expected_bias_bound) << ','
      << format_number(truncated.mean()) << '\n';
  out << "stderr," << c.seed << ',' << format_number(walkers.stderr_mean()) << ','
      << format_number(sites.stderr_mean()) << ',' << format_number(s.weight.stderr_mean) << ",0,"
      << format_number(truncated.stderr_mean()) << '\n';
  if (!analytic::divergence_reason(c.tree.d, c.lambda, 1.0) && c.tree.mode == tree::Mode::regular) {
    err << "# analytic alpha " << format_number(analytic::alpha_for_law(c.law, c.tree.d, c.lambda)) << '\n';
  }
  if (s.top_replica_share > 0.1) {
    err << "warning: the largest replica carries " << format_number(100.0 * s.top_replica_share)
        << "% of the total weight; the standard error is unreliable\n";
  }
  if (!a.plot_data.empty()) {
    // Histogram of log2(1 + weight).
    std::map<int, std::int64_t> bins;
    for (const auto& r : s.replicas) ++bins[static_cast<int>(std::floor(std::log2(1.0 + r.weight)))];
    auto f = open_plot(a.plot_data);
    f << "log2_weight_lo,log2_weight_hi,count\n";
    for (const auto& [b, n] : bins) f << b << ',' << b + 1 << ',' << n << '\n';
  }
  return kOk;
}

int sim_frog(const SimArgs& a, bool lambda_given, std::ostream& out, std::ostream& err) {
  const auto [c, workers] = prepare(a, lambda_given, sim::RootStart::single_active);
  describe(c, err);
  const auto runs = run_indexed(c.replicas, workers, [&](std::int64_t i) {
    return sim::frog_model(c, static_cast<std::uint64_t>(i)).stats;
  });
  out << "replica,seed,root_visits,sites_visited,max_level,min_level,awakened,truncated\n";
  std::array<RunningStats, 6> st;
  for (std::size_t i = 0; i < runs.size(); ++i) {
    const auto& r = runs[i];
    out << i << ',' << c.seed << ',' << r.root_visits << ',' << r.sites_visited << ',' << r.max_level << ','
        << r.min_level << ',' << r.awakened << ',' << (r.truncated ? 1 : 0) << '\n';
    const double row[6] = {static_cast<double>(r.root_visits), static_cast<double>(r.sites_visited),
                           static_cast<double>(r.max_level),   static_cast<double>(r.min_level),
                           static_cast<double>(r.awakened),    r.truncated ? 1.0 : 0.0};
    for (int k = 0; k < 6; ++k) st[k].add(row[k]);
  }
  out << "mean," << c.seed;
  for (const auto& s : st) out << ',' << format_number(s.mean());
  out << "\nstderr," << c.seed;
  for (const auto& s : st) out << ',' << format_number(s.stderr_mean());
  out << '\n';
  if (!a.plot_data.empty()) {
    std::map<std::int64_t, std::int64_t> hist;
    for (const auto& r : runs) ++hist[r.root_visits];
    auto f = open_plot(a.plot_data);
    f << "root_visits,count\n";
    for (const auto& [v, n] : hist) f << v << ',' << n << '\n';
  }
  return kOk;
}

int sim_blocks(const SimArgs& a, bool lambda_given, std::ostream& out, std::ostream& err) {
  const auto [c, workers] = prepare(a, lambda_given, sim::RootStart::sampled);
  const auto variant = blocks::parse_variant(a.variant);
  describe(c, err);
  struct Row {
    std::vector<double> weights, bias;
    bool truncated;
  };
  const auto runs = run_indexed(c.replicas, workers, [&](std::int64_t i) {
    auto seq = blocks::run_blocks(c, a.n_max, variant, static_cast<std::uint64_t>(i));
    return Row{std::move(seq.weights), std::move(seq.bias_bounds), seq.truncated};
  });
  const auto alpha = blocks::alpha_reference(c, variant);
  out << "replica,seed,n,weight,bias_bound,truncated\n";
  std::vector<RunningStats> w(a.n_max + 1), b(a.n_max + 1);
  RunningStats truncated;
  for (std::size_t i = 0; i < runs.size(); ++i) {
    for (int n = 0; n <= a.n_max; ++n) {
      out << i << ',' << c.seed << ',' << n << ',' << format_number(runs[i].weights[n]) << ','
          << format_number(runs[i].bias[n]) << ',' << (runs[i].truncated ? 1 : 0) << '\n';
      w[n].add(runs[i].weights[n]);
      b[n].add(runs[i].bias[n]);
    }
    truncated.add(runs[i].truncated ? 1.0 : 0.0);
  }
  for (int n = 0; n <= a.n_max; ++n) {
    out << "mean," << c.seed << ',' << n << ',' << format_number(w[n].mean()) << ',' << format_number(b[n].mean())
        << ',' << format_number(truncated.mean()) << '\n';
  }
  for (int n = 0; n <= a.n_max; ++n) {
    out << "stderr," << c.seed << ',' << n << ',' << format_number(w[n].stderr_mean()) << ','
        << format_number(b[n].stderr_mean()) << ',' << format_number(truncated.stderr_mean()) << '\n';
  }
  if (alpha) {
    err << "# alpha_ref " << format_number(*alpha) << '\n';
  } else {
    err << "# alpha_ref unavailable (divergent sums or unsupported tree)\n";
  }
  if (!a.plot_data.empty()) {
    auto f = open_plot(a.plot_data);
    f << "n,mean_weight,stderr,alpha_pow_n\n";
    for (int n = 0; n <= a.n_max; ++n) {
      f << n << ',' << format_number(w[n].mean()) << ',' << format_number(w[n].stderr_mean()) << ','
        << (alpha ? format_number(std::pow(*alpha, n)) : std::string()) << '\n';
    }
  }
  return kOk;
}

// ---------------------------------------------------------------------------
// oracle

int emit_oracle(const oracle::OracleResult& r, std::ostream& out) {
  emit_json(out, {{"oracle", r.name},
                  {"pass", r.pass},
                  {"observed", r.observed},
                  {"expected", r.expected},
                  {"tolerance", r.tolerance},
                  {"detail", r.detail}});
  return r.pass ? kOk : kFailed;
}

}  // namespace

std::string format_number(double x) {
  if (!std::isfinite(x)) throw NonFinite("non-finite value in output");
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Frog-model transience certificates and simulations on regular trees", "frogcert"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  BoundArgs bound;
  auto* cmd = app.add_subcommand("bound", "Six-region bound on the island weight for N = d^m");
  cmd->add_option("--d", bound.d, "Tree parameter (degree d+1)")->required();
  cmd->add_option("--mu", bound.mu, "Mean particles per site")->required();
  cmd->add_option("--m", bound.m, "N = d^m")->required();
  auto* bound_lambda = cmd->add_option("--lambda", bound.lambda, "Weight base (default 1/sqrt(d))");
  cmd->add_option("--beta", bound.beta, "Hitting exponent")->capture_default_str();
  cmd->add_option("--c-hit", bound.c_hit, "Hitting prefactor")->capture_default_str();
  cmd->add_option("--mode", bound.mode, "numeric or closed-form")->capture_default_str();
  cmd->add_flag("--json", bound.json_only, "JSON only");

  CertifyArgs cert;
  auto* ccmd = app.add_subcommand("certify", "Emit a transience certificate");
  ccmd->add_option("--method", cert.method, "two-point, infinite-mean or two-type")->capture_default_str();
  ccmd->add_option("--d", cert.d)->capture_default_str();
  auto* cert_mu = ccmd->add_option("--mu", cert.mu, "Mean (per component for infinite-mean, default 1)")
                      ->capture_default_str();
  auto* cert_lambda = ccmd->add_option("--lambda", cert.lambda, "Weight base (default 1/sqrt(d))");
  ccmd->add_option("--n-max", cert.n_max, "Mixture components")->capture_default_str();
  ccmd->add_option("--out", cert.out_path, "Write the certificate here instead of stdout");
  ccmd->add_option("--timestamp", cert.timestamp, "Fixed timestamp (default: now, UTC)");

  SimArgs sa;
  std::map<std::string, const CLI::Option*> sim_flags;
  auto* scmd = app.add_subcommand("simulate", "Monte Carlo runs; one CSV row per replica");
  scmd->require_subcommand(1);
  std::string sim_kind;
  for (const char* kind : {"island", "frog", "blocks"}) {
    auto* k = scmd->add_subcommand(kind);
    k->fallthrough();
    k->callback([&sim_kind, kind] { sim_kind = kind; });
  }
  sim_flags["d"] = scmd->add_option("--d", sa.d)->capture_default_str();
  sim_flags["mode"] = scmd->add_option("--mode", sa.tree_mode, "regular or d-ary")->capture_default_str();
  sim_flags["law"] = scmd->add_option("--law", sa.law, "twopoint:N:mu, const:c, poisson:mean, pmf:c=p,..., plusone:<law>");
  sim_flags["N"] = scmd->add_option("--N", sa.n, "Two-point law size (with --mu)");
  sim_flags["mu"] = scmd->add_option("--mu", sa.mu)->capture_default_str();
  auto* sim_lambda = scmd->add_option("--lambda", sa.lambda, "Weight base (default 1/sqrt(d))");
  sim_flags["lambda"] = sim_lambda;
  sim_flags["r_record"] = scmd->add_option("--rrecord", sa.r_record)->capture_default_str();
  sim_flags["r_kill"] = scmd->add_option("--rkill", sa.r_kill)->capture_default_str();
  sim_flags["t_max"] = scmd->add_option("--tmax", sa.t_max, "Steps per walker")->capture_default_str();
  sim_flags["seed"] = scmd->add_option("--seed", sa.seed)->capture_default_str();
  sim_flags["replicas"] = scmd->add_option("--replicas", sa.replicas)->capture_default_str();
  sim_flags["workers"] = scmd->add_option("--workers", sa.workers, "Threads (default FROGCERT_THREADS or all cores)");
  sim_flags["root"] = scmd->add_option("--root", sa.root, "single or sampled");
  sim_flags["n_max"] = scmd->add_option("--nmax", sa.n_max, "Blocks")->capture_default_str();
  sim_flags["variant"] = scmd->add_option("--variant", sa.variant, "plain or two_type")->capture_default_str();
  scmd->add_option("--plot-data", sa.plot_data, "Write a pre-binned series here");
  scmd->add_option("--config", sa.config_path, "JSON config; command-line flags take precedence");

  int od = 2, radius = 8, ok = 2, om = 2;
  std::int64_t oreplicas = 100000;
  std::uint64_t oseed = 1;
  int oworkers = 0;
  double omu = 1.0;
  auto* ocmd = app.add_subcommand("oracle", "Brute-force checks; exit 1 on failure");
  ocmd->require_subcommand(1);
  auto* ophi = ocmd->add_subcommand("phi", "phi(j,k) against BFS counts");
  ophi->add_option("--d", od)->capture_default_str();
  ophi->add_option("--R", radius)->capture_default_str();
  auto* ohit = ocmd->add_subcommand("hit", "Hitting frequency against d^-k");
  ohit->add_option("--d", od)->capture_default_str();
  ohit->add_option("--k", ok)->capture_default_str();
  ohit->add_option("--replicas", oreplicas)->capture_default_str();
  ohit->add_option("--seed", oseed)->capture_default_str();
  ohit->add_option("--workers", oworkers);
  auto* oball = ocmd->add_subcommand("ball-bound", "total_bound against ball enumeration");
  oball->add_option("--d", od)->capture_default_str();
  oball->add_option("--m", om)->capture_default_str();
  oball->add_option("--mu", omu)->capture_default_str();

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kInvalid;
  }

  try {
    if (cmd->parsed()) return cmd_bound(bound, bound_lambda->count() > 0, out);
    if (ccmd->parsed()) return cmd_certify(cert, cert_mu->count() > 0, cert_lambda->count() > 0, out);
    if (scmd->parsed()) {
      if (!sa.config_path.empty()) apply_config(sa, sim_flags);
      const bool lambda_given = sim_lambda->count() > 0 || sa.lambda != 0.0;
      if (sim_kind == "island") return sim_island(sa, lambda_given, out, err);
      if (sim_kind == "frog") return sim_frog(sa, lambda_given, out, err);
      return sim_blocks(sa, lambda_given, out, err);
    }
    if (ophi->parsed()) return emit_oracle(oracle::phi_vs_bfs(od, radius), out);
    if (ohit->parsed()) {
      return emit_oracle(oracle::hit_frequency(od, ok, oreplicas, oseed, oworkers > 0 ? oworkers : default_workers()),
                         out);
    }
    if (oball->parsed()) return emit_oracle(oracle::ball_bound(od, om, omu), out);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kInvalid;
  } catch (const GuardError& e) {
    err << "error: " << e.what() << '\n';
    return kInvalid;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kFailed;
  }
  return kInvalid;
}

}  // namespace frogcert::cli
