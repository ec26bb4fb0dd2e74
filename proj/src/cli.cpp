#include "reachprobe/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "reachprobe/domain.hpp"
#include "reachprobe/errors.hpp"
#include "reachprobe/estimators.hpp"
#include "reachprobe/fourball.hpp"
#include "reachprobe/graph_certificates.hpp"
#include "reachprobe/json_io.hpp"
#include "reachprobe/local_graph.hpp"
#include "reachprobe/lp_inequalities.hpp"
#include "reachprobe/sampling.hpp"

namespace reachprobe::cli {

namespace {

using json::Json;

const char* name_of(Subcommand s) {
  switch (s) {
    case Subcommand::analyze: return "analyze";
    case Subcommand::fourball: return "fourball";
    case Subcommand::lp: return "lp";
    case Subcommand::certify: return "certify";
  }
  return "?";
}

std::string read_file(const std::string& path, const char* flag) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput(std::string(flag) + ": cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text, const char* flag) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidInput(std::string(flag) + ": cannot write '" + path + "'");
  out << text;
}

void require_positive(const std::optional<double>& v, const char* flag) {
  if (v && !(*v > 0.0 && std::isfinite(*v))) throw InvalidInput(std::string(flag) + " must be positive and finite");
}

void forbid(bool present, const char* flag, Subcommand s) {
  if (present) throw InvalidInput(std::string(flag) + " is not accepted by '" + name_of(s) + "'");
}

struct LoadedDomain {
  DomainPtr domain;
  Json echo;
};

LoadedDomain load_domain(const RunConfig& cfg) {
  if (cfg.input_path.has_value() == cfg.builtin_name.has_value())
    throw InvalidInput("exactly one of --input or --builtin is required");
  LoadedDomain out;
  if (cfg.input_path) {
    if (!cfg.params.empty()) throw InvalidInput("--param only applies to --builtin");
    if (cfg.dim) throw InvalidInput("--dim only applies to --builtin (the spec file carries dim)");
    out.domain = json::parse_domain_spec(read_file(*cfg.input_path, "--input")).domain;
  } else {
    out.domain = builtin(*cfg.builtin_name, cfg.params, cfg.dim.value_or(2));
  }
  out.echo = json::to_json(out.domain->spec());
  return out;
}

Json base_config(const RunConfig& cfg) {
  Json c;
  c["subcommand"] = name_of(cfg.subcommand);
  c["seed"] = cfg.seed;
  return c;
}

RunResult analyze(const RunConfig& cfg) {
  forbid(cfg.trials.has_value(), "--trials", cfg.subcommand);
  forbid(cfg.p.has_value(), "--p", cfg.subcommand);
  forbid(cfg.r.has_value(), "--r", cfg.subcommand);
  const std::uint64_t samples = cfg.samples.value_or(2000);
  if (samples < 100) throw InvalidInput("--samples must be >= 100");
  require_positive(cfg.r_max, "--r-max");
  const int refine = cfg.refine_iters.value_or(6);
  if (refine < 0 || refine > 64) throw InvalidInput("--refine-iters must be in [0, 64]");

  const LoadedDomain dom = load_domain(cfg);
  EstimatorOptions opt;
  opt.r_max = cfg.r_max;
  opt.refine_iters = refine;
  const RegularityReport rep = equivalence_report(*dom.domain, samples, cfg.seed, opt);

  if (cfg.csv_path) {
    // Same seed and method, so this is exactly the sample the report used.
    const BoundarySample s = sample_boundary(*dom.domain, samples, cfg.seed, opt.method);
    std::string csv;
    const int d = s.dim();
    for (int k = 1; k <= d; ++k) csv += "x" + std::to_string(k) + ",";
    for (int k = 1; k <= d; ++k) csv += "n" + std::to_string(k) + (k < d ? "," : "\n");
    char buf[40];
    for (std::size_t i = 0; i < s.size(); ++i) {
      for (int k = 0; k < d; ++k) {
        std::snprintf(buf, sizeof buf, "%.17g,", s.points[i][k]);
        csv += buf;
      }
      for (int k = 0; k < d; ++k) {
        std::snprintf(buf, sizeof buf, k + 1 < d ? "%.17g," : "%.17g\n", s.normals[i][k]);
        csv += buf;
      }
    }
    write_file(*cfg.csv_path, csv, "--csv");
  }

  Json config = base_config(cfg);
  config["domain"] = dom.echo;
  config["samples"] = samples;
  config["r_max"] = rep.r_max;
  config["refine_iters"] = refine;
  Json report;
  report["config"] = config;
  report["report"] = json::to_json(rep);
  return {kExitOk, json::dump(report), {}};
}

RunResult fourball_cmd(const RunConfig& cfg) {
  forbid(cfg.samples.has_value(), "--samples", cfg.subcommand);
  const int dim = cfg.dim.value_or(3);
  if (dim < 2 || dim > 1024) throw InvalidInput("--dim must be in [2, 1024]");
  const double r = cfg.r.value_or(1.0);
  require_positive(r, "--r");
  const std::uint64_t trials = cfg.trials.value_or(100000);
  if (trials < 1) throw InvalidInput("--trials must be >= 1");
  const NormContext norm = cfg.p ? NormContext::lp(*cfg.p) : NormContext::euclidean();

  const fourball::TrialReport rep = fourball::run_trials(norm, dim, r, trials, cfg.seed);
  Json config = base_config(cfg);
  config["norm"] = norm.is_euclidean() ? Json("euclidean") : Json("lp");
  if (!norm.is_euclidean()) config["p"] = norm.p();
  config["dim"] = dim;
  config["r"] = r;
  config["trials"] = trials;
  Json report;
  report["config"] = config;
  const Json counts = json::to_json(rep);
  for (const auto& [k, v] : counts.items()) report[k] = v;
  return {rep.violations == 0 ? kExitOk : kExitViolation, json::dump(report), {}};
}

RunResult lp_cmd(const RunConfig& cfg) {
  forbid(cfg.samples.has_value(), "--samples", cfg.subcommand);
  if (!cfg.p) throw InvalidInput("--p is required for 'lp'");
  const double p = *cfg.p;
  const NormContext norm = NormContext::lp(p);
  const int dim = cfg.dim.value_or(8);
  if (dim < 2 || dim > 1024) throw InvalidInput("--dim must be in [2, 1024]");
  const double r = cfg.r.value_or(1.0);
  require_positive(r, "--r");
  const std::uint64_t trials = cfg.trials.value_or(100000);
  if (trials < 1) throw InvalidInput("--trials must be >= 1");

  const fourball::TrialReport bound = fourball::run_trials(norm, dim, r, trials, cfg.seed);
  const lp::HolderTrialReport holder = lp::run_holder_trials(p, dim, r, trials, cfg.seed);
  std::uint64_t violations = bound.violations + holder.violations;

  Json inequalities;
  std::vector<lp::Inequality> kinds;
  if (p >= 2.0) kinds.push_back(lp::Inequality::clarkson_first);
  if (p <= 2.0) kinds.push_back(lp::Inequality::clarkson_second);
  kinds.push_back(lp::Inequality::uniform_smoothness);
  kinds.push_back(lp::Inequality::concavity);
  for (const auto k : kinds) {
    const lp::CampaignReport c = lp::run_inequality_campaign(k, trials, cfg.seed, p);
    violations += c.failures;
    inequalities[std::string(lp::to_string(k))] = json::to_json(c);
  }

  Json config = base_config(cfg);
  config["p"] = p;
  config["dim"] = dim;
  config["r"] = r;
  config["trials"] = trials;
  Json report;
  report["config"] = config;
  const Json counts = json::to_json(bound);
  for (const auto& [k, v] : counts.items()) report[k] = v;
  report["holder"] = json::to_json(holder);
  report["inequalities"] = inequalities;
  report["total_violations"] = violations;
  return {violations == 0 ? kExitOk : kExitViolation, json::dump(report), {}};
}

RunResult certify(const RunConfig& cfg) {
  forbid(cfg.samples.has_value(), "--samples", cfg.subcommand);
  forbid(cfg.trials.has_value(), "--trials", cfg.subcommand);
  if (!cfg.r) throw InvalidInput("--r (curvature scale) is required for 'certify'");
  const double r = *cfg.r;
  require_positive(r, "--r");

  Json config = base_config(cfg);
  config["r"] = r;
  LocalGraph g;
  DomainPtr domain;
  if (cfg.graph_path) {
    if (cfg.input_path || cfg.builtin_name || cfg.point || cfg.rho || cfg.h || cfg.grid)
      throw InvalidInput("--graph cannot be combined with a domain, --point, --rho, --h or --grid");
    g = json::parse_graph(read_file(*cfg.graph_path, "--graph"));
    config["graph"] = *cfg.graph_path;
  } else {
    const LoadedDomain dom = load_domain(cfg);
    domain = dom.domain;
    if (!cfg.point) throw InvalidInput("--point is required when certifying a domain");
    if (!cfg.rho || !cfg.h) throw InvalidInput("--rho and --h are required when certifying a domain");
    require_positive(cfg.rho, "--rho");
    require_positive(cfg.h, "--h");
    const int grid = cfg.grid.value_or(21);
    const int dim = domain->spec().dim;
    if (static_cast<int>(cfg.point->size()) != dim)
      throw InvalidInput("--point must have " + std::to_string(dim) + " coordinates");
    const Point x0 = Eigen::Map<const Point>(cfg.point->data(), dim);
    g = extract_local_graph(*domain, x0, *cfg.rho, *cfg.h, grid);
    config["domain"] = dom.echo;
    config["point"] = json::point(x0);
    config["rho"] = *cfg.rho;
    config["h"] = *cfg.h;
    config["grid"] = grid;
  }
  if (cfg.emit_graph_path) write_file(*cfg.emit_graph_path, json::dump(json::graph_to_json(g)), "--emit-graph");

  Json report;
  report["config"] = config;
  try {
    const GraphCertificate cert = delta0_certificate(g, r);
    bool ok = cert.envelope_ok && cert.balls_ok;
    report["certificate"] = json::to_json(cert);
    if (domain) {
      const bool cross = cross_check_with_estimator(g, *domain, cert, 4000, cfg.seed);
      report["cross_check"] = cross;
      ok = ok && cross;
    }
    report["ok"] = ok;
    return {ok ? kExitOk : kExitViolation, json::dump(report), {}};
  } catch (const CertificateRefused& e) {
    report["certificate"] = nullptr;
    report["refused"] = {{"reason", e.what()},
                         {"worst_node", e.worst_node()},
                         {"x_prime", json::point(g.nodes[e.worst_node()].xp)},
                         {"worst_margin", e.worst_margin()}};
    report["ok"] = false;
    return {kExitViolation, json::dump(report), e.what()};
  }
}

std::vector<double> parse_point(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      throw CLI::ValidationError("--point", "not a number: '" + item + "'");
    }
    if (used != item.size() || !std::isfinite(v)) throw CLI::ValidationError("--point", "not a number: '" + item + "'");
    out.push_back(v);
  }
  if (out.empty()) throw CLI::ValidationError("--point", "expected comma-separated coordinates");
  return out;
}

}  // namespace

RunResult execute(const RunConfig& cfg) {
  if (cfg.csv_path && cfg.subcommand != Subcommand::analyze)
    return {kExitInput, {}, "--csv is only accepted by 'analyze'"};
  try {
    switch (cfg.subcommand) {
      case Subcommand::analyze: return analyze(cfg);
      case Subcommand::fourball: return fourball_cmd(cfg);
      case Subcommand::lp: return lp_cmd(cfg);
      case Subcommand::certify: return certify(cfg);
    }
  } catch (const InvalidInput& e) {
    return {kExitInput, {}, e.what()};
  } catch (const SamplingFailure& e) {
    return {kExitInput, {}, std::string("sampling failed: ") + e.what()};
  } catch (const CylinderTooLarge& e) {
    return {kExitInput, {}, std::string("local graph: ") + e.what()};
  }
  return {kExitInput, {}, "unknown subcommand"};
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  RunResult res = execute(cfg);
  if (!res.json.empty()) {
    if (cfg.output_path) {
      std::ofstream f(*cfg.output_path, std::ios::binary);
      if (!f) {
        err << "error: --output: cannot write '" << *cfg.output_path << "'\n";
        return kExitInput;
      }
      f << res.json;
    } else {
      out << res.json;
    }
  }
  if (!res.message.empty()) err << (res.exit_code == kExitInput ? "error: " : "") << res.message << "\n";
  return res.exit_code;
}

std::optional<RunConfig> parse_args(int argc, const char* const* argv, int& exit_code, std::ostream& out,
                                    std::ostream& err) {
  CLI::App app{"Boundary regularity analysis: supporting-ball radii, normal Lipschitz constants, four-ball bounds"};
  app.require_subcommand(1);
  RunConfig cfg;

  std::vector<std::string> params;
  std::string point;
  std::uint64_t samples = 0, trials = 0;
  double p = 0, r = 0, r_max = 0, rho = 0, h = 0;
  int dim = 0, refine = 0, grid = 0;
  std::string input, builtin_name, output, csv, graph, emit;

  auto* an = app.add_subcommand("analyze", "Estimate the supporting radius and normal Lipschitz constant");
  auto* fb = app.add_subcommand("fourball", "Random campaign for the four-ball bound");
  auto* lpc = app.add_subcommand("lp", "l^p four-ball bound, Holder form and norm inequalities");
  auto* ce = app.add_subcommand("certify", "delta0 supporting-ball certificate from a local graph");

  for (auto* sub : {an, ce}) {
    sub->add_option("--input", input, "Domain spec file (JSON)");
    sub->add_option("--builtin", builtin_name, "Built-in domain: ball, ellipsoid, dumbbell, tail");
    sub->add_option("--param", params, "Built-in parameter key=value (repeatable)");
  }
  for (auto* sub : {an, fb, lpc, ce}) {
    sub->add_option("--dim", dim, "Dimension");
    sub->add_option("--seed", cfg.seed, "Random seed (default 0)");
    sub->add_option("--output", output, "Write the JSON report here instead of stdout");
  }
  an->add_option("--samples", samples, "Boundary samples (default 2000)");
  an->add_option("--r-max", r_max, "Radius cap (default: bounding-box diameter)");
  an->add_option("--refine-iters", refine, "Pair refinement rounds (default 6)");
  an->add_option("--csv", csv, "Also write the boundary sample as CSV");
  for (auto* sub : {fb, lpc}) {
    sub->add_option("--trials", trials, "Number of random configurations (default 100000)");
    sub->add_option("--r", r, "Ball radius (default 1)");
  }
  fb->add_option("--p", p, "Use the l^p norm instead of the Euclidean one");
  lpc->add_option("--p", p, "Exponent p > 1")->required();
  ce->add_option("--r", r, "Curvature scale r")->required();
  ce->add_option("--graph", graph, "Graph file (JSON)");
  ce->add_option("--point", point, "Boundary point, comma-separated");
  ce->add_option("--rho", rho, "Disc radius of the cylinder");
  // --h is the cylinder half height, so this subcommand only has --help.
  ce->set_help_flag("--help", "Print this help message and exit");
  ce->add_option("--h", h, "Half height of the cylinder");
  ce->add_option("--grid", grid, "Odd grid size per tangent axis (default 21)");
  ce->add_option("--emit-graph", emit, "Write the extracted graph file here");

  try {
    app.parse(argc, argv);
    const auto given = [&](CLI::App* sub, const char* name) {
      try {
        return sub->get_option(name)->count() > 0;
      } catch (const CLI::OptionNotFound&) {
        return false;
      }
    };
    CLI::App* sub = app.get_subcommands().front();
    cfg.subcommand = sub == an ? Subcommand::analyze
                   : sub == fb ? Subcommand::fourball
                   : sub == lpc ? Subcommand::lp
                                : Subcommand::certify;
    if (given(sub, "--input")) cfg.input_path = input;
    if (given(sub, "--builtin")) cfg.builtin_name = builtin_name;
    for (const auto& kv : params) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos || eq == 0) throw CLI::ValidationError("--param", "expected key=value, got '" + kv + "'");
      std::size_t used = 0;
      double v = 0.0;
      const std::string val = kv.substr(eq + 1);
      try {
        v = std::stod(val, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used == 0 || used != val.size() || !std::isfinite(v))
        throw CLI::ValidationError("--param", "value of '" + kv.substr(0, eq) + "' is not a number");
      cfg.params[kv.substr(0, eq)] = v;
    }
    if (given(sub, "--dim")) cfg.dim = dim;
    if (given(sub, "--samples")) cfg.samples = samples;
    if (given(sub, "--trials")) cfg.trials = trials;
    if (given(sub, "--p")) cfg.p = p;
    if (given(sub, "--r")) cfg.r = r;
    if (given(sub, "--r-max")) cfg.r_max = r_max;
    if (given(sub, "--refine-iters")) cfg.refine_iters = refine;
    if (given(sub, "--graph")) cfg.graph_path = graph;
    if (given(sub, "--point")) cfg.point = parse_point(point);
    if (given(sub, "--rho")) cfg.rho = rho;
    if (given(sub, "--h")) cfg.h = h;
    if (given(sub, "--grid")) cfg.grid = grid;
    if (given(sub, "--emit-graph")) cfg.emit_graph_path = emit;
    if (given(sub, "--output")) cfg.output_path = output;
    if (given(sub, "--csv")) cfg.csv_path = csv;
  } catch (const CLI::ParseError& e) {
    exit_code = app.exit(e, out, err) == 0 ? kExitOk : kExitInput;
    return std::nullopt;
  }
  exit_code = kExitOk;
  return cfg;
}

int main_entry(int argc, const char* const* argv) {
  int code = kExitOk;
  const auto cfg = parse_args(argc, argv, code, std::cout, std::cerr);
  if (!cfg) return code;
  return run(*cfg, std::cout, std::cerr);
}

}  // namespace reachprobe::cli
