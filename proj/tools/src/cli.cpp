// Copyright 2026 The uniest Authors
// SPDX-License-Identifier: Apache-2.0

#include "uniest/tools/cli.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <numbers>
#include <optional>
#include <sstream>

#include "uniest/tools/povm_spec.hpp"
#include "uniest/tools/verification.hpp"
#include "uniest/uniest.hpp"

namespace uniest::tools {
namespace {

using nlohmann::json;
using std::numbers::pi;

struct RunConfig {
  int d = 2;
  std::string chart;
  std::string probe;
  std::optional<double> alpha;
  std::optional<double> theta;
  std::optional<double> phi;
  std::vector<double> theta_vec;
  std::string povm;
  std::string povm_file;
  std::uint64_t n = 10000;
  int reps = 200;
  std::uint64_t trials = 10000;
  std::uint64_t seed = 2026;
  std::string out;
  bool json = false;
  int grid = 5;
  // Off-centre defaults keep grid points away from pi/2 and pi.
  std::vector<double> alpha_range{0.2, 2.9};
  std::vector<double> theta_range{0.2, 2.9};
  std::vector<double> phi_range{0.1, 6.1};
  std::optional<double> tol;
  std::vector<int> checks;
  std::string witness_out;
};

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

void print_matrix(std::ostream& out, const std::string& label, const RMatrix& m) {
  out << label << " =\n";
  for (Index r = 0; r < m.rows(); ++r) {
    out << "  ";
    for (Index c = 0; c < m.cols(); ++c) out << (c ? "  " : "") << num(m(r, c));
    out << '\n';
  }
}

json vector_json(const RVector& v) { return json(std::vector<double>(v.data(), v.data() + v.size())); }

Chart chart_of(const RunConfig& cfg) {
  if (cfg.chart.empty()) return cfg.d == 2 ? Chart::kSu2Polar : Chart::kExp;
  if (cfg.chart == "su2") return Chart::kSu2Polar;
  if (cfg.chart == "exp") return Chart::kExp;
  throw DomainError("--chart must be exp or su2, got '" + cfg.chart + "'");
}

BipartiteState probe_of(const RunConfig& cfg) {
  if (cfg.d < 2) throw DomainError("--d must be at least 2");
  if (cfg.probe.empty()) return cfg.d == 2 ? singlet() : max_entangled(cfg.d);
  if (cfg.probe == "singlet") {
    if (cfg.d != 2) throw DomainError("--probe singlet needs --d 2");
    return singlet();
  }
  if (cfg.probe == "maxent") return max_entangled(cfg.d);
  if (cfg.probe.rfind("random:", 0) == 0) {
    Rng rng(std::stoull(cfg.probe.substr(7)));
    return random_bipartite_state(cfg.d, rng);
  }
  throw DomainError("--probe must be singlet, maxent or random:SEED, got '" + cfg.probe + "'");
}

RVector point_of(const RunConfig& cfg, const ChannelFamily& family) {
  const bool polar_flags = cfg.alpha || cfg.theta || cfg.phi;
  RVector x;
  if (!cfg.theta_vec.empty()) {
    if (polar_flags) throw DomainError("give either --theta-vec or --alpha/--theta/--phi, not both");
    x = Eigen::Map<const RVector>(cfg.theta_vec.data(), static_cast<Index>(cfg.theta_vec.size()));
  } else if (family.chart() == Chart::kSu2Polar) {
    x.resize(3);
    x << cfg.alpha.value_or(0.9), cfg.theta.value_or(1.1), cfg.phi.value_or(2.2);
  } else {
    if (polar_flags) throw DomainError("--alpha/--theta/--phi need the su2 chart; use --theta-vec");
    x = RVector::Zero(family.num_params());
  }
  family.check_domain(x);
  return x;
}

Povm povm_of(const RunConfig& cfg, const ChannelFamily& family, const RVector& x) {
  if (!cfg.povm.empty() && !cfg.povm_file.empty()) throw DomainError("give either --povm or --povm-file, not both");
  if (!cfg.povm_file.empty()) return read_povm(cfg.povm_file);
  if (cfg.povm.empty()) throw DomainError("this command needs --povm or --povm-file");
  return resolve_povm(cfg.povm, family, x);
}

std::string povm_label(const RunConfig& cfg) { return cfg.povm_file.empty() ? cfg.povm : "file:" + cfg.povm_file; }

json header(const std::string& command, const RunConfig& cfg, const ChannelFamily& family, const RVector& x) {
  return json{{"command", command},
              {"d", family.dim()},
              {"chart", std::string(chart_name(family.chart()))},
              {"point", vector_json(x)},
              {"seed", cfg.seed}};
}

void emit(const RunConfig& cfg, std::ostream& out, const std::string& text) {
  if (cfg.out.empty()) {
    out << text;
  } else {
    write_text_file(cfg.out, text);
  }
}

int cmd_qfi(const RunConfig& cfg, std::ostream& out) {
  const ChannelFamily family(probe_of(cfg), chart_of(cfg));
  const RVector x = point_of(cfg, family);
  const FisherMatrix h = qfi_pure(family.model(x));
  if (cfg.json) {
    json j = header("qfi", cfg, family, x);
    j["H"] = real_matrix_to_json(h.entries);
    emit(cfg, out, dump_json(j));
  } else {
    std::ostringstream s;
    print_matrix(s, "H", h.entries);
    emit(cfg, out, s.str());
  }
  return kExitOk;
}

int cmd_fi(const RunConfig& cfg, std::ostream& out) {
  const ChannelFamily family(probe_of(cfg), chart_of(cfg));
  const RVector x = point_of(cfg, family);
  const OutputModel model = family.model(x);
  const Povm povm = povm_of(cfg, family, x);
  const FisherMatrix i = classical_fi(model, povm);
  const RVector p = outcome_probabilities_pure(model.psi, povm);
  if (cfg.json) {
    json j = header("fi", cfg, family, x);
    j["povm"] = povm_label(cfg);
    j["I"] = real_matrix_to_json(i.entries);
    j["probabilities"] = vector_json(p);
    emit(cfg, out, dump_json(j));
  } else {
    std::ostringstream s;
    print_matrix(s, "I", i.entries);
    s << "rank = " << i.rank() << "\nmin p = " << num(p.minCoeff()) << '\n';
    emit(cfg, out, s.str());
  }
  return kExitOk;
}

int cmd_merit(const RunConfig& cfg, std::ostream& out) {
  const ChannelFamily family(probe_of(cfg), chart_of(cfg));
  const RVector x = point_of(cfg, family);
  const OutputModel model = family.model(x);
  const Povm povm = povm_of(cfg, family, x);
  const FisherMatrix h = qfi_pure(model);
  const FisherMatrix i = classical_fi(model, povm);
  const MeritReport report = evaluate_merit(model, povm);
  if (cfg.json) {
    json j = header("merit", cfg, family, x);
    j["povm"] = povm_label(cfg);
    j["merit"] = report.value;
    j["parameters"] = model.num_params();
    j["achievability_gap"] = report.achievability_gap.value_or(0.0);
    j["qcrb_min_eig"] = report.qcrb_min_eig;
    j["H"] = real_matrix_to_json(h.entries);
    j["I"] = real_matrix_to_json(i.entries);
    emit(cfg, out, dump_json(j));
  } else {
    std::ostringstream s;
    s << "merit = " << num(report.value) << "  (p = " << model.num_params() << ")\n"
      << "achievability gap = " << num(report.achievability_gap.value_or(0.0)) << '\n'
      << "qcrb min eig = " << num(report.qcrb_min_eig) << '\n';
    print_matrix(s, "H", h.entries);
    print_matrix(s, "I", i.entries);
    emit(cfg, out, s.str());
  }
  return kExitOk;
}

void check_range(const std::vector<double>& range, const char* name, double lo, double hi) {
  if (range.size() != 2 || !(range[0] < range[1])) {
    throw DomainError(std::string("--") + name + "-range needs two increasing values");
  }
  if (range[0] < lo || range[1] > hi) {
    throw DomainError(std::string("--") + name + "-range [" + num(range[0]) + ", " + num(range[1]) +
                      "] touches the chart boundary");
  }
}

int cmd_sweep(const RunConfig& cfg, std::ostream& out) {
  if (cfg.d != 2 || chart_of(cfg) != Chart::kSu2Polar) throw DomainError("sweep runs on the d=2 su2 chart");
  if (cfg.grid < 1) throw DomainError("--grid must be positive");
  const double edge = default_tolerances().chart_boundary;
  check_range(cfg.alpha_range, "alpha", edge, pi - edge);
  check_range(cfg.theta_range, "theta", edge, pi - edge);
  check_range(cfg.phi_range, "phi", -std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity());
  const ChannelFamily family(probe_of(cfg), Chart::kSu2Polar);
  const auto cell = [&](const std::vector<double>& r, int i) { return r[0] + (r[1] - r[0]) * (i + 0.5) / cfg.grid; };
  std::ostringstream s;
  s << "alpha,theta,phi,merit,min_p,qcrb_min_eig\n";
  for (int i = 0; i < cfg.grid; ++i) {
    for (int j = 0; j < cfg.grid; ++j) {
      for (int k = 0; k < cfg.grid; ++k) {
        RVector x(3);
        x << cell(cfg.alpha_range, i), cell(cfg.theta_range, j), cell(cfg.phi_range, k);
        const OutputModel model = family.model(x);
        const Povm povm = povm_of(cfg, family, x);
        const MeritReport report = evaluate_merit(model, povm);
        const RVector p = outcome_probabilities_pure(model.psi, povm);
        s << num(x(0)) << ',' << num(x(1)) << ',' << num(x(2)) << ',' << num(report.value) << ','
          << num(p.minCoeff()) << ',' << num(report.qcrb_min_eig) << '\n';
      }
    }
  }
  emit(cfg, out, s.str());
  return kExitOk;
}

int cmd_simulate(const RunConfig& cfg, std::ostream& out) {
  const ChannelFamily family(probe_of(cfg), chart_of(cfg));
  const RVector x = point_of(cfg, family);
  const Povm povm = povm_of(cfg, family, x);
  const EstimationReport report = covariance_study(family, x, povm, cfg.n, cfg.reps, cfg.seed);
  const std::string text = report_to_text(report);
  if (!cfg.out.empty()) write_text_file(cfg.out, text);
  if (cfg.json) {
    if (cfg.out.empty()) out << text;
  } else {
    const FisherMatrix h = qfi_pure(family.model(x));
    RMatrix h_inv = h.entries.inverse();
    out << "trace ratio tr(V)/tr(I^-1/N) = " << num(report.trace_ratio()) << '\n'
        << "tr(V) N / tr(H^-1) = " << num(report.covariance.trace() * static_cast<double>(cfg.n) / h_inv.trace())
        << '\n'
        << "min eig(N V - I^-1) = " << num(report.crb_floor_min_eig()) << '\n'
        << "seed = " << cfg.seed << '\n';
  }
  return kExitOk;
}

int cmd_search(const RunConfig& cfg, std::ostream& out) {
  const SearchReport report = counterexample_search(cfg.d, cfg.trials, cfg.seed);
  const std::string text = report_to_text(report);
  if (!cfg.out.empty()) write_text_file(cfg.out, text);
  if (cfg.json) {
    if (cfg.out.empty()) out << text;
  } else if (report.found) {
    out << "found: max QFI eigenvalue " << num(report.max_eigenvalue) << " exceeds 4/d = " << num(4.0 / cfg.d)
        << " by " << num(report.excess) << '\n';
  } else {
    out << "none found: max QFI eigenvalue " << num(report.max_eigenvalue) << " <= 4/d = " << num(4.0 / cfg.d)
        << " (+1e-6) after " << report.trials << " trials\n";
  }
  return kExitOk;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out) {
  VerifyOptions options;
  options.seed = cfg.seed;
  options.tolerance = cfg.tol;
  if (!cfg.witness_out.empty()) options.witness_out = cfg.witness_out;
  std::vector<CheckResult> results;
  if (cfg.checks.empty()) {
    results = run_acceptance_suite(options);
  } else {
    for (int id : cfg.checks) results.push_back(run_check(id, options));
  }
  bool all = true;
  json records = json::array();
  for (const CheckResult& r : results) {
    all = all && r.passed();
    records.push_back(check_to_json(r));
    if (!cfg.json) out << format_check(r) << '\n';
  }
  if (cfg.json) {
    const std::string text = dump_json(json{{"seed", cfg.seed}, {"passed", all}, {"checks", records}});
    emit(cfg, out, text);
  } else {
    out << (all ? "all checks passed" : "some checks FAILED") << '\n';
  }
  return all ? kExitOk : kExitCheckFailed;
}

void add_model_options(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--d", cfg.d, "Local dimension d")->capture_default_str();
  sub->add_option("--chart", cfg.chart, "Parameter chart: exp or su2 (default su2 for d=2, exp otherwise)");
  sub->add_option("--probe", cfg.probe, "Input state: singlet, maxent or random:SEED");
  sub->add_option("--alpha", cfg.alpha, "su2 rotation angle (radians)");
  sub->add_option("--theta", cfg.theta, "su2 axis polar angle (radians)");
  sub->add_option("--phi", cfg.phi, "su2 axis azimuth (radians)");
  sub->add_option("--theta-vec", cfg.theta_vec, "Chart coordinates, comma separated")->delimiter(',');
  sub->add_option("--seed", cfg.seed, "Random seed")->capture_default_str();
  sub->add_option("--out", cfg.out, "Write the result to this file");
  sub->add_flag("--json", cfg.json, "Machine-readable output");
}

void add_povm_options(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--povm", cfg.povm,
                  "bell | reduced-bell:k[,k..] | lo-bell:k,l | local-spin | product:n,seed | matsumoto");
  sub->add_option("--povm-file", cfg.povm_file, "POVM file (JSON)");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"uniest: Fisher information and measurement tools for estimating an unknown unitary"};
  app.require_subcommand(1);

  CLI::App* verify = app.add_subcommand("verify", "Run the acceptance checks");
  verify->add_option("--tol", cfg.tol, "Override the tolerance of every check");
  verify->add_option("--check", cfg.checks, "Run only these check ids (repeatable)");
  verify->add_option("--seed", cfg.seed, "Random seed")->capture_default_str();
  verify->add_option("--witness-out", cfg.witness_out, "Write a found d=3 witness report here");
  verify->add_option("--out", cfg.out, "Write the JSON report to this file (with --json)");
  verify->add_flag("--json", cfg.json, "Machine-readable output");

  CLI::App* qfi = app.add_subcommand("qfi", "Quantum Fisher information H");
  add_model_options(qfi, cfg);
  CLI::App* fi = app.add_subcommand("fi", "Classical Fisher information I of a POVM");
  add_model_options(fi, cfg);
  add_povm_options(fi, cfg);
  CLI::App* merit_cmd = app.add_subcommand("merit", "Merit tr(H^-1 I) with QCRB and achievability diagnostics");
  add_model_options(merit_cmd, cfg);
  add_povm_options(merit_cmd, cfg);

  CLI::App* sweep = app.add_subcommand("sweep", "CSV of merit over a grid of su2 chart points");
  add_model_options(sweep, cfg);
  add_povm_options(sweep, cfg);
  sweep->add_option("--grid", cfg.grid, "Cell-centred points per axis")->capture_default_str();
  sweep->add_option("--alpha-range", cfg.alpha_range, "lo,hi")->delimiter(',')->expected(2);
  sweep->add_option("--theta-range", cfg.theta_range, "lo,hi")->delimiter(',')->expected(2);
  sweep->add_option("--phi-range", cfg.phi_range, "lo,hi")->delimiter(',')->expected(2);

  CLI::App* simulate = app.add_subcommand("simulate", "Monte Carlo MLE covariance study");
  add_model_options(simulate, cfg);
  add_povm_options(simulate, cfg);
  simulate->add_option("--n", cfg.n, "Samples per repetition")->capture_default_str();
  simulate->add_option("--reps", cfg.reps, "Repetitions")->capture_default_str();

  CLI::App* search = app.add_subcommand("search", "Search for inputs whose QFI beats the maximally entangled one");
  search->add_option("--d", cfg.d, "Local dimension d")->capture_default_str();
  search->add_option("--trials", cfg.trials, "Random trials")->capture_default_str();
  search->add_option("--seed", cfg.seed, "Random seed")->capture_default_str();
  search->add_option("--out", cfg.out, "Write the report to this file");
  search->add_flag("--json", cfg.json, "Print the report as JSON");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (verify->parsed()) return cmd_verify(cfg, out);
    if (qfi->parsed()) return cmd_qfi(cfg, out);
    if (fi->parsed()) return cmd_fi(cfg, out);
    if (merit_cmd->parsed()) return cmd_merit(cfg, out);
    if (sweep->parsed()) return cmd_sweep(cfg, out);
    if (simulate->parsed()) return cmd_simulate(cfg, out);
    if (search->parsed()) return cmd_search(cfg, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace uniest::tools
