// robust-spanner: build, verify and measure layered robust 1-spanners on 1-D
// point sets.
//
// Exit codes: 0 success / PASS, 1 property violation, 2 usage or input error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "robust_spanner/error.hpp"
#include "robust_spanner/experiments.hpp"
#include "robust_spanner/serialization.hpp"
#include "robust_spanner/spanner_graph.hpp"
#include "robust_spanner/verifier.hpp"

namespace rs = robust_spanner;

namespace {

constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;

struct CommonArgs {
  rs::ExperimentConfig config;
  std::string failures = "none";
  int ell = 0;
  double epsilon = 0.0;
};

void add_instance_flags(CLI::App& cmd, CommonArgs& args) {
  cmd.add_option("--n", args.config.n, "Number of points (generators only)")
      ->check(CLI::PositiveNumber);
  auto* ell = cmd.add_option("--ell", args.ell, "Layer count")->check(CLI::PositiveNumber);
  auto* eps = cmd.add_option("--epsilon", args.epsilon, "Target exponent slack, ell from (1-e)/e");
  ell->excludes(eps);
  cmd.add_option("--points", args.config.points, "Point source: uniform|clustered|expgaps|<file>")
      ->capture_default_str();
  cmd.add_option("--seed", args.config.seed, "Random seed")->capture_default_str();
  cmd.add_option("--out", args.config.out, "Output path");
}

void add_failure_flags(CLI::App& cmd, CommonArgs& args) {
  auto& f = args.config.failures;
  cmd.add_option("--failures", args.failures,
                 "Failure model: none|random-k|half-cluster-wipe|interval-wipe|file")
      ->capture_default_str();
  cmd.add_option("--k", f.k, "Number of random failures");
  cmd.add_option("--layer", f.layer, "Layer of the wiped half-cluster");
  cmd.add_option("--ordinal", f.ordinal, "1-based position of the wiped half-cluster");
  cmd.add_option("--lo", f.lo, "First index of the wiped interval");
  cmd.add_option("--length", f.length, "Length of the wiped interval");
  cmd.add_option("--failure-list", f.list, "Comma-separated failed indices");
}

// Resolves flag values into the config; throws rs::Error on bad combinations.
void finalize(const CLI::App& cmd, CommonArgs& args, bool needs_failures) {
  if (cmd.count("--ell")) args.config.ell = args.ell;
  if (cmd.count("--epsilon")) args.config.epsilon = args.epsilon;
  args.config.validate();
  if (!needs_failures) return;
  const auto model = rs::parse_failure_model(args.failures);
  if (!model) throw rs::Error(rs::Errc::InvalidArgument, "unknown failure model " + args.failures);
  args.config.failures.model = *model;
  if (*model == rs::FailureModel::List && args.config.failures.list.empty() &&
      args.failures == "file") {
    throw rs::Error(rs::Errc::InvalidArgument, "--failures file needs --failure-list or --failure-file");
  }
}

rs::PointSet resolve_points(const rs::ExperimentConfig& config) {
  if (const auto gen = rs::parse_point_generator(config.points)) {
    if (config.n == 0) throw rs::Error(rs::Errc::InvalidArgument, "--n is required with a generator");
    return rs::generate_points(*gen, config.n, config.seed);
  }
  rs::PointSet ps = rs::load_point_set(config.points);
  if (config.n != 0 && config.n != ps.size()) {
    throw rs::Error(rs::Errc::InvalidArgument, "--n disagrees with the point file");
  }
  return ps;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw rs::Error(rs::Errc::Io, "cannot open " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw rs::Error(rs::Errc::Io, "cannot write " + path);
  out << text;
}

rs::SpannerGraph load_graph(const std::string& path, std::size_t n) {
  const std::string text = read_file(path);
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    auto g = rs::graph_from_json(text);
    if (g.vertex_count() != n) throw rs::Error(rs::Errc::SchemeMismatch, "graph n differs");
    return g;
  }
  std::istringstream in(text);
  return rs::read_edge_list(in, n);
}

// Writes to --out when given, stdout otherwise.
template <class Fn>
void emit(const std::string& out_path, Fn&& write) {
  if (out_path.empty()) {
    write(std::cout);
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw rs::Error(rs::Errc::Io, "cannot write " + out_path);
  write(out);
}

int run_build(CommonArgs& args, const std::string& format, const std::string& scheme_path) {
  const auto& config = args.config;
  const int ell = config.resolved_ell();
  const rs::PointSet ps = resolve_points(config);
  const auto scheme = rs::build_scheme(ps.size(), ell);
  const auto graph = rs::build_spanner(ps, scheme);

  const std::string prefix = config.out.empty() ? "spanner" : config.out;
  if (format == "json") {
    write_file(prefix + ".json", rs::graph_to_json(graph) + "\n");
  } else {
    std::ostringstream edges;
    rs::write_edge_list(edges, graph);
    write_file(prefix + ".edges", edges.str());
  }
  std::ostringstream points;
  rs::write_point_set(points, ps);
  write_file(prefix + ".points", points.str());
  if (!scheme_path.empty()) write_file(scheme_path, rs::scheme_to_json(scheme) + "\n");

  std::cout << "n=" << ps.size() << " ell=" << ell << " m=" << scheme.m()
            << " edges=" << graph.edge_count() << (scheme.complete_graph() ? " complete-graph" : "")
            << '\n';
  return 0;
}

struct VerifyArgs {
  std::string graph_path;
  std::string failure_file;
  std::string trace_path;
  std::size_t pairs = 20000;
  std::size_t oracle_samples = 500;
  std::size_t exhaustive_limit = 512;
};

int run_verify(CommonArgs& args, const VerifyArgs& v) {
  auto& config = args.config;
  if (!v.failure_file.empty()) {
    config.failures.model = rs::FailureModel::List;
    config.failures.list = read_file(v.failure_file);
  }
  const int ell = config.resolved_ell();
  const rs::PointSet ps = resolve_points(config);
  const auto scheme = rs::build_scheme(ps.size(), ell);
  const auto graph = v.graph_path.empty() ? rs::build_spanner(ps, scheme)
                                          : load_graph(v.graph_path, ps.size());
  const auto failures = rs::sample_failures(scheme, config.failures, config.seed);
  const auto closure = rs::compute_closure(scheme, failures);

  rs::VerifyOptions options;
  options.seed = config.seed;
  options.sample_pairs = v.pairs;
  options.oracle_samples = v.oracle_samples;
  options.exhaustive_limit = v.exhaustive_limit;
  const auto report = rs::verify_robust_spanner(graph, ps, scheme, closure, options);

  if (!v.trace_path.empty()) write_file(v.trace_path, rs::trace_to_json(closure) + "\n");
  emit(config.out, [&](std::ostream& out) { out << rs::report_to_json(report) << '\n'; });
  std::cerr << (report.passed() ? "PASS" : "FAIL") << " seed=" << report.seed
            << " pairs=" << report.pairs_checked << " violations=" << report.violations.size()
            << " |F|=" << report.failed_count << " |F*|=" << report.ignored_count << '\n';
  return report.passed() ? 0 : kExitViolation;
}

struct ScalingArgs {
  std::vector<int> ells{1, 2, 3};
  std::vector<std::size_t> ns;
  std::size_t m_min = 2;
  std::size_t m_max = 8;
  bool timing = false;
  std::string format = "csv";
  std::string out;
};

int run_scaling(const ScalingArgs& a) {
  std::vector<rs::ScalingRow> rows;
  for (int ell : a.ells) {
    const auto ns = a.ns.empty() ? rs::perfect_powers(ell, a.m_min, a.m_max) : a.ns;
    for (std::size_t n : ns) rows.push_back(rs::measure_scaling(n, ell, a.timing));
  }
  emit(a.out, [&](std::ostream& out) {
    if (a.format == "json") {
      rs::write_scaling_json(out, rows);
    } else {
      rs::write_scaling_csv(out, rows);
    }
  });

  int status = 0;
  for (int ell : a.ells) {
    std::vector<rs::ScalingRow> mine;
    for (const auto& r : rows)
      if (r.ell == ell) mine.push_back(r);
    const auto slope = rs::fit_loglog_slope(mine);
    const double limit = (ell + 2.0) / (ell + 1.0) + 0.05;
    if (slope && *slope > limit) {
      std::cerr << "ell=" << ell << ": slope " << *slope << " exceeds " << limit << '\n';
      status = kExitViolation;
    }
  }
  return status;
}

int run_closure_stats(CommonArgs& args, const std::string& format) {
  const auto& config = args.config;
  const int ell = config.resolved_ell();
  const std::size_t n = config.n != 0 ? config.n : resolve_points(config).size();
  const auto scheme = rs::build_scheme(n, ell);
  const auto stats = rs::run_closure_stats(scheme, config.failures, config.trials, config.seed);
  emit(config.out, [&](std::ostream& out) {
    if (format == "json") {
      rs::write_closure_json(out, stats);
    } else {
      rs::write_closure_csv(out, stats);
    }
  });
  if (stats.first_violation) {
    const auto& row = stats.rows[*stats.first_violation];
    std::cerr << "closure bound violated in trial " << row.trial << " (seed " << row.seed << ")\n";
    return kExitViolation;
  }
  std::cerr << "max |F*|/|F| = " << stats.max_ratio << " over " << stats.rows.size()
            << " trials\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Robust 1-spanners on one-dimensional point sets"};
  app.require_subcommand(1);

  CommonArgs build_args;
  std::string build_format = "edges";
  std::string scheme_path;
  auto* build = app.add_subcommand("build", "Build a spanner and write it to disk");
  add_instance_flags(*build, build_args);
  build->add_option("--format", build_format, "Graph format: edges|json")
      ->check(CLI::IsMember({"edges", "csv", "json"}))
      ->capture_default_str();
  build->add_option("--scheme", scheme_path, "Also write the cluster layout as JSON");

  CommonArgs verify_args;
  VerifyArgs verify_extra;
  auto* verify = app.add_subcommand("verify", "Check the robust 1-spanner property under failures");
  add_instance_flags(*verify, verify_args);
  add_failure_flags(*verify, verify_args);
  verify->add_option("--graph", verify_extra.graph_path, "Edge list or JSON graph to verify");
  verify->add_option("--failure-file", verify_extra.failure_file, "File with comma-separated indices");
  verify->add_option("--trace", verify_extra.trace_path, "Write the closure trace as JSON");
  verify->add_option("--pairs", verify_extra.pairs, "Sampled pairs above the exhaustive limit")
      ->capture_default_str();
  verify->add_option("--oracle-samples", verify_extra.oracle_samples,
                     "Pairs cross-checked by shortest paths")
      ->capture_default_str();
  verify->add_option("--exhaustive-limit", verify_extra.exhaustive_limit,
                     "Check all pairs up to this n")
      ->capture_default_str();
  std::string verify_format = "json";
  verify->add_option("--format", verify_format, "Report format")->check(CLI::IsMember({"json"}));

  ScalingArgs scaling_args;
  auto* scaling = app.add_subcommand("scaling", "Edge counts against the size bound");
  scaling->add_option("--ell", scaling_args.ells, "Layer counts")->capture_default_str();
  scaling->add_option("--n", scaling_args.ns, "Point counts (default: perfect powers)");
  scaling->add_option("--m-min", scaling_args.m_min, "Smallest m for default n")
      ->capture_default_str();
  scaling->add_option("--m-max", scaling_args.m_max, "Largest m for default n")
      ->capture_default_str();
  scaling->add_flag("--timing", scaling_args.timing, "Record build times (not reproducible)");
  scaling->add_option("--format", scaling_args.format, "csv|json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  scaling->add_option("--out", scaling_args.out, "Output file (default stdout)");

  CommonArgs closure_args;
  std::string closure_format = "csv";
  auto* closure = app.add_subcommand("closure-stats", "Sizes of F* over random failure trials");
  add_instance_flags(*closure, closure_args);
  add_failure_flags(*closure, closure_args);
  closure->add_option("--trials", closure_args.config.trials, "Number of trials")
      ->capture_default_str();
  closure->add_option("--format", closure_format, "csv|json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*build) {
      finalize(*build, build_args, false);
      return run_build(build_args, build_format, scheme_path);
    }
    if (*verify) {
      finalize(*verify, verify_args, true);
      return run_verify(verify_args, verify_extra);
    }
    if (*scaling) return run_scaling(scaling_args);
    if (*closure) {
      finalize(*closure, closure_args, true);
      return run_closure_stats(closure_args, closure_format);
    }
  } catch (const rs::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
