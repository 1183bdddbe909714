#include "robust_spanner/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <numeric>
#include <ostream>
#include <string>

#include <nlohmann/json.hpp>

#include "robust_spanner/error.hpp"
#include "robust_spanner/spanner_graph.hpp"

namespace robust_spanner {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Draws until n distinct values exist; the draw order is fixed by the seed.
template <class Draw>
std::vector<double> distinct_values(std::size_t n, Draw&& draw) {
  std::vector<double> values;
  values.reserve(n);
  while (values.size() < n) {
    while (values.size() < n) values.push_back(draw());
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
  }
  return values;
}

}  // namespace

std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial) {
  return splitmix64(splitmix64(seed) ^ splitmix64(trial + 0x632be59bd9b4e019ULL));
}

std::optional<PointGenerator> parse_point_generator(std::string_view name) {
  if (name == "uniform") return PointGenerator::Uniform;
  if (name == "clustered") return PointGenerator::Clustered;
  if (name == "expgaps") return PointGenerator::ExpGaps;
  return std::nullopt;
}

PointSet generate_points(PointGenerator kind, std::size_t n, std::uint64_t seed) {
  if (n == 0) throw Error(Errc::EmptyInput, "cannot generate an empty point set");
  std::mt19937_64 rng(seed);
  switch (kind) {
    case PointGenerator::Uniform: {
      std::uniform_real_distribution<double> u(0.0, 1.0);
      return PointSet::from_coords(distinct_values(n, [&] { return u(rng); }));
    }
    case PointGenerator::Clustered: {
      const std::size_t groups = std::max<std::size_t>(1, n / 32);
      std::uniform_real_distribution<double> u(0.0, 1.0);
      std::vector<double> centers(groups);
      for (double& c : centers) c = u(rng);
      std::uniform_int_distribution<std::size_t> pick(0, groups - 1);
      std::normal_distribution<double> spread(0.0, 1e-4);
      return PointSet::from_coords(
          distinct_values(n, [&] { return centers[pick(rng)] + spread(rng); }));
    }
    case PointGenerator::ExpGaps: {
      std::exponential_distribution<double> gap(1.0);
      std::vector<double> coords(n);
      double x = 0.0;
      for (double& c : coords) {
        c = x;
        double g = 0.0;
        while (!(g > 0.0)) g = gap(rng);
        x += g;
      }
      return PointSet::from_coords(std::move(coords));
    }
  }
  throw Error(Errc::InvalidArgument, "unknown point generator");
}

std::optional<FailureModel> parse_failure_model(std::string_view name) {
  if (name == "none") return FailureModel::None;
  if (name == "random-k") return FailureModel::RandomK;
  if (name == "half-cluster-wipe") return FailureModel::HalfClusterWipe;
  if (name == "interval-wipe") return FailureModel::IntervalWipe;
  if (name == "file" || name == "list") return FailureModel::List;
  return std::nullopt;
}

FailureSet random_failures(std::size_t n, std::size_t k, std::mt19937_64& rng) {
  if (k > n) {
    throw Error(Errc::InvalidArgument,
                "cannot fail " + std::to_string(k) + " of " + std::to_string(n) + " vertices");
  }
  std::vector<VertexId> ids(n);
  std::iota(ids.begin(), ids.end(), VertexId{0});
  for (std::size_t i = 0; i < k; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, n - 1);
    std::swap(ids[i], ids[pick(rng)]);
  }
  ids.resize(k);
  return FailureSet(n, std::move(ids));
}

FailureSet half_cluster_wipe(const LayeredScheme& scheme, int layer, std::size_t ordinal) {
  if (scheme.complete_graph()) {
    throw Error(Errc::InvalidArgument, "complete-graph scheme has no half-clusters");
  }
  if (ordinal < 1 || ordinal > scheme.half_count(layer)) {
    throw Error(Errc::InvalidArgument, "half-cluster ordinal " + std::to_string(ordinal) +
                                           " outside [1, " +
                                           std::to_string(scheme.half_count(layer)) + "]");
  }
  const IndexSpan span = scheme.half_span(layer, ordinal - 1);
  return interval_wipe(scheme.n(), span.lo, span.size());
}

FailureSet interval_wipe(std::size_t n, std::size_t lo, std::size_t length) {
  if (lo > n || length > n - lo) {
    throw Error(Errc::InvalidArgument, "interval [" + std::to_string(lo) + ", " +
                                           std::to_string(lo + length) + ") exceeds n");
  }
  std::vector<VertexId> ids(length);
  std::iota(ids.begin(), ids.end(), static_cast<VertexId>(lo));
  return FailureSet(n, std::move(ids));
}

FailureSet sample_failures(const LayeredScheme& scheme, const FailureSpec& spec,
                           std::uint64_t seed) {
  switch (spec.model) {
    case FailureModel::None: return FailureSet::empty(scheme.n());
    case FailureModel::RandomK: {
      std::mt19937_64 rng(seed);
      return random_failures(scheme.n(), spec.k, rng);
    }
    case FailureModel::HalfClusterWipe: return half_cluster_wipe(scheme, spec.layer, spec.ordinal);
    case FailureModel::IntervalWipe: return interval_wipe(scheme.n(), spec.lo, spec.length);
    case FailureModel::List: return parse_failure_list(spec.list, scheme.n());
  }
  throw Error(Errc::InvalidArgument, "unknown failure model");
}

void ExperimentConfig::validate() const {
  if (ell.has_value() == epsilon.has_value()) {
    throw Error(Errc::InvalidArgument, "set exactly one of ell and epsilon");
  }
  if (ell && *ell < 1) throw Error(Errc::InvalidArgument, "ell must be >= 1");
  if (epsilon) choose_ell_for_epsilon(*epsilon);
  if (trials == 0) throw Error(Errc::InvalidArgument, "trials must be >= 1");
}

int ExperimentConfig::resolved_ell() const {
  validate();
  return ell ? *ell : choose_ell_for_epsilon(*epsilon);
}

std::vector<std::size_t> perfect_powers(int ell, std::size_t m_lo, std::size_t m_hi,
                                        std::size_t max_n) {
  std::vector<std::size_t> out;
  for (std::size_t m = m_lo; m <= m_hi; ++m) {
    const auto p = checked_pow(2 * m, ell + 1);
    if (!p || *p > max_n) break;
    out.push_back(*p);
  }
  return out;
}

ScalingRow measure_scaling(std::size_t n, int ell, bool timing) {
  const auto start = std::chrono::steady_clock::now();
  const LayeredScheme scheme = LayeredScheme::build(n, ell);
  const SpannerGraph graph = build_spanner(scheme);
  const auto stop = std::chrono::steady_clock::now();

  ScalingRow row;
  row.n = n;
  row.ell = ell;
  row.m = scheme.m();
  row.edge_count = graph.edge_count();
  row.bound_value = edge_count_bound(n, ell);
  row.ratio = static_cast<double>(row.edge_count) / row.bound_value;
  if (timing) row.build_millis = std::chrono::duration<double, std::milli>(stop - start).count();
  return row;
}

std::optional<double> fit_loglog_slope(std::span<const ScalingRow> rows) {
  std::vector<double> xs;
  std::vector<double> ys;
  for (const ScalingRow& r : rows) {
    if (r.edge_count == 0) continue;
    xs.push_back(std::log(static_cast<double>(r.n)));
    ys.push_back(std::log(static_cast<double>(r.edge_count)));
  }
  if (xs.size() < 2) return std::nullopt;
  const double k = static_cast<double>(xs.size());
  const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / k;
  const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / k;
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  if (sxx == 0.0) return std::nullopt;
  return sxy / sxx;
}

namespace {

std::vector<int> distinct_ells(std::span<const ScalingRow> rows) {
  std::vector<int> ells;
  for (const ScalingRow& r : rows) {
    if (std::find(ells.begin(), ells.end(), r.ell) == ells.end()) ells.push_back(r.ell);
  }
  return ells;
}

std::vector<ScalingRow> rows_for(std::span<const ScalingRow> rows, int ell) {
  std::vector<ScalingRow> out;
  std::copy_if(rows.begin(), rows.end(), std::back_inserter(out),
               [ell](const ScalingRow& r) { return r.ell == ell; });
  return out;
}

}  // namespace

void write_scaling_csv(std::ostream& out, std::span<const ScalingRow> rows) {
  out << "kind,n,ell,m,edge_count,bound_value,ratio,build_millis\n";
  out << std::setprecision(12);
  for (const ScalingRow& r : rows) {
    out << "row," << r.n << ',' << r.ell << ',' << r.m << ',' << r.edge_count << ','
        << r.bound_value << ',' << r.ratio << ',' << r.build_millis << '\n';
  }
  for (int ell : distinct_ells(rows)) {
    const auto slope = fit_loglog_slope(rows_for(rows, ell));
    if (slope) out << "slope,," << ell << ",,,," << *slope << ",\n";
  }
}

void write_scaling_json(std::ostream& out, std::span<const ScalingRow> rows) {
  nlohmann::json doc = {{"rows", nlohmann::json::array()}, {"slopes", nlohmann::json::array()}};
  for (const ScalingRow& r : rows) {
    doc["rows"].push_back({{"n", r.n},
                           {"ell", r.ell},
                           {"m", r.m},
                           {"edge_count", r.edge_count},
                           {"bound_value", r.bound_value},
                           {"ratio", r.ratio},
                           {"build_millis", r.build_millis}});
  }
  for (int ell : distinct_ells(rows)) {
    if (const auto slope = fit_loglog_slope(rows_for(rows, ell))) {
      doc["slopes"].push_back({{"ell", ell}, {"slope", *slope}});
    }
  }
  out << doc.dump(2) << '\n';
}

ClosureStats run_closure_stats(const LayeredScheme& scheme, const FailureSpec& spec,
                               std::size_t trials, std::uint64_t seed) {
  ClosureStats stats;
  stats.rows = run_trials(trials, [&](std::size_t trial) {
    ClosureStatsRow row;
    row.trial = trial;
    row.seed = trial_seed(seed, trial);
    const ClosureTrace trace = compute_closure(scheme, sample_failures(scheme, spec, row.seed));
    row.failed = trace.failures().size();
    row.ignored = trace.ignored().size();
    row.ratio = row.failed == 0 ? 1.0
                                : static_cast<double>(row.ignored) / static_cast<double>(row.failed);
    for (const IgnoredSet& layer : trace.per_layer) row.layer_sizes.push_back(layer.size());
    row.bound_ok = closure_bound_check(trace);
    return row;
  });
  for (std::size_t i = 0; i < stats.rows.size(); ++i) {
    stats.max_ratio = std::max(stats.max_ratio, stats.rows[i].ratio);
    if (!stats.rows[i].bound_ok && !stats.first_violation) stats.first_violation = i;
  }
  return stats;
}

void write_closure_csv(std::ostream& out, const ClosureStats& stats) {
  out << "trial,seed,failed,ignored,ratio,bound_ok,layer_sizes\n";
  out << std::setprecision(12);
  for (const ClosureStatsRow& r : stats.rows) {
    out << r.trial << ',' << r.seed << ',' << r.failed << ',' << r.ignored << ',' << r.ratio << ','
        << (r.bound_ok ? 1 : 0) << ',';
    for (std::size_t i = 0; i < r.layer_sizes.size(); ++i) {
      out << (i ? ";" : "") << r.layer_sizes[i];
    }
    out << '\n';
  }
}

void write_closure_json(std::ostream& out, const ClosureStats& stats) {
  nlohmann::json rows = nlohmann::json::array();
  for (const ClosureStatsRow& r : stats.rows) {
    rows.push_back({{"trial", r.trial},
                    {"seed", r.seed},
                    {"failed", r.failed},
                    {"ignored", r.ignored},
                    {"ratio", r.ratio},
                    {"bound_ok", r.bound_ok},
                    {"layer_sizes", r.layer_sizes}});
  }
  nlohmann::json doc = {{"rows", std::move(rows)}, {"max_ratio", stats.max_ratio}};
  if (stats.first_violation) doc["first_violation_trial"] = *stats.first_violation;
  out << doc.dump(2) << '\n';
}

}  // namespace robust_spanner
