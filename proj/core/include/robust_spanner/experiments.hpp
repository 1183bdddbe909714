#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <iosfwd>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "robust_spanner/cluster_scheme.hpp"
#include "robust_spanner/failure_closure.hpp"
#include "robust_spanner/point_set.hpp"

namespace robust_spanner {

// Counter-based seed split: independent stream per (seed, trial).
std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial);

enum class PointGenerator { Uniform, Clustered, ExpGaps };

std::optional<PointGenerator> parse_point_generator(std::string_view name);

// Uniform: i.i.d. on [0, 1). Clustered: tight Gaussian groups of ~32 points
// around uniform centers. ExpGaps: consecutive gaps i.i.d. Exponential(1).
PointSet generate_points(PointGenerator kind, std::size_t n, std::uint64_t seed);

enum class FailureModel { None, RandomK, HalfClusterWipe, IntervalWipe, List };

std::optional<FailureModel> parse_failure_model(std::string_view name);

struct FailureSpec {
  FailureModel model = FailureModel::None;
  std::size_t k = 0;          // RandomK
  int layer = 1;              // HalfClusterWipe
  std::size_t ordinal = 1;    // HalfClusterWipe: 1-based position in the layer's half list
  std::size_t lo = 0;         // IntervalWipe
  std::size_t length = 0;     // IntervalWipe
  std::string list;           // List: comma-separated indices
};

FailureSet random_failures(std::size_t n, std::size_t k, std::mt19937_64& rng);
FailureSet half_cluster_wipe(const LayeredScheme& scheme, int layer, std::size_t ordinal);
FailureSet interval_wipe(std::size_t n, std::size_t lo, std::size_t length);

// Throws Error(InvalidArgument) on parameters outside the scheme.
FailureSet sample_failures(const LayeredScheme& scheme, const FailureSpec& spec,
                           std::uint64_t seed);

struct ExperimentConfig {
  std::string points = "uniform";  // generator name or a file path
  std::size_t n = 0;
  std::optional<int> ell;
  std::optional<double> epsilon;
  FailureSpec failures;
  std::size_t trials = 1;
  std::uint64_t seed = 1;
  std::string out;
  std::string format = "csv";

  // Throws Error(InvalidArgument) when not exactly one of ell/epsilon is set
  // or trials == 0.
  void validate() const;
  int resolved_ell() const;
};

struct ScalingRow {
  std::size_t n = 0;
  int ell = 1;
  std::size_t m = 0;
  std::size_t edge_count = 0;
  double bound_value = 0.0;
  double ratio = 0.0;
  double build_millis = 0.0;
};

// (2m)^{ell+1} for m in [m_lo, m_hi], skipping values above max_n.
std::vector<std::size_t> perfect_powers(int ell, std::size_t m_lo, std::size_t m_hi,
                                        std::size_t max_n = SIZE_MAX);

ScalingRow measure_scaling(std::size_t n, int ell, bool timing = false);

// Least-squares slope of log(edge_count) against log(n); nullopt with fewer
// than two distinct n.
std::optional<double> fit_loglog_slope(std::span<const ScalingRow> rows);

// Columns: kind,n,ell,m,edge_count,bound_value,ratio,build_millis. Data rows
// have kind=row; one kind=slope row per ell carries the fitted slope in the
// ratio column.
void write_scaling_csv(std::ostream& out, std::span<const ScalingRow> rows);
void write_scaling_json(std::ostream& out, std::span<const ScalingRow> rows);

struct ClosureStatsRow {
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  std::size_t failed = 0;
  std::size_t ignored = 0;
  double ratio = 1.0;  // |F*| / |F|, 1 for F = ∅
  std::vector<std::size_t> layer_sizes;  // |F_0| .. |F_ell|
  bool bound_ok = true;
};

struct ClosureStats {
  std::vector<ClosureStatsRow> rows;
  double max_ratio = 0.0;
  std::optional<std::size_t> first_violation;  // index into rows
};

ClosureStats run_closure_stats(const LayeredScheme& scheme, const FailureSpec& spec,
                               std::size_t trials, std::uint64_t seed);

// Columns: trial,seed,failed,ignored,ratio,bound_ok,layer_sizes (';'-joined).
void write_closure_csv(std::ostream& out, const ClosureStats& stats);
void write_closure_json(std::ostream& out, const ClosureStats& stats);

// Runs fn(i) for i in [0, count) on a small worker pool; results come back in
// index order. The first exception thrown by any trial is rethrown.
template <class Fn>
auto run_trials(std::size_t count, Fn&& fn) -> std::vector<decltype(fn(std::size_t{}))> {
  using Result = decltype(fn(std::size_t{}));
  std::vector<std::optional<Result>> slots(count);
  std::vector<std::exception_ptr> errors(count);
  auto run_one = [&](std::size_t i) {
    try {
      slots[i].emplace(fn(i));
    } catch (...) {
      errors[i] = std::current_exception();
    }
  };
  const std::size_t workers = std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1,
                                                      std::max<std::size_t>(count, 1));
  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i) run_one(i);
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t i = w; i < count; i += workers) run_one(i);
      });
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  std::vector<Result> out;
  out.reserve(count);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

}  // namespace robust_spanner
