#include "robust_spanner/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <queue>
#include <random>
#include <string>
#include <utility>

#include "robust_spanner/error.hpp"

namespace robust_spanner {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Pair {
  VertexId x;
  VertexId y;
};

// Pairs with x < y, grouped by source so each source runs one search.
std::map<VertexId, std::vector<VertexId>> group_by_source(const std::vector<Pair>& pairs) {
  std::map<VertexId, std::vector<VertexId>> groups;
  for (const Pair& p : pairs) groups[p.x].push_back(p.y);
  return groups;
}

std::vector<Pair> sample_pairs(const std::vector<VertexId>& from, const std::vector<VertexId>& to,
                               std::size_t count, std::mt19937_64& rng) {
  std::vector<Pair> out;
  if (from.empty() || to.empty() || (from.size() == 1 && to.size() == 1 && from[0] == to[0])) {
    return out;
  }
  std::uniform_int_distribution<std::size_t> pick_from(0, from.size() - 1);
  std::uniform_int_distribution<std::size_t> pick_to(0, to.size() - 1);
  out.reserve(count);
  while (out.size() < count) {
    const VertexId a = from[pick_from(rng)];
    const VertexId b = to[pick_to(rng)];
    if (a == b) continue;
    out.push_back(a < b ? Pair{a, b} : Pair{b, a});
  }
  return out;
}

}  // namespace

AliveView::AliveView(const SpannerGraph& graph, const FailureSet& removed)
    : graph_(&graph), removed_(removed), removed_mask_(removed.mask()) {
  if (removed.universe() != graph.vertex_count()) {
    throw Error(Errc::IndexOutOfRange, "failure set universe does not match graph");
  }
}

std::vector<VertexId> exact_reach_from(const AliveView& view, const PointSet& ps, VertexId x) {
  const std::size_t n = view.vertex_count();
  if (ps.size() != n) throw Error(Errc::SchemeMismatch, "point set does not match graph");
  if (x >= n) throw Error(Errc::IndexOutOfRange, "vertex " + std::to_string(x));
  if (!view.alive(x)) throw Error(Errc::VertexRemoved, "vertex " + std::to_string(x) + " failed");

  std::vector<bool> reached(n, false);
  reached[x] = true;
  for (std::size_t v = x; v < n; ++v) {
    if (!reached[v]) continue;
    view.for_each_neighbor(static_cast<VertexId>(v), [&](VertexId w) {
      if (w > v) reached[w] = true;
    });
  }
  for (std::size_t v = x + 1; v-- > 0;) {
    if (!reached[v]) continue;
    view.for_each_neighbor(static_cast<VertexId>(v), [&](VertexId w) {
      if (w < v) reached[w] = true;
    });
  }
  std::vector<VertexId> out;
  for (std::size_t v = 0; v < n; ++v) {
    if (reached[v]) out.push_back(static_cast<VertexId>(v));
  }
  return out;
}

MonotoneReachability::MonotoneReachability(const AliveView& view)
    : n_(view.vertex_count()), words_((n_ + 63) / 64), rows_(n_ * words_, 0), alive_(n_) {
  for (std::size_t v = n_; v-- > 0;) {
    const auto vid = static_cast<VertexId>(v);
    alive_[v] = view.alive(vid);
    if (!alive_[v]) continue;
    std::uint64_t* row = &rows_[v * words_];
    row[v / 64] |= std::uint64_t{1} << (v % 64);
    // Rows of later vertices only carry bits at or beyond their own index.
    view.for_each_neighbor(vid, [&](VertexId w) {
      if (w <= v) return;
      const std::uint64_t* src = &rows_[std::size_t{w} * words_];
      for (std::size_t k = w / 64; k < words_; ++k) row[k] |= src[k];
    });
  }
}

bool MonotoneReachability::exact(VertexId a, VertexId b) const {
  if (a >= n_ || b >= n_) throw Error(Errc::IndexOutOfRange, "vertex outside graph");
  if (a > b) std::swap(a, b);
  return alive_[a] && alive_[b] && bit(a, b);
}

PairClassification classify_pair(const LayeredScheme& scheme, VertexId x, VertexId y) {
  if (x > y) std::swap(x, y);
  if (scheme.complete_graph()) return {PairCase::SameBottomCluster, 1};

  auto halves_apart = [&](int layer) {
    return scheme.half_index_of(layer, y) - scheme.half_index_of(layer, x);
  };
  if (halves_apart(1) <= 1) return {PairCase::SameBottomCluster, 1};

  int deciding = scheme.ell();
  for (int layer = 2; layer <= scheme.ell(); ++layer) {
    if (halves_apart(layer) <= 1) {
      deciding = layer - 1;
      break;
    }
  }
  const std::size_t gap = halves_apart(deciding);
  return {gap == 2 ? PairCase::IntersectingClusters : PairCase::DisjointClusters, deciding};
}

bool lengths_match(double path_length, double distance) {
  if (!std::isfinite(path_length)) return false;
  return std::abs(path_length - distance) <= kOracleRelativeTolerance * std::abs(distance);
}

std::vector<double> shortest_path_lengths(const AliveView& view, const PointSet& ps,
                                          VertexId source, const std::vector<VertexId>& targets) {
  const std::size_t n = view.vertex_count();
  if (ps.size() != n) throw Error(Errc::SchemeMismatch, "point set does not match graph");
  std::vector<double> dist(n, kInf);
  if (source >= n || !view.alive(source)) return dist;

  std::vector<bool> settled(n, false);
  std::vector<bool> wanted(n, targets.empty());
  std::size_t remaining = targets.empty() ? n : 0;
  for (VertexId t : targets) {
    if (t < n && !wanted[t]) {
      wanted[t] = true;
      ++remaining;
    }
  }

  using Item = std::pair<double, VertexId>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
  dist[source] = 0.0;
  queue.emplace(0.0, source);
  while (!queue.empty() && remaining > 0) {
    const auto [d, v] = queue.top();
    queue.pop();
    if (settled[v]) continue;
    settled[v] = true;
    if (wanted[v]) --remaining;
    const double xv = ps.coords()[v];
    view.for_each_neighbor(v, [&](VertexId w) {
      const double nd = d + std::abs(ps.coords()[w] - xv);
      if (nd < dist[w]) {
        dist[w] = nd;
        queue.emplace(nd, w);
      }
    });
  }
  return dist;
}

DistanceMatrix brute_force_oracle(const SpannerGraph& graph, const PointSet& ps,
                                  const FailureSet& failures) {
  const std::size_t n = graph.vertex_count();
  if (n > kOracleVertexLimit) {
    throw Error(Errc::TooLarge, "oracle limited to " + std::to_string(kOracleVertexLimit) +
                                    " vertices, got " + std::to_string(n));
  }
  const AliveView view(graph, failures);
  DistanceMatrix out(n);
  for (std::size_t s = 0; s < n; ++s) {
    const auto source = static_cast<VertexId>(s);
    if (!view.alive(source)) continue;
    const auto dist = shortest_path_lengths(view, ps, source);
    for (std::size_t t = 0; t < n; ++t) out.at(source, static_cast<VertexId>(t)) = dist[t];
  }
  return out;
}

VerificationReport verify_robust_spanner(const SpannerGraph& graph, const PointSet& ps,
                                         const LayeredScheme& scheme,
                                         const FailureSet& failures,
                                         const VerifyOptions& options) {
  return verify_robust_spanner(graph, ps, scheme, compute_closure(scheme, failures, options.closure),
                               options);
}

VerificationReport verify_robust_spanner(const SpannerGraph& graph, const PointSet& ps,
                                         const LayeredScheme& scheme,
                                         const ClosureTrace& closure,
                                         const VerifyOptions& options) {
  const std::size_t n = graph.vertex_count();
  if (ps.size() != n || scheme.n() != n) {
    throw Error(Errc::SchemeMismatch, "graph, point set and scheme disagree on n");
  }
  const FailureSet& failures = closure.failures();
  const FailureSet& ignored = closure.ignored().members();

  VerificationReport report;
  report.seed = options.seed;
  report.n = n;
  report.ell = scheme.ell();
  report.failed_count = failures.size();
  report.ignored_count = ignored.size();
  report.bound_ok = closure_bound_check(closure);
  report.exhaustive = n <= options.exhaustive_limit;

  std::mt19937_64 rng(options.seed);
  const std::vector<bool> ignored_mask = ignored.mask();
  std::vector<VertexId> kept;       // V \ F*
  std::vector<VertexId> alive;      // V \ F
  std::vector<VertexId> shadowed;   // F* \ F
  for (std::size_t v = 0; v < n; ++v) {
    const auto id = static_cast<VertexId>(v);
    if (!ignored_mask[v]) kept.push_back(id);
    if (!failures.contains(id)) {
      alive.push_back(id);
      if (ignored_mask[v]) shadowed.push_back(id);
    }
  }

  std::vector<Pair> pairs;
  if (report.exhaustive) {
    pairs.reserve(kept.size() * (kept.size() - (kept.empty() ? 0 : 1)) / 2);
    for (std::size_t i = 0; i < kept.size(); ++i) {
      for (std::size_t j = i + 1; j < kept.size(); ++j) pairs.push_back({kept[i], kept[j]});
    }
  } else {
    pairs = sample_pairs(kept, kept, options.sample_pairs, rng);
  }

  const AliveView view(graph, failures);
  const MonotoneReachability reach(view);
  for (const Pair& p : pairs) {
    ++report.pairs_checked;
    if (!reach.exact(p.x, p.y)) {
      report.violations.push_back({p.x, p.y});
      continue;
    }
    ++report.exact_pairs;
    if (!options.classify_cases) continue;
    switch (classify_pair(scheme, p.x, p.y).kind) {
      case PairCase::SameBottomCluster: ++report.cases.same_cluster; break;
      case PairCase::IntersectingClusters: ++report.cases.intersecting; break;
      case PairCase::DisjointClusters: ++report.cases.disjoint; break;
    }
  }

  const std::size_t annotate = std::min(report.violations.size(), options.violation_oracle_limit);
  for (std::size_t i = 0; i < annotate; ++i) {
    Violation& v = report.violations[i];
    v.shortest_found = shortest_path_lengths(view, ps, v.u, {v.v})[v.v];
  }

  // Independent cross-check of the combinatorial criterion.
  const auto oracle_pairs = sample_pairs(kept, kept, options.oracle_samples, rng);
  for (const auto& [source, targets] : group_by_source(oracle_pairs)) {
    const auto dist = shortest_path_lengths(view, ps, source, targets);
    for (VertexId t : targets) {
      ++report.oracle_pairs_checked;
      const bool numeric = lengths_match(dist[t], ps.distance(source, t));
      if (numeric != reach.exact(source, t)) ++report.oracle_mismatches;
    }
  }

  const auto shadow_pairs = sample_pairs(shadowed, alive, options.oracle_samples, rng);
  for (const auto& [source, targets] : group_by_source(shadow_pairs)) {
    const auto dist = shortest_path_lengths(view, ps, source, targets);
    for (VertexId t : targets) {
      ++report.ignored_pairs_sampled;
      const double ratio = dist[t] / ps.distance(source, t);
      if (!std::isfinite(ratio)) ++report.ignored_pairs_unreachable;
      report.max_stretch_over_ignored = std::max(report.max_stretch_over_ignored, ratio);
    }
  }

  if (options.check_stronger_variant) {
    const AliveView strict_view(graph, ignored);
    const MonotoneReachability strict(strict_view);
    report.stronger_variant_holds = std::all_of(
        pairs.begin(), pairs.end(), [&](const Pair& p) { return strict.exact(p.x, p.y); });
  }
  return report;
}

StretchSummary stretch_statistics(const SpannerGraph& graph, const PointSet& ps,
                                  const IgnoredSet& ignored, const StretchOptions& options) {
  const std::size_t n = graph.vertex_count();
  if (ps.size() != n) throw Error(Errc::SchemeMismatch, "point set does not match graph");
  if (options.sample_pairs == 0 && n > kOracleVertexLimit) {
    throw Error(Errc::TooLarge, "exhaustive stretch statistics limited to " +
                                    std::to_string(kOracleVertexLimit) + " vertices");
  }
  const FailureSet& failures = ignored.source_failures();
  const AliveView view(graph, failures);

  std::vector<VertexId> alive;
  for (std::size_t v = 0; v < n; ++v) {
    if (view.alive(static_cast<VertexId>(v))) alive.push_back(static_cast<VertexId>(v));
  }
  std::vector<Pair> pairs;
  if (options.sample_pairs == 0) {
    for (std::size_t i = 0; i < alive.size(); ++i) {
      for (std::size_t j = i + 1; j < alive.size(); ++j) pairs.push_back({alive[i], alive[j]});
    }
  } else {
    std::mt19937_64 rng(options.seed);
    pairs = sample_pairs(alive, alive, options.sample_pairs, rng);
  }

  StretchSummary summary;
  double robust_sum = 0.0;
  double ignored_sum = 0.0;
  std::size_t robust_finite = 0;
  std::size_t ignored_finite = 0;
  for (const auto& [source, targets] : group_by_source(pairs)) {
    const auto dist = shortest_path_lengths(view, ps, source, targets);
    for (VertexId t : targets) {
      const bool robust = !ignored.contains(source) && !ignored.contains(t);
      RatioStats& stats = robust ? summary.robust : summary.ignored;
      ++stats.pairs;
      const double ratio = dist[t] / ps.distance(source, t);
      if (!std::isfinite(ratio)) {
        ++stats.unreachable;
        continue;
      }
      stats.min = std::min(stats.min, ratio);
      stats.max = std::max(stats.max, ratio);
      (robust ? robust_sum : ignored_sum) += ratio;
      ++(robust ? robust_finite : ignored_finite);
    }
  }
  if (robust_finite > 0) summary.robust.mean = robust_sum / static_cast<double>(robust_finite);
  if (ignored_finite > 0) summary.ignored.mean = ignored_sum / static_cast<double>(ignored_finite);
  return summary;
}

}  // namespace robust_spanner
