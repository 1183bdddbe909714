#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "robust_spanner/cluster_scheme.hpp"
#include "robust_spanner/failure_closure.hpp"
#include "robust_spanner/point_set.hpp"
#include "robust_spanner/spanner_graph.hpp"

namespace robust_spanner {

// The subgraph induced by V \ removed. Does not own the graph.
class AliveView {
 public:
  AliveView(const SpannerGraph& graph, const FailureSet& removed);

  const SpannerGraph& graph() const noexcept { return *graph_; }
  const FailureSet& removed() const noexcept { return removed_; }
  std::size_t vertex_count() const noexcept { return graph_->vertex_count(); }
  bool alive(VertexId v) const { return !removed_mask_.at(v); }

  template <class Fn>
  void for_each_neighbor(VertexId v, Fn&& fn) const {
    for (VertexId w : graph_->neighbors(v)) {
      if (!removed_mask_[w]) fn(w);
    }
  }

 private:
  const SpannerGraph* graph_;
  FailureSet removed_;
  std::vector<bool> removed_mask_;
};

// In 1-D a path has length |x - y| exactly when its vertex indices are
// strictly monotone, so exactness of d_G'(x, y) is decided combinatorially.

// Alive vertices reachable from x by index-monotone paths in either direction,
// sorted, including x. Throws Error(VertexRemoved) if x is not alive.
std::vector<VertexId> exact_reach_from(const AliveView& view, const PointSet& ps, VertexId x);

// All-sources forward monotone reachability as one bitset row per vertex.
class MonotoneReachability {
 public:
  explicit MonotoneReachability(const AliveView& view);

  // True iff an alive index-monotone path joins a and b (order irrelevant).
  bool exact(VertexId a, VertexId b) const;

 private:
  bool bit(VertexId row, VertexId col) const {
    return (rows_[row * words_ + col / 64] >> (col % 64)) & 1U;
  }

  std::size_t n_ = 0;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> rows_;
  std::vector<bool> alive_;
};

enum class PairCase {
  SameBottomCluster,     // joined by a direct edge
  IntersectingClusters,  // halves p and p+2 of the deciding layer
  DisjointClusters,      // halves p and q >= p+3 of the deciding layer
};

struct PairClassification {
  PairCase kind = PairCase::SameBottomCluster;
  // Layer whose halves hold x and y when the smallest cluster containing both
  // lives one layer up (ell for pairs only the top matchings can join).
  int layer = 1;
};

// Relation of the smallest cluster containing x < y to the layer below.
PairClassification classify_pair(const LayeredScheme& scheme, VertexId x, VertexId y);

inline constexpr std::size_t kOracleVertexLimit = 512;
inline constexpr double kOracleRelativeTolerance = 1e-12;

// |path_length - distance| <= 1e-12 * distance.
bool lengths_match(double path_length, double distance);

// Label-setting single-source shortest path lengths over the alive subgraph
// with Euclidean weights; +inf for unreachable or removed vertices. Stops
// early once every vertex in `targets` is settled (all vertices if empty).
std::vector<double> shortest_path_lengths(const AliveView& view, const PointSet& ps,
                                          VertexId source,
                                          const std::vector<VertexId>& targets = {});

class DistanceMatrix {
 public:
  explicit DistanceMatrix(std::size_t n)
      : n_(n), d_(n * n, std::numeric_limits<double>::infinity()) {}

  std::size_t size() const noexcept { return n_; }
  double at(VertexId a, VertexId b) const { return d_[a * n_ + b]; }
  double& at(VertexId a, VertexId b) { return d_[a * n_ + b]; }

 private:
  std::size_t n_;
  std::vector<double> d_;
};

// All-pairs shortest paths on G - F. Throws Error(TooLarge) for n > 512.
DistanceMatrix brute_force_oracle(const SpannerGraph& graph, const PointSet& ps,
                                  const FailureSet& failures);

struct Violation {
  VertexId u = 0;
  VertexId v = 0;
  // Oracle shortest path length; +inf when unreachable, NaN when not computed.
  double shortest_found = std::numeric_limits<double>::quiet_NaN();
};

struct CaseCounts {
  std::size_t same_cluster = 0;
  std::size_t intersecting = 0;
  std::size_t disjoint = 0;
};

struct VerificationReport {
  std::uint64_t seed = 0;
  bool exhaustive = true;
  std::size_t n = 0;
  int ell = 0;
  std::size_t failed_count = 0;
  std::size_t ignored_count = 0;

  std::size_t pairs_checked = 0;
  std::size_t exact_pairs = 0;
  std::vector<Violation> violations;
  bool bound_ok = true;

  std::size_t oracle_pairs_checked = 0;
  std::size_t oracle_mismatches = 0;

  // Informational, over sampled pairs with an endpoint in F* \ F.
  std::size_t ignored_pairs_sampled = 0;
  std::size_t ignored_pairs_unreachable = 0;
  double max_stretch_over_ignored = 1.0;

  // Over checked V \ F* pairs whose exactness was confirmed.
  CaseCounts cases;

  // Whether G - F* is itself exact on V \ F* (recorded, never required).
  std::optional<bool> stronger_variant_holds;

  bool passed() const { return violations.empty() && bound_ok && oracle_mismatches == 0; }
};

struct VerifyOptions {
  std::size_t exhaustive_limit = 512;
  std::size_t sample_pairs = 20000;
  std::size_t oracle_samples = 500;
  std::uint64_t seed = 0x5eed;
  bool classify_cases = true;
  bool check_stronger_variant = true;
  // Oracle lengths are attached to at most this many violations.
  std::size_t violation_oracle_limit = 64;
  ClosureOptions closure;
};

// Computes F* from F and checks that every pair of V \ F* is joined in G - F
// by a path of length exactly their distance.
VerificationReport verify_robust_spanner(const SpannerGraph& graph, const PointSet& ps,
                                         const LayeredScheme& scheme,
                                         const FailureSet& failures,
                                         const VerifyOptions& options = {});
// Same, with a precomputed closure.
VerificationReport verify_robust_spanner(const SpannerGraph& graph, const PointSet& ps,
                                         const LayeredScheme& scheme,
                                         const ClosureTrace& closure,
                                         const VerifyOptions& options = {});

struct RatioStats {
  std::size_t pairs = 0;
  std::size_t unreachable = 0;
  double min = std::numeric_limits<double>::infinity();
  double max = 0.0;  // finite ratios only
  double mean = 0.0;
};

struct StretchSummary {
  RatioStats robust;   // both endpoints in V \ F*
  RatioStats ignored;  // at least one endpoint in F* \ F
};

struct StretchOptions {
  // 0 means all alive pairs (requires n <= 512).
  std::size_t sample_pairs = 0;
  std::uint64_t seed = 0x5eed;
};

// Distribution of d_G'(x, y) / d(x, y) over alive pairs of G - F.
StretchSummary stretch_statistics(const SpannerGraph& graph, const PointSet& ps,
                                  const IgnoredSet& ignored, const StretchOptions& options = {});

}  // namespace robust_spanner
