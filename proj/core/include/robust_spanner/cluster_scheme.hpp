#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "robust_spanner/point_set.hpp"

namespace robust_spanner {

// Half-open interval [lo, hi) of point indices.
struct IndexSpan {
  std::size_t lo = 0;
  std::size_t hi = 0;

  std::size_t size() const noexcept { return hi - lo; }
  bool contains(std::size_t v) const noexcept { return lo <= v && v < hi; }
  bool contains(const IndexSpan& o) const noexcept { return lo <= o.lo && o.hi <= hi; }
  bool intersects(const IndexSpan& o) const noexcept { return lo < o.hi && o.lo < hi; }

  friend bool operator==(const IndexSpan&, const IndexSpan&) = default;
};

struct ClusterRef {
  int layer = 0;             // 1..ell
  std::size_t ordinal = 0;   // j >= 1, left to right
  IndexSpan span;

  friend bool operator==(const ClusterRef&, const ClusterRef&) = default;
};

enum class Side { Left, Right };

// A half-cluster. Each distinct half interval of a layer is reported once:
// half k (zero-based) is the Left half of cluster k+1, except the last half,
// which is the Right half of the final cluster.
struct HalfClusterRef {
  int layer = 0;
  std::size_t ordinal = 0;
  Side side = Side::Left;
  IndexSpan span;

  friend bool operator==(const HalfClusterRef&, const HalfClusterRef&) = default;
};

// Cluster layout of the layered construction over n points.
//
// Layer i (1 <= i <= ell) is cut into half-clusters of (2m)^i / 2 consecutive
// points; only the last half of a layer may be shorter. Cluster j of layer i is
// the union of halves j and j+1, so consecutive clusters overlap by one half.
// On n = (2m)^{ell+1} this is exactly the regular layout; otherwise the grid
// keeps going past the perfect-power prefix and ends in a single cluster whose
// right half is short.
//
// When n < 4^{ell+1} no m >= 2 exists and the scheme is in complete-graph mode:
// it has no clusters and the builder emits a clique on all points.
class LayeredScheme {
 public:
  static LayeredScheme build(std::size_t n, int ell);

  std::size_t n() const noexcept { return n_; }
  int ell() const noexcept { return ell_; }
  // 0 in complete-graph mode.
  std::size_t m() const noexcept { return m_; }
  // (2m)^{ell+1}; 0 in complete-graph mode.
  std::size_t base_count() const noexcept { return base_count_; }
  bool complete_graph() const noexcept { return complete_; }

  // (2m)^layer and (2m)^layer / 2.
  std::size_t regular_cluster_size(int layer) const;
  std::size_t regular_half_size(int layer) const;

  std::size_t half_count(int layer) const;
  std::size_t cluster_count(int layer) const;

  // Zero-based position of v in the layer's half-cluster list.
  std::size_t half_index_of(int layer, VertexId v) const;
  IndexSpan half_span(int layer, std::size_t half_index) const;
  HalfClusterRef half_at(int layer, std::size_t half_index) const;
  ClusterRef cluster(int layer, std::size_t ordinal) const;

  std::vector<ClusterRef> clusters_of_layer(int layer) const;
  std::vector<HalfClusterRef> half_clusters_of_layer(int layer) const;

  // Every cluster of `layer` whose span contains `span` (at most two for a
  // half-cluster of the same or a lower layer).
  std::vector<ClusterRef> clusters_containing(int layer, const IndexSpan& span) const;

  // Layer-(i) clusters containing a layer-(i-1) half-cluster; 2 <= i <= ell.
  std::vector<ClusterRef> parent_clusters(const HalfClusterRef& half) const;

 private:
  void check_layer(int layer) const;

  std::size_t n_ = 0;
  int ell_ = 1;
  std::size_t m_ = 0;
  std::size_t base_count_ = 0;
  bool complete_ = true;
  std::vector<std::size_t> half_size_;  // index layer-1
};

inline LayeredScheme build_scheme(std::size_t n, int ell) { return LayeredScheme::build(n, ell); }

// Smallest ell >= 1 with ell >= (1 - epsilon) / epsilon. Throws
// Error(InvalidEpsilon) unless 0 < epsilon <= 1.
int choose_ell_for_epsilon(double epsilon);

// base^exp, or nullopt on overflow of std::size_t.
std::optional<std::size_t> checked_pow(std::size_t base, int exp);

}  // namespace robust_spanner
