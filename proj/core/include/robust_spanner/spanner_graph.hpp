#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "robust_spanner/cluster_scheme.hpp"
#include "robust_spanner/point_set.hpp"

namespace robust_spanner {

// Undirected edge, always stored with u < v.
struct Edge {
  VertexId u = 0;
  VertexId v = 0;

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

enum class EdgeOrigin : std::uint8_t {
  BottomClique,   // inside a layer-1 cluster
  LayerMatching,  // between lower-layer halves sharing a parent cluster
  TopMatching,    // between two top-layer halves
  CompleteGraph,  // complete-graph mode
};

struct EdgeTag {
  EdgeOrigin origin = EdgeOrigin::BottomClique;
  int layer = 0;

  friend bool operator==(const EdgeTag&, const EdgeTag&) = default;
};

// Simple undirected graph on [0, n) in CSR form. Edge weights are never
// stored; the weight of (u, v) is ps.distance(u, v).
class SpannerGraph {
 public:
  SpannerGraph() = default;

  // Deduplicates. Throws Error(IndexOutOfRange) or Error(InvalidArgument) on a
  // self-loop. Tags, when given, must be parallel to `edges`; the first tag of
  // a duplicated edge wins.
  static SpannerGraph from_edges(std::size_t n, std::vector<Edge> edges,
                                 std::vector<EdgeTag> tags = {});

  std::size_t vertex_count() const noexcept { return n_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  std::span<const Edge> edges() const noexcept { return edges_; }
  std::span<const VertexId> neighbors(VertexId v) const;
  std::size_t degree(VertexId v) const { return neighbors(v).size(); }
  bool has_edge(VertexId a, VertexId b) const;

  bool has_provenance() const noexcept { return !tags_.empty(); }
  // Tag of edges()[i]; requires has_provenance().
  const EdgeTag& tag(std::size_t edge_index) const { return tags_.at(edge_index); }
  std::optional<EdgeTag> tag_of(VertexId a, VertexId b) const;

  // Copy without the given edge (used to build negative controls).
  SpannerGraph without_edge(VertexId a, VertexId b) const;

 private:
  std::size_t n_ = 0;
  std::vector<Edge> edges_;  // sorted, unique
  std::vector<EdgeTag> tags_;
  std::vector<std::size_t> offsets_;
  std::vector<VertexId> adjacency_;
};

struct BuildOptions {
  bool record_provenance = false;
};

// Edge set of the layered robust 1-spanner: cliques in layer-1 clusters,
// matchings between every pair of layer-(i-1) halves inside a layer-i
// cluster (2 <= i <= ell), and matchings between all pairs of layer-ell
// halves. Throws Error(SchemeMismatch) if the scheme was built for another n.
SpannerGraph build_spanner(const PointSet& ps, const LayeredScheme& scheme,
                           const BuildOptions& options = {});
// Index-only variant; the construction never looks at coordinates.
SpannerGraph build_spanner(const LayeredScheme& scheme, const BuildOptions& options = {});

// Rank-aligned matching: k-th smallest of a with k-th smallest of b, for
// k < min(|a|, |b|). Throws Error(OverlappingHalves) if the spans intersect.
std::vector<Edge> match_halves(const HalfClusterRef& a, const HalfClusterRef& b);

// ell * n^{(ell+2)/(ell+1)}: the growth term of the edge-count bound.
double edge_count_bound(std::size_t n, int ell);

// Edge list text: "u v" per line; '#' comment lines and blank lines skipped.
void write_edge_list(std::ostream& out, const SpannerGraph& graph);
SpannerGraph read_edge_list(std::istream& in, std::size_t n);

}  // namespace robust_spanner
