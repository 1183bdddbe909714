#include "robust_spanner/spanner_graph.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string>

#include "robust_spanner/error.hpp"

namespace robust_spanner {

namespace {

constexpr std::size_t kCompleteGraphLimit = 4096;

class EdgeSink {
 public:
  explicit EdgeSink(bool tagged) : tagged_(tagged) {}

  void add(VertexId a, VertexId b, EdgeTag tag) {
    edges_.push_back(a < b ? Edge{a, b} : Edge{b, a});
    if (tagged_) tags_.push_back(tag);
  }

  void add_clique(const IndexSpan& span, EdgeTag tag) {
    for (std::size_t a = span.lo; a < span.hi; ++a) {
      for (std::size_t b = a + 1; b < span.hi; ++b) {
        add(static_cast<VertexId>(a), static_cast<VertexId>(b), tag);
      }
    }
  }

  void add_matching(const HalfClusterRef& a, const HalfClusterRef& b, EdgeTag tag) {
    for (const Edge& e : match_halves(a, b)) add(e.u, e.v, tag);
  }

  SpannerGraph finish(std::size_t n) && {
    return SpannerGraph::from_edges(n, std::move(edges_), std::move(tags_));
  }

 private:
  bool tagged_;
  std::vector<Edge> edges_;
  std::vector<EdgeTag> tags_;
};

}  // namespace

SpannerGraph SpannerGraph::from_edges(std::size_t n, std::vector<Edge> edges,
                                      std::vector<EdgeTag> tags) {
  if (!tags.empty() && tags.size() != edges.size()) {
    throw Error(Errc::InvalidArgument, "edge tags must be parallel to edges");
  }
  for (Edge& e : edges) {
    if (e.u == e.v) throw Error(Errc::InvalidArgument, "self-loop at " + std::to_string(e.u));
    if (e.u > e.v) std::swap(e.u, e.v);
    if (e.v >= n) {
      throw Error(Errc::IndexOutOfRange, "edge endpoint " + std::to_string(e.v) + " >= n");
    }
  }

  SpannerGraph g;
  g.n_ = n;
  if (tags.empty()) {
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    g.edges_ = std::move(edges);
  } else {
    std::vector<std::size_t> order(edges.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return edges[a] < edges[b]; });
    for (std::size_t i : order) {
      if (!g.edges_.empty() && g.edges_.back() == edges[i]) continue;
      g.edges_.push_back(edges[i]);
      g.tags_.push_back(tags[i]);
    }
  }

  std::vector<std::size_t> degree(n, 0);
  for (const Edge& e : g.edges_) {
    ++degree[e.u];
    ++degree[e.v];
  }
  g.offsets_.assign(n + 1, 0);
  for (std::size_t v = 0; v < n; ++v) g.offsets_[v + 1] = g.offsets_[v] + degree[v];
  g.adjacency_.resize(g.offsets_[n]);
  std::vector<std::size_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
  for (const Edge& e : g.edges_) {
    g.adjacency_[cursor[e.u]++] = e.v;
    g.adjacency_[cursor[e.v]++] = e.u;
  }
  for (std::size_t v = 0; v < n; ++v) {
    std::sort(g.adjacency_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v]),
              g.adjacency_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v + 1]));
  }
  return g;
}

std::span<const VertexId> SpannerGraph::neighbors(VertexId v) const {
  if (v >= n_) throw Error(Errc::IndexOutOfRange, "vertex " + std::to_string(v) + " >= n");
  return std::span<const VertexId>(adjacency_).subspan(offsets_[v], offsets_[v + 1] - offsets_[v]);
}

bool SpannerGraph::has_edge(VertexId a, VertexId b) const {
  if (a == b || a >= n_ || b >= n_) return false;
  const auto nb = neighbors(a);
  return std::binary_search(nb.begin(), nb.end(), b);
}

std::optional<EdgeTag> SpannerGraph::tag_of(VertexId a, VertexId b) const {
  if (tags_.empty()) return std::nullopt;
  const Edge key = a < b ? Edge{a, b} : Edge{b, a};
  const auto it = std::lower_bound(edges_.begin(), edges_.end(), key);
  if (it == edges_.end() || *it != key) return std::nullopt;
  return tags_[static_cast<std::size_t>(it - edges_.begin())];
}

SpannerGraph SpannerGraph::without_edge(VertexId a, VertexId b) const {
  const Edge key = a < b ? Edge{a, b} : Edge{b, a};
  std::vector<Edge> kept;
  std::vector<EdgeTag> kept_tags;
  kept.reserve(edges_.size());
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    if (edges_[i] == key) continue;
    kept.push_back(edges_[i]);
    if (!tags_.empty()) kept_tags.push_back(tags_[i]);
  }
  return from_edges(n_, std::move(kept), std::move(kept_tags));
}

std::vector<Edge> match_halves(const HalfClusterRef& a, const HalfClusterRef& b) {
  if (a.span.intersects(b.span)) {
    throw Error(Errc::OverlappingHalves,
                "half-clusters [" + std::to_string(a.span.lo) + "," + std::to_string(a.span.hi) +
                    ") and [" + std::to_string(b.span.lo) + "," + std::to_string(b.span.hi) +
                    ") intersect");
  }
  const std::size_t count = std::min(a.span.size(), b.span.size());
  std::vector<Edge> out;
  out.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    const auto u = static_cast<VertexId>(a.span.lo + k);
    const auto v = static_cast<VertexId>(b.span.lo + k);
    out.push_back(u < v ? Edge{u, v} : Edge{v, u});
  }
  return out;
}

SpannerGraph build_spanner(const LayeredScheme& scheme, const BuildOptions& options) {
  const std::size_t n = scheme.n();
  EdgeSink sink(options.record_provenance);

  if (scheme.complete_graph()) {
    if (n > kCompleteGraphLimit) {
      throw Error(Errc::TooLarge, "complete-graph mode for n = " + std::to_string(n));
    }
    sink.add_clique({0, n}, {EdgeOrigin::CompleteGraph, 0});
    return std::move(sink).finish(n);
  }

  for (const ClusterRef& c : scheme.clusters_of_layer(1)) {
    sink.add_clique(c.span, {EdgeOrigin::BottomClique, 1});
  }

  for (int layer = 2; layer <= scheme.ell(); ++layer) {
    const auto lower = scheme.half_clusters_of_layer(layer - 1);
    const std::size_t h = scheme.regular_half_size(layer - 1);
    for (const ClusterRef& c : scheme.clusters_of_layer(layer)) {
      // Layer-(i) spans are unions of whole layer-(i-1) halves.
      const std::size_t first = c.span.lo / h;
      std::size_t last = first;
      while (last < lower.size() && lower[last].span.hi <= c.span.hi) ++last;
      for (std::size_t p = first; p < last; ++p) {
        for (std::size_t q = p + 1; q < last; ++q) {
          sink.add_matching(lower[p], lower[q], {EdgeOrigin::LayerMatching, layer});
        }
      }
    }
  }

  const int top = scheme.ell();
  const auto halves = scheme.half_clusters_of_layer(top);
  for (std::size_t p = 0; p < halves.size(); ++p) {
    for (std::size_t q = p + 1; q < halves.size(); ++q) {
      sink.add_matching(halves[p], halves[q], {EdgeOrigin::TopMatching, top});
    }
  }
  return std::move(sink).finish(n);
}

SpannerGraph build_spanner(const PointSet& ps, const LayeredScheme& scheme,
                           const BuildOptions& options) {
  if (ps.size() != scheme.n()) {
    throw Error(Errc::SchemeMismatch, "scheme built for n = " + std::to_string(scheme.n()) +
                                          ", point set has " + std::to_string(ps.size()));
  }
  return build_spanner(scheme, options);
}

double edge_count_bound(std::size_t n, int ell) {
  const double e = static_cast<double>(ell);
  return e * std::pow(static_cast<double>(n), (e + 2.0) / (e + 1.0));
}

void write_edge_list(std::ostream& out, const SpannerGraph& graph) {
  out << "# n " << graph.vertex_count() << " edges " << graph.edge_count() << '\n';
  for (const Edge& e : graph.edges()) out << e.u << ' ' << e.v << '\n';
}

SpannerGraph read_edge_list(std::istream& in, std::size_t n) {
  std::vector<Edge> edges;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream fields(line);
    long long u = -1;
    long long v = -1;
    std::string rest;
    if (!(fields >> u >> v) || (fields >> rest) || u < 0 || v < 0) {
      throw Error(Errc::ParseError, "edge list line " + std::to_string(line_no));
    }
    edges.push_back({static_cast<VertexId>(u), static_cast<VertexId>(v)});
    if (static_cast<unsigned long long>(u) >= n || static_cast<unsigned long long>(v) >= n) {
      throw Error(Errc::IndexOutOfRange, "edge list line " + std::to_string(line_no));
    }
  }
  return SpannerGraph::from_edges(n, std::move(edges));
}

}  // namespace robust_spanner
