#include <algorithm>
#include <map>
#include <sstream>

#include "doctest.h"
#include "robust_spanner/error.hpp"
#include "robust_spanner/spanner_graph.hpp"
#include "support/simple_construction.hpp"

using namespace robust_spanner;

namespace {

simple_construction::EdgeSet edge_set(const SpannerGraph& g) {
  simple_construction::EdgeSet out;
  for (const Edge& e : g.edges()) out.emplace(e.u, e.v);
  return out;
}

HalfClusterRef half(std::size_t lo, std::size_t hi) { return {1, 1, Side::Left, {lo, hi}}; }

}  // namespace

TEST_CASE("n=16, ell=1 golden edge count") {
  const auto s = build_scheme(16, 1);
  const auto g = build_spanner(s);
  // 36 clique edges plus 42 matching edges between non-adjacent halves,
  // counted by brute-force enumeration of the rules.
  CHECK(g.edge_count() == 78);
  CHECK(edge_set(g) == simple_construction::build(16));
}

TEST_CASE("complete-graph mode") {
  for (int ell = 1; ell <= 4; ++ell) {
    const auto g = build_spanner(build_scheme(4, ell));
    CHECK(g.edge_count() == 6);
  }
  CHECK(build_spanner(build_scheme(15, 1)).edge_count() == 105);
}

TEST_CASE("match_halves") {
  auto as_pairs = [](const std::vector<Edge>& es) {
    std::vector<std::pair<VertexId, VertexId>> out;
    for (const Edge& e : es) out.emplace_back(e.u, e.v);
    return out;
  };
  using P = std::vector<std::pair<VertexId, VertexId>>;
  CHECK(as_pairs(match_halves(half(0, 2), half(6, 8))) == P{{0, 6}, {1, 7}});
  CHECK(as_pairs(match_halves(half(2, 4), half(4, 6))) == P{{2, 4}, {3, 5}});
  CHECK(as_pairs(match_halves(half(16, 18), half(18, 19))) == P{{16, 18}});
  CHECK(as_pairs(match_halves(half(18, 19), half(16, 18))) == P{{16, 18}});
  try {
    match_halves(half(0, 3), half(2, 5));
    FAIL("expected OverlappingHalves");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::OverlappingHalves);
  }
}

TEST_CASE("edge_count_bound") {
  CHECK(edge_count_bound(16, 1) == doctest::Approx(64.0).epsilon(1e-12));
  CHECK(edge_count_bound(64, 2) == doctest::Approx(512.0).epsilon(1e-12));
  CHECK(edge_count_bound(1024, 1) == doctest::Approx(32768.0).epsilon(1e-12));
}

TEST_CASE("scheme mismatch") {
  const PointSet ps = make_point_set({0, 1, 2, 3, 4});
  try {
    build_spanner(ps, build_scheme(16, 1));
    FAIL("expected SchemeMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::SchemeMismatch);
  }
}

TEST_CASE("single-layer builder matches the reference construction") {
  for (std::size_t n = 1; n <= 400; n += (n < 120 ? 1 : 7)) {
    CAPTURE(n);
    CHECK(edge_set(build_spanner(build_scheme(n, 1))) == simple_construction::build(n));
  }
}

TEST_CASE("graph structure invariants") {
  for (int ell = 1; ell <= 3; ++ell) {
    for (std::size_t n : {16u, 20u, 64u, 100u, 216u, 256u, 300u}) {
      CAPTURE(n);
      CAPTURE(ell);
      const auto s = build_scheme(n, ell);
      const auto g = build_spanner(s, {.record_provenance = true});
      REQUIRE(g.has_provenance());

      std::size_t degree_sum = 0;
      for (VertexId v = 0; v < n; ++v) {
        const auto nb = g.neighbors(v);
        degree_sum += nb.size();
        CHECK(std::is_sorted(nb.begin(), nb.end()));
        CHECK(std::adjacent_find(nb.begin(), nb.end()) == nb.end());
        CHECK(std::find(nb.begin(), nb.end(), v) == nb.end());
      }
      CHECK(degree_sum == 2 * g.edge_count());

      if (s.complete_graph()) continue;

      // Every layer-1 cluster is a clique.
      for (const auto& c : s.clusters_of_layer(1)) {
        for (std::size_t a = c.span.lo; a < c.span.hi; ++a)
          for (std::size_t b = a + 1; b < c.span.hi; ++b)
            CHECK(g.has_edge(static_cast<VertexId>(a), static_cast<VertexId>(b)));
      }

      // Every edge lies inside the cluster that justifies it.
      for (std::size_t i = 0; i < g.edge_count(); ++i) {
        const Edge e = g.edges()[i];
        const EdgeTag tag = g.tag(i);
        const IndexSpan pair{e.u, std::size_t{e.v} + 1};
        switch (tag.origin) {
          case EdgeOrigin::BottomClique:
            CHECK_FALSE(s.clusters_containing(1, pair).empty());
            break;
          case EdgeOrigin::LayerMatching:
            CHECK(tag.layer >= 2);
            CHECK_FALSE(s.clusters_containing(tag.layer, pair).empty());
            break;
          case EdgeOrigin::TopMatching:
            CHECK(tag.layer == ell);
            break;
          case EdgeOrigin::CompleteGraph:
            FAIL("unexpected complete-graph edge");
        }
      }

      // Full matched halves pair every vertex with exactly one partner.
      for (int layer = 2; layer <= ell; ++layer) {
        const auto lower = s.half_clusters_of_layer(layer - 1);
        const std::size_t h = s.regular_half_size(layer - 1);
        for (const auto& c : s.clusters_of_layer(layer)) {
          std::vector<HalfClusterRef> inside;
          for (const auto& hc : lower)
            if (c.span.contains(hc.span) && hc.span.size() == h) inside.push_back(hc);
          for (std::size_t p = 0; p < inside.size(); ++p)
            for (std::size_t q = p + 1; q < inside.size(); ++q)
              for (std::size_t k = 0; k < h; ++k)
                CHECK(g.has_edge(static_cast<VertexId>(inside[p].span.lo + k),
                                 static_cast<VertexId>(inside[q].span.lo + k)));
        }
      }
      const auto top = s.half_clusters_of_layer(ell);
      for (std::size_t p = 0; p < top.size(); ++p)
        for (std::size_t q = p + 1; q < top.size(); ++q)
          for (std::size_t k = 0; k < std::min(top[p].span.size(), top[q].span.size()); ++k)
            CHECK(g.has_edge(static_cast<VertexId>(top[p].span.lo + k),
                             static_cast<VertexId>(top[q].span.lo + k)));
    }
  }
}

TEST_CASE("from_edges deduplicates and rejects bad edges") {
  const auto g = SpannerGraph::from_edges(4, {{0, 1}, {1, 0}, {2, 3}, {0, 1}});
  CHECK(g.edge_count() == 2);
  CHECK(g.has_edge(1, 0));
  CHECK_FALSE(g.has_edge(0, 2));
  CHECK_THROWS_AS(SpannerGraph::from_edges(4, {{1, 1}}), Error);
  CHECK_THROWS_AS(SpannerGraph::from_edges(4, {{1, 4}}), Error);
  CHECK(g.without_edge(1, 0).edge_count() == 1);
}

TEST_CASE("edge list round trip") {
  const auto g = build_spanner(build_scheme(20, 1));
  std::stringstream io;
  write_edge_list(io, g);
  const auto back = read_edge_list(io, 20);
  CHECK(edge_set(back) == edge_set(g));

  std::istringstream bad("0 1\n2 x\n");
  CHECK_THROWS_AS(read_edge_list(bad, 20), Error);
  std::istringstream out_of_range("0 25\n");
  CHECK_THROWS_AS(read_edge_list(out_of_range, 20), Error);
}
