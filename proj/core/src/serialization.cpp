#include "robust_spanner/serialization.hpp"

#include <algorithm>
#include <cmath>

#include <nlohmann/json.hpp>

#include "robust_spanner/error.hpp"

namespace robust_spanner {

namespace {

using nlohmann::json;

json cluster_json(const ClusterRef& c) {
  return {{"ordinal", c.ordinal}, {"lo", c.span.lo}, {"hi", c.span.hi}};
}

// JSON has no infinity; unreachable lengths are written as the string "inf".
json real_json(double value) {
  if (std::isnan(value)) return nullptr;
  if (std::isinf(value)) return "inf";
  return value;
}

const char* case_name(PairCase c) {
  switch (c) {
    case PairCase::SameBottomCluster: return "same_cluster";
    case PairCase::IntersectingClusters: return "intersecting";
    case PairCase::DisjointClusters: return "disjoint";
  }
  return "unknown";
}

}  // namespace

std::string scheme_to_json(const LayeredScheme& scheme) {
  json layers = json::array();
  for (int layer = 1; layer <= scheme.ell() && !scheme.complete_graph(); ++layer) {
    json clusters = json::array();
    for (const ClusterRef& c : scheme.clusters_of_layer(layer)) clusters.push_back(cluster_json(c));
    layers.push_back({{"layer", layer},
                      {"half_size", scheme.regular_half_size(layer)},
                      {"clusters", std::move(clusters)}});
  }
  json out = {{"n", scheme.n()},
              {"ell", scheme.ell()},
              {"m", scheme.m()},
              {"base_count", scheme.base_count()},
              {"complete_graph", scheme.complete_graph()},
              {"layers", std::move(layers)}};
  return out.dump(2);
}

std::string graph_to_json(const SpannerGraph& graph) {
  json edges = json::array();
  for (const Edge& e : graph.edges()) edges.push_back({e.u, e.v});
  return json{{"n", graph.vertex_count()}, {"edges", std::move(edges)}}.dump();
}

SpannerGraph graph_from_json(std::string_view text) {
  try {
    const json doc = json::parse(text);
    const auto n = doc.at("n").get<std::size_t>();
    std::vector<Edge> edges;
    for (const json& e : doc.at("edges")) {
      if (!e.is_array() || e.size() != 2) throw Error(Errc::ParseError, "edge must be [u, v]");
      edges.push_back({e[0].get<VertexId>(), e[1].get<VertexId>()});
    }
    return SpannerGraph::from_edges(n, std::move(edges));
  } catch (const json::exception& ex) {
    throw Error(Errc::ParseError, ex.what());
  }
}

std::string trace_to_json(const ClosureTrace& trace) {
  json layers = json::array();
  for (int layer = 1; layer <= trace.layers(); ++layer) {
    json added = json::array();
    for (const ClosureTrigger& t : trace.triggered) {
      if (t.layer != layer) continue;
      for (const ClusterRef& c : t.added) {
        const json cj = cluster_json(c);
        if (std::find(added.begin(), added.end(), cj) == added.end()) added.push_back(cj);
      }
    }
    layers.push_back({{"layer", layer},
                      {"added_clusters", std::move(added)},
                      {"f_size", trace.per_layer[static_cast<std::size_t>(layer)].size()}});
  }
  const auto members = trace.ignored().members().members();
  json out = {{"f0_size", trace.failures().size()},
              {"layers", std::move(layers)},
              {"f_star", std::vector<VertexId>(members.begin(), members.end())}};
  return out.dump();
}

std::string report_to_json(const VerificationReport& r) {
  json violations = json::array();
  for (const Violation& v : r.violations) {
    violations.push_back({{"u", v.u}, {"v", v.v}, {"shortest_found", real_json(v.shortest_found)}});
  }
  json out = {
      {"verdict", r.passed() ? "PASS" : "FAIL"},
      {"seed", r.seed},
      {"exhaustive", r.exhaustive},
      {"n", r.n},
      {"ell", r.ell},
      {"failed_count", r.failed_count},
      {"ignored_count", r.ignored_count},
      {"pairs_checked", r.pairs_checked},
      {"exact_pairs", r.exact_pairs},
      {"violation_count", r.violations.size()},
      {"violations", std::move(violations)},
      {"bound_ok", r.bound_ok},
      {"oracle_pairs_checked", r.oracle_pairs_checked},
      {"oracle_mismatches", r.oracle_mismatches},
      {"ignored_pairs_sampled", r.ignored_pairs_sampled},
      {"ignored_pairs_unreachable", r.ignored_pairs_unreachable},
      {"max_stretch_over_ignored", real_json(r.max_stretch_over_ignored)},
      {"cases",
       {{case_name(PairCase::SameBottomCluster), r.cases.same_cluster},
        {case_name(PairCase::IntersectingClusters), r.cases.intersecting},
        {case_name(PairCase::DisjointClusters), r.cases.disjoint}}},
  };
  if (r.stronger_variant_holds) out["stronger_variant_holds"] = *r.stronger_variant_holds;
  return out.dump(2);
}

}  // namespace robust_spanner
