#pragma once

#include <string>
#include <string_view>

#include "robust_spanner/cluster_scheme.hpp"
#include "robust_spanner/failure_closure.hpp"
#include "robust_spanner/spanner_graph.hpp"
#include "robust_spanner/verifier.hpp"

namespace robust_spanner {

// {"n", "ell", "m", "base_count", "complete_graph",
//  "layers": [{"layer", "clusters": [{"ordinal", "lo", "hi"}]}]}
std::string scheme_to_json(const LayeredScheme& scheme);

// {"n", "edges": [[u, v], ...]}
std::string graph_to_json(const SpannerGraph& graph);
SpannerGraph graph_from_json(std::string_view text);

// {"f0_size", "layers": [{"layer", "added_clusters": [{"ordinal", "lo", "hi"}], "f_size"}],
//  "f_star": [...]}
std::string trace_to_json(const ClosureTrace& trace);

std::string report_to_json(const VerificationReport& report);

}  // namespace robust_spanner
