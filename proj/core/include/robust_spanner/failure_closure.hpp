#pragma once

#include <cstddef>
#include <vector>

#include "robust_spanner/cluster_scheme.hpp"
#include "robust_spanner/point_set.hpp"

namespace robust_spanner {

struct ClosureTrigger {
  int layer = 0;
  HalfClusterRef half;
  std::size_t failed_in_half = 0;  // |h ∩ F_{layer-1}|
  std::vector<ClusterRef> added;
};

// F_0 = F, F_1, ..., F_ell = F*.
struct ClosureTrace {
  std::vector<IgnoredSet> per_layer;
  std::vector<ClosureTrigger> triggered;

  const FailureSet& failures() const { return per_layer.front().source_failures(); }
  const IgnoredSet& ignored() const { return per_layer.back(); }
  int layers() const { return static_cast<int>(per_layer.size()) - 1; }
};

struct ClosureOptions {
  // Added to every trigger threshold. Nonzero values exist only to build
  // negative controls for the verifier.
  long threshold_offset = 0;
};

// Failures in `half` (counted against F_{layer-1}) needed to trigger it:
// ceil(|h| / 2) for full halves. The short last half of a layer uses the
// threshold of a full half of that layer, which keeps |F_i| <= 6 |F_{i-1}|.
std::size_t trigger_threshold(const LayeredScheme& scheme, const HalfClusterRef& half,
                              const ClosureOptions& options = {});

// Layer by layer, bottom to top: every half-cluster h of layer i with
// |h ∩ F_{i-1}| >= threshold adds the layer-i clusters containing h to F_i.
// Triggers are decided against the F_{i-1} snapshot only. In complete-graph
// mode F* = F. Throws Error(IndexOutOfRange) if F's universe differs from n.
ClosureTrace compute_closure(const LayeredScheme& scheme, const FailureSet& failures,
                             const ClosureOptions& options = {});

// |F_i| <= 6 |F_{i-1}| for every layer and |F*| <= 6^ell |F|.
bool closure_bound_check(const ClosureTrace& trace);

}  // namespace robust_spanner
