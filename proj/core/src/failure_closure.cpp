#include "robust_spanner/failure_closure.hpp"

#include <algorithm>
#include <cstdint>
#include <string>

#include "robust_spanner/error.hpp"

namespace robust_spanner {

std::size_t trigger_threshold(const LayeredScheme& scheme, const HalfClusterRef& half,
                              const ClosureOptions& options) {
  const std::size_t regular = scheme.regular_half_size(half.layer);
  const std::size_t size = std::max(half.span.size(), regular);
  const long base = static_cast<long>((size + 1) / 2);
  return static_cast<std::size_t>(std::max(0L, base + options.threshold_offset));
}

ClosureTrace compute_closure(const LayeredScheme& scheme, const FailureSet& failures,
                             const ClosureOptions& options) {
  if (failures.universe() != scheme.n()) {
    throw Error(Errc::IndexOutOfRange, "failure set over " + std::to_string(failures.universe()) +
                                           " vertices, scheme has " + std::to_string(scheme.n()));
  }

  ClosureTrace trace;
  trace.per_layer.emplace_back(failures, failures);
  if (scheme.complete_graph()) {
    for (int i = 1; i <= scheme.ell(); ++i) trace.per_layer.emplace_back(failures, failures);
    return trace;
  }

  const std::size_t n = scheme.n();
  std::vector<bool> current = failures.mask();
  std::vector<std::size_t> prefix(n + 1, 0);

  for (int layer = 1; layer <= scheme.ell(); ++layer) {
    // Snapshot F_{i-1} as prefix counts; additions go to `current` only.
    for (std::size_t v = 0; v < n; ++v) prefix[v + 1] = prefix[v] + (current[v] ? 1 : 0);

    for (const HalfClusterRef& half : scheme.half_clusters_of_layer(layer)) {
      const std::size_t failed = prefix[half.span.hi] - prefix[half.span.lo];
      if (failed < trigger_threshold(scheme, half, options)) continue;
      ClosureTrigger trigger{layer, half, failed, scheme.clusters_containing(layer, half.span)};
      for (const ClusterRef& c : trigger.added) {
        std::fill(current.begin() + static_cast<std::ptrdiff_t>(c.span.lo),
                  current.begin() + static_cast<std::ptrdiff_t>(c.span.hi), true);
      }
      trace.triggered.push_back(std::move(trigger));
    }
    trace.per_layer.emplace_back(FailureSet::from_mask(current), failures);
  }
  return trace;
}

bool closure_bound_check(const ClosureTrace& trace) {
  if (trace.per_layer.empty()) return false;
  const std::size_t f = trace.failures().size();
  std::size_t limit = f;
  for (std::size_t i = 1; i < trace.per_layer.size(); ++i) {
    if (trace.per_layer[i].size() > 6 * trace.per_layer[i - 1].size()) return false;
    limit = limit > SIZE_MAX / 6 ? SIZE_MAX : limit * 6;
  }
  return trace.ignored().size() <= limit;
}

}  // namespace robust_spanner
