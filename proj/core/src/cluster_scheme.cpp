#include "robust_spanner/cluster_scheme.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "robust_spanner/error.hpp"

namespace robust_spanner {

std::optional<std::size_t> checked_pow(std::size_t base, int exp) {
  std::size_t result = 1;
  for (int i = 0; i < exp; ++i) {
    if (base != 0 && result > std::numeric_limits<std::size_t>::max() / base) return std::nullopt;
    result *= base;
  }
  return result;
}

int choose_ell_for_epsilon(double epsilon) {
  if (!(epsilon > 0.0) || epsilon > 1.0) {
    throw Error(Errc::InvalidEpsilon, "epsilon must lie in (0, 1], got " + std::to_string(epsilon));
  }
  const double ratio = (1.0 - epsilon) / epsilon;
  const double nearest = std::round(ratio);
  double ell = std::ceil(ratio);
  if (std::abs(ratio - nearest) <= 1e-9 * std::max(1.0, nearest)) ell = nearest;
  if (ell > std::numeric_limits<int>::max()) {
    throw Error(Errc::InvalidEpsilon, "epsilon too small");
  }
  return std::max(1, static_cast<int>(ell));
}

LayeredScheme LayeredScheme::build(std::size_t n, int ell) {
  if (n == 0) throw Error(Errc::EmptyInput, "scheme needs n >= 1");
  if (ell < 1) throw Error(Errc::LayerOutOfRange, "ell must be >= 1");

  LayeredScheme s;
  s.n_ = n;
  s.ell_ = ell;

  // Largest m with (2m)^{ell+1} <= n, by direct search.
  std::size_t m = 0;
  for (std::size_t cand = 1;; ++cand) {
    const auto p = checked_pow(2 * cand, ell + 1);
    if (!p || *p > n) break;
    m = cand;
  }
  if (m < 2) return s;  // complete-graph mode

  s.complete_ = false;
  s.m_ = m;
  s.base_count_ = *checked_pow(2 * m, ell + 1);
  s.half_size_.reserve(static_cast<std::size_t>(ell));
  for (int i = 1; i <= ell; ++i) s.half_size_.push_back(*checked_pow(2 * m, i) / 2);
  return s;
}

void LayeredScheme::check_layer(int layer) const {
  if (layer < 1 || layer > ell_) {
    throw Error(Errc::LayerOutOfRange,
                "layer " + std::to_string(layer) + " outside [1, " + std::to_string(ell_) + "]");
  }
}

std::size_t LayeredScheme::regular_half_size(int layer) const {
  check_layer(layer);
  return complete_ ? 0 : half_size_[static_cast<std::size_t>(layer - 1)];
}

std::size_t LayeredScheme::regular_cluster_size(int layer) const {
  return 2 * regular_half_size(layer);
}

std::size_t LayeredScheme::half_count(int layer) const {
  const std::size_t h = regular_half_size(layer);
  return complete_ ? 0 : (n_ + h - 1) / h;
}

std::size_t LayeredScheme::cluster_count(int layer) const {
  const std::size_t halves = half_count(layer);
  return halves == 0 ? 0 : halves - 1;
}

std::size_t LayeredScheme::half_index_of(int layer, VertexId v) const {
  if (v >= n_) throw Error(Errc::IndexOutOfRange, "vertex outside scheme");
  const std::size_t h = regular_half_size(layer);
  if (complete_) throw Error(Errc::LayerOutOfRange, "complete-graph scheme has no halves");
  return v / h;
}

IndexSpan LayeredScheme::half_span(int layer, std::size_t half_index) const {
  if (half_index >= half_count(layer)) {
    throw Error(Errc::IndexOutOfRange, "half-cluster index " + std::to_string(half_index));
  }
  const std::size_t h = regular_half_size(layer);
  return {half_index * h, std::min((half_index + 1) * h, n_)};
}

HalfClusterRef LayeredScheme::half_at(int layer, std::size_t half_index) const {
  const IndexSpan span = half_span(layer, half_index);
  const std::size_t last = half_count(layer) - 1;
  if (half_index < last) return {layer, half_index + 1, Side::Left, span};
  return {layer, last, Side::Right, span};
}

// Cluster j (1-based) of a layer with half size h spans [(j-1)h, (j+1)h),
// clipped at n.
ClusterRef LayeredScheme::cluster(int layer, std::size_t ordinal) const {
  if (ordinal < 1 || ordinal > cluster_count(layer)) {
    throw Error(Errc::IndexOutOfRange, "cluster ordinal " + std::to_string(ordinal));
  }
  const std::size_t h = regular_half_size(layer);
  return {layer, ordinal, {(ordinal - 1) * h, std::min((ordinal + 1) * h, n_)}};
}

std::vector<ClusterRef> LayeredScheme::clusters_of_layer(int layer) const {
  std::vector<ClusterRef> out;
  const std::size_t count = cluster_count(layer);
  out.reserve(count);
  for (std::size_t j = 1; j <= count; ++j) out.push_back(cluster(layer, j));
  return out;
}

std::vector<HalfClusterRef> LayeredScheme::half_clusters_of_layer(int layer) const {
  std::vector<HalfClusterRef> out;
  const std::size_t count = half_count(layer);
  out.reserve(count);
  for (std::size_t k = 0; k < count; ++k) out.push_back(half_at(layer, k));
  return out;
}

std::vector<ClusterRef> LayeredScheme::clusters_containing(int layer,
                                                           const IndexSpan& span) const {
  std::vector<ClusterRef> out;
  if (complete_ || span.size() == 0 || span.hi > n_) {
    check_layer(layer);
    return out;
  }
  const std::size_t h = regular_half_size(layer);
  // Cluster j covers halves j-1 and j (zero-based); only those touching the
  // span's first half can contain it.
  const std::size_t first_half = span.lo / h;
  const std::size_t count = cluster_count(layer);
  for (std::size_t j = first_half; j <= first_half + 1; ++j) {
    if (j < 1 || j > count) continue;
    ClusterRef c = cluster(layer, j);
    if (c.span.contains(span)) out.push_back(c);
  }
  return out;
}

std::vector<ClusterRef> LayeredScheme::parent_clusters(const HalfClusterRef& half) const {
  const int parent = half.layer + 1;
  if (half.layer < 1 || parent > ell_) {
    throw Error(Errc::LayerOutOfRange, "half-cluster of layer " + std::to_string(half.layer) +
                                           " has no parent layer");
  }
  return clusters_containing(parent, half.span);
}

}  // namespace robust_spanner
