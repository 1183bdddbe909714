#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string_view>
#include <vector>

namespace robust_spanner {

// Zero-based position of a point in the sorted PointSet.
using VertexId = std::uint32_t;

// Sorted, strictly increasing 1-D coordinates. Immutable once built.
class PointSet {
 public:
  // Sorts the input; throws Error(EmptyInput) or Error(DuplicateCoordinate).
  static PointSet from_coords(std::vector<double> coords);

  std::size_t size() const noexcept { return coords_.size(); }
  std::span<const double> coords() const noexcept { return coords_; }
  double coord(VertexId v) const;

  // |x_a - x_b|. Throws Error(IndexOutOfRange) for invalid ids.
  double distance(VertexId a, VertexId b) const;

  friend bool operator==(const PointSet&, const PointSet&) = default;

 private:
  explicit PointSet(std::vector<double> coords) : coords_(std::move(coords)) {}
  std::vector<double> coords_;
};

inline PointSet make_point_set(std::vector<double> coords) {
  return PointSet::from_coords(std::move(coords));
}

// One decimal coordinate per line; blank lines and lines starting with '#'
// are skipped.
PointSet read_point_set(std::istream& in);
PointSet load_point_set(const std::filesystem::path& path);
void write_point_set(std::ostream& out, const PointSet& ps);

// Set of failed vertices F over a universe [0, n).
class FailureSet {
 public:
  FailureSet() = default;
  FailureSet(std::size_t n, std::vector<VertexId> members);

  static FailureSet empty(std::size_t n) { return FailureSet(n, {}); }
  static FailureSet from_mask(const std::vector<bool>& mask);

  std::size_t universe() const noexcept { return n_; }
  std::size_t size() const noexcept { return members_.size(); }
  bool empty() const noexcept { return members_.empty(); }
  std::span<const VertexId> members() const noexcept { return members_; }
  bool contains(VertexId v) const;
  std::vector<bool> mask() const;

  bool is_subset_of(const FailureSet& other) const;

  friend bool operator==(const FailureSet&, const FailureSet&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<VertexId> members_;  // sorted, unique
};

// Comma-separated zero-based indices, e.g. "3, 4,17". Empty text is the empty set.
FailureSet parse_failure_list(std::string_view text, std::size_t n);

// The ignored set F* together with the F it was derived from. F ⊆ F*.
class IgnoredSet {
 public:
  IgnoredSet() = default;
  IgnoredSet(FailureSet members, FailureSet source);

  const FailureSet& members() const noexcept { return members_; }
  const FailureSet& source_failures() const noexcept { return source_; }
  std::size_t size() const noexcept { return members_.size(); }
  bool contains(VertexId v) const { return members_.contains(v); }

 private:
  FailureSet members_;
  FailureSet source_;
};

}  // namespace robust_spanner
