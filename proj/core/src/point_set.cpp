#include "robust_spanner/point_set.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <string>

#include "robust_spanner/error.hpp"

namespace robust_spanner {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

}  // namespace

PointSet PointSet::from_coords(std::vector<double> coords) {
  if (coords.empty()) throw Error(Errc::EmptyInput, "point set needs at least one coordinate");
  for (double c : coords) {
    if (!std::isfinite(c)) throw Error(Errc::InvalidArgument, "coordinates must be finite");
  }
  std::sort(coords.begin(), coords.end());
  const auto dup = std::adjacent_find(coords.begin(), coords.end());
  if (dup != coords.end()) {
    throw Error(Errc::DuplicateCoordinate, "coordinate " + std::to_string(*dup) + " repeats");
  }
  return PointSet(std::move(coords));
}

double PointSet::coord(VertexId v) const {
  if (v >= coords_.size()) {
    throw Error(Errc::IndexOutOfRange, "vertex " + std::to_string(v) + " >= n");
  }
  return coords_[v];
}

double PointSet::distance(VertexId a, VertexId b) const {
  const double xa = coord(a);
  const double xb = coord(b);
  return a < b ? xb - xa : xa - xb;
}

PointSet read_point_set(std::istream& in) {
  std::vector<double> coords;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
    if (ec != std::errc() || ptr != t.data() + t.size()) {
      throw Error(Errc::ParseError, "line " + std::to_string(line_no) + ": not a number");
    }
    coords.push_back(value);
  }
  return PointSet::from_coords(std::move(coords));
}

PointSet load_point_set(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::Io, "cannot open " + path.string());
  return read_point_set(in);
}

void write_point_set(std::ostream& out, const PointSet& ps) {
  out << "# " << ps.size() << " points\n";
  out << std::setprecision(17);
  for (double c : ps.coords()) out << c << '\n';
}

FailureSet::FailureSet(std::size_t n, std::vector<VertexId> members)
    : n_(n), members_(std::move(members)) {
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
  if (!members_.empty() && members_.back() >= n_) {
    throw Error(Errc::IndexOutOfRange,
                "failed vertex " + std::to_string(members_.back()) + " >= n = " + std::to_string(n_));
  }
}

FailureSet FailureSet::from_mask(const std::vector<bool>& mask) {
  std::vector<VertexId> members;
  for (std::size_t v = 0; v < mask.size(); ++v) {
    if (mask[v]) members.push_back(static_cast<VertexId>(v));
  }
  return FailureSet(mask.size(), std::move(members));
}

bool FailureSet::contains(VertexId v) const {
  return std::binary_search(members_.begin(), members_.end(), v);
}

std::vector<bool> FailureSet::mask() const {
  std::vector<bool> m(n_, false);
  for (VertexId v : members_) m[v] = true;
  return m;
}

bool FailureSet::is_subset_of(const FailureSet& other) const {
  return std::includes(other.members_.begin(), other.members_.end(), members_.begin(),
                       members_.end());
}

FailureSet parse_failure_list(std::string_view text, std::size_t n) {
  std::vector<VertexId> members;
  text = trim(text);
  while (!text.empty()) {
    const auto comma = text.find(',');
    const std::string_view item = trim(text.substr(0, comma));
    unsigned long long value = 0;
    const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), value);
    if (item.empty() || ec != std::errc() || ptr != item.data() + item.size()) {
      throw Error(Errc::ParseError, "bad failure index '" + std::string(item) + "'");
    }
    if (value >= n) {
      throw Error(Errc::IndexOutOfRange,
                  "failure index " + std::to_string(value) + " >= n = " + std::to_string(n));
    }
    members.push_back(static_cast<VertexId>(value));
    if (comma == std::string_view::npos) break;
    text = text.substr(comma + 1);
  }
  return FailureSet(n, std::move(members));
}

IgnoredSet::IgnoredSet(FailureSet members, FailureSet source)
    : members_(std::move(members)), source_(std::move(source)) {
  if (members_.universe() != source_.universe() || !source_.is_subset_of(members_)) {
    throw Error(Errc::InvalidArgument, "ignored set must contain its source failures");
  }
}

}  // namespace robust_spanner
