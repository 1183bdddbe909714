#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "doctest.h"
#include "robust_spanner/error.hpp"
#include "robust_spanner/point_set.hpp"

using namespace robust_spanner;

namespace {

Errc error_code(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected robust_spanner::Error");
  return Errc::InvalidArgument;
}

}  // namespace

TEST_CASE("make_point_set sorts and validates") {
  const PointSet ps = make_point_set({3.0, 1.0, 2.0});
  CHECK(ps.size() == 3);
  CHECK(ps.coord(0) == 1.0);
  CHECK(ps.coord(1) == 2.0);
  CHECK(ps.coord(2) == 3.0);

  CHECK(make_point_set({0.0}).size() == 1);
  CHECK(error_code([] { make_point_set({1.0, 1.0}); }) == Errc::DuplicateCoordinate);
  CHECK(error_code([] { make_point_set({}); }) == Errc::EmptyInput);
}

TEST_CASE("distance") {
  const PointSet ps = make_point_set({0.0, 1.0, 4.0});
  CHECK(ps.distance(0, 2) == 4.0);
  CHECK(ps.distance(2, 0) == 4.0);
  CHECK(ps.distance(1, 1) == 0.0);
  CHECK(make_point_set({-2.5, 3.5}).distance(0, 1) == 6.0);
  CHECK(error_code([&] { ps.distance(0, 3); }) == Errc::IndexOutOfRange);
}

TEST_CASE("collinear triples add up and re-sorting is idempotent") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1000.0, 1000.0);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> coords;
    for (int i = 0; i < 8; ++i) coords.push_back(std::round(u(rng) * 64.0) / 64.0);
    std::sort(coords.begin(), coords.end());
    coords.erase(std::unique(coords.begin(), coords.end()), coords.end());
    if (coords.size() < 3) continue;
    std::shuffle(coords.begin(), coords.end(), rng);
    const PointSet ps = make_point_set(coords);
    // Dyadic coordinates keep the sums exact.
    for (VertexId a = 0; a + 2 < ps.size(); ++a) {
      CHECK(ps.distance(a, a + 2) == ps.distance(a, a + 1) + ps.distance(a + 1, a + 2));
    }
    const auto again = make_point_set({ps.coords().begin(), ps.coords().end()});
    CHECK(again == ps);
  }
}

TEST_CASE("point files skip comments and blank lines") {
  std::istringstream in("# header\n0.5\n\n  -1.25\n# note\n3e2\n");
  const PointSet ps = read_point_set(in);
  REQUIRE(ps.size() == 3);
  CHECK(ps.coord(0) == -1.25);
  CHECK(ps.coord(2) == 300.0);

  std::istringstream bad("1.0\nabc\n");
  CHECK(error_code([&] { read_point_set(bad); }) == Errc::ParseError);

  std::ostringstream out;
  write_point_set(out, ps);
  std::istringstream back(out.str());
  CHECK(read_point_set(back) == ps);
}

TEST_CASE("failure lists") {
  const FailureSet f = parse_failure_list(" 4, 2,2 ,7", 8);
  CHECK(f.size() == 3);
  CHECK(f.contains(2));
  CHECK(f.contains(7));
  CHECK_FALSE(f.contains(3));
  CHECK(parse_failure_list("", 5).empty());
  CHECK(error_code([] { parse_failure_list("1,8", 8); }) == Errc::IndexOutOfRange);
  CHECK(error_code([] { parse_failure_list("1,x", 8); }) == Errc::ParseError);
  CHECK(error_code([] { FailureSet(4, {4}); }) == Errc::IndexOutOfRange);
}

TEST_CASE("ignored sets contain their failures") {
  const FailureSet f(6, {1, 2});
  const FailureSet star(6, {0, 1, 2, 3});
  const IgnoredSet ignored(star, f);
  CHECK(ignored.source_failures().is_subset_of(ignored.members()));
  CHECK(error_code([&] { IgnoredSet(f, star); }) == Errc::InvalidArgument);
}
