#include <algorithm>
#include <random>

#include "doctest.h"
#include "robust_spanner/error.hpp"
#include "robust_spanner/experiments.hpp"
#include "robust_spanner/failure_closure.hpp"

using namespace robust_spanner;

namespace {

std::vector<VertexId> members(const IgnoredSet& s) {
  const auto m = s.members().members();
  return {m.begin(), m.end()};
}

std::vector<VertexId> range(VertexId lo, VertexId hi) {
  std::vector<VertexId> out;
  for (VertexId v = lo; v < hi; ++v) out.push_back(v);
  return out;
}

}  // namespace

TEST_CASE("empty failures trigger nothing") {
  const auto s = build_scheme(16, 1);
  const auto t = compute_closure(s, FailureSet::empty(16));
  CHECK(t.ignored().size() == 0);
  CHECK(t.triggered.empty());
  CHECK(t.layers() == 1);
  CHECK(closure_bound_check(t));
}

TEST_CASE("n=16, F={2,3}") {
  const auto s = build_scheme(16, 1);
  const auto t = compute_closure(s, FailureSet(16, {2, 3}));
  REQUIRE(t.triggered.size() == 1);
  CHECK(t.triggered[0].half.span == IndexSpan{2, 4});
  REQUIRE(t.triggered[0].added.size() == 2);
  CHECK(t.triggered[0].added[0].span == IndexSpan{0, 4});
  CHECK(t.triggered[0].added[1].span == IndexSpan{2, 6});
  CHECK(members(t.ignored()) == range(0, 6));
  CHECK(closure_bound_check(t));
}

TEST_CASE("n=16, F={0,4,8,12} ignores everything") {
  const auto s = build_scheme(16, 1);
  const auto t = compute_closure(s, FailureSet(16, {0, 4, 8, 12}));
  CHECK(t.triggered.size() == 4);
  // Golden value from applying the rule by hand: the four hit halves pull in
  // clusters [0,4) [2,6) [4,8) [6,10) [8,12) [10,14) [12,16).
  CHECK(members(t.ignored()) == range(0, 16));
  CHECK(closure_bound_check(t));
}

TEST_CASE("threshold exactness") {
  for (std::size_t n : {36u, 100u, 216u}) {
    const auto s = build_scheme(n, 1);
    const auto halves = s.half_clusters_of_layer(1);
    const auto& h = halves[2];
    const std::size_t need = (h.span.size() + 1) / 2;
    CHECK(trigger_threshold(s, h) == need);
    std::vector<VertexId> fail;
    for (std::size_t k = 0; k + 1 < need; ++k) fail.push_back(static_cast<VertexId>(h.span.lo + k));
    CHECK(compute_closure(s, FailureSet(n, fail)).triggered.empty());
    fail.push_back(static_cast<VertexId>(h.span.lo + need - 1));
    const auto t = compute_closure(s, FailureSet(n, fail));
    REQUIRE(t.triggered.size() == 1);
    CHECK(t.triggered[0].half.span == h.span);
  }
}

TEST_CASE("the short last half uses the full-half threshold") {
  // n=485, ell=1: m=11, last half [484,485). Failing its one point must not
  // ignore the whole trailing cluster.
  const auto s = build_scheme(485, 1);
  REQUIRE(s.m() == 11);
  const auto last = s.half_clusters_of_layer(1).back();
  REQUIRE(last.span == IndexSpan{484, 485});
  CHECK(trigger_threshold(s, last) == 6);
  const auto t = compute_closure(s, FailureSet(485, {484}));
  CHECK(t.ignored().size() == 1);
  CHECK(closure_bound_check(t));
}

TEST_CASE("snapshot semantics: layer triggers use F_{i-1}") {
  std::mt19937_64 rng(5);
  for (int ell = 1; ell <= 3; ++ell) {
    for (std::size_t n : {64u, 216u, 256u, 300u}) {
      const auto s = build_scheme(n, ell);
      if (s.complete_graph()) continue;
      for (int trial = 0; trial < 40; ++trial) {
        const auto f = random_failures(n, 1 + rng() % (n / 6), rng);
        const auto t = compute_closure(s, f);
        REQUIRE(t.layers() == ell);
        CHECK(t.per_layer[0].members() == f);
        for (int layer = 1; layer <= ell; ++layer) {
          const auto& prev = t.per_layer[static_cast<std::size_t>(layer - 1)].members();
          const auto& cur = t.per_layer[static_cast<std::size_t>(layer)].members();
          CHECK(prev.is_subset_of(cur));
          // Recompute triggers from the recorded snapshot.
          std::vector<IndexSpan> expected;
          for (const auto& h : s.half_clusters_of_layer(layer)) {
            std::size_t hit = 0;
            for (std::size_t v = h.span.lo; v < h.span.hi; ++v)
              hit += prev.contains(static_cast<VertexId>(v)) ? 1 : 0;
            if (hit >= trigger_threshold(s, h)) expected.push_back(h.span);
          }
          std::vector<IndexSpan> recorded;
          for (const auto& tr : t.triggered)
            if (tr.layer == layer) recorded.push_back(tr.half.span);
          CHECK(recorded == expected);
        }
        CHECK(f.is_subset_of(t.ignored().members()));
      }
    }
  }
}

TEST_CASE("Monte-Carlo bound check") {
  std::mt19937_64 rng(2024);
  for (int ell = 1; ell <= 2; ++ell) {
    for (std::size_t n : {16u, 64u, 216u}) {
      const auto s = build_scheme(n, ell);
      for (int trial = 0; trial < 1000; ++trial) {
        const std::size_t k = rng() % (n / 2 + 1);
        const auto t = compute_closure(s, random_failures(n, k, rng));
        CHECK(closure_bound_check(t));
      }
    }
  }
}

TEST_CASE("bound check rejects an inflated trace") {
  const FailureSet f(16, {0});
  ClosureTrace t;
  t.per_layer.emplace_back(f, f);
  t.per_layer.emplace_back(FailureSet(16, range(0, 7)), f);
  CHECK_FALSE(closure_bound_check(t));
}

TEST_CASE("complete-graph mode keeps F* = F") {
  const auto s = build_scheme(10, 2);
  REQUIRE(s.complete_graph());
  const auto t = compute_closure(s, FailureSet(10, {1, 2, 3, 4, 5}));
  CHECK(t.ignored().members() == FailureSet(10, {1, 2, 3, 4, 5}));
  CHECK(closure_bound_check(t));
}

TEST_CASE("universe mismatch") {
  try {
    compute_closure(build_scheme(16, 1), FailureSet(20, {1}));
    FAIL("expected IndexOutOfRange");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::IndexOutOfRange);
  }
}
