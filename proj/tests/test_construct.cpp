#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>

#include "collin/construct.hpp"
#include "collin/geometry.hpp"
#include "oracles.hpp"

using namespace collin;

namespace {

// Independent shell argmax: box-oracle counts, ties to the smallest m.
std::pair<std::int64_t, std::int64_t> oracle_shell_argmax(int dim, std::int64_t r0) {
  std::pair<std::int64_t, std::int64_t> best{0, -1};
  for (std::int64_t m = 1; m <= r0 * r0; ++m) {
    const auto c = static_cast<std::int64_t>(oracles::box_shell(dim, m).size());
    if (c > best.second) best = {m, c};
  }
  return best;
}

}  // namespace

TEST_CASE("choose_shell fixtures, frozen via the box oracle") {
  {
    const auto want = oracle_shell_argmax(2, 4);
    CHECK(want.first == 5);
    CHECK(want.second == 8);
    const ShellChoice got = choose_shell(2, 4);
    CHECK(got.m_r == want.first);
    CHECK(got.count == want.second);
  }
  {
    const auto want = oracle_shell_argmax(1, 2);
    CHECK(want.first == 1);
    CHECK(want.second == 2);
    const ShellChoice got = choose_shell(1, 2);
    CHECK(got.m_r == 1);
    CHECK(got.count == 2);
  }
  {
    // d=3, r0=2: m=2 wins with 12 points (m=1 only has 6).
    const auto want = oracle_shell_argmax(3, 2);
    const ShellChoice got = choose_shell(3, 2);
    CHECK(got.m_r == want.first);
    CHECK(got.count == want.second);
    CHECK(got.m_r == 2);
    CHECK(got.count == 12);
  }
}

TEST_CASE("choose_shell pigeonhole and budget") {
  const ShellChoice c = choose_shell(2, 6);
  CHECK(c.count * 36 >= c.ball_count - 1);
  Budget tight;
  tight.max_points = 10;
  CHECK_THROWS_AS(choose_shell(2, 6, tight), ResourceError);
  CHECK_THROWS_AS(choose_shell(2, 0), DomainError);
}

TEST_CASE("choose_distance_even matches a brute histogram on S_2(5)") {
  const PointList shell = enumerate_shell(2, 25);
  const DistanceChoice got = choose_distance_even(shell);

  std::map<Int, std::int64_t> hist;
  for (std::size_t i = 0; i < shell.size(); ++i)
    for (std::size_t j = i + 1; j < shell.size(); ++j)
      ++hist[(shell[i] - shell[j]).squaredNorm()];
  Int best_m = 0;
  std::int64_t best_c = -1;
  for (const auto& [m, c] : hist) {
    if (c > best_c) {
      best_m = m;
      best_c = c;
    }
  }
  CHECK(got.m_ell == best_m);
  CHECK(Int(got.pairs.size()) == best_c);
  CHECK(got.total_pairs == 66);
  for (const WitnessPair& pair : got.pairs)
    CHECK((pair.p - pair.q).squaredNorm() == got.m_ell);
}

TEST_CASE("choose_distance_even degenerate inputs") {
  const PointList antipodal = {make_point({0, 5}), make_point({0, -5})};
  const DistanceChoice got = choose_distance_even(antipodal);
  CHECK(got.m_ell == 100);  // 4 r^2
  CHECK(got.pairs.size() == 1);

  CHECK_THROWS_AS(choose_distance_even({make_point({3, 4})}), DomainError);
  Budget tight;
  tight.max_pairs = 5;
  CHECK_THROWS_AS(choose_distance_even(enumerate_shell(2, 25), tight), ResourceError);
}

TEST_CASE("doubling_map") {
  const Point p = doubling_map(make_point({1, 2, 2}));
  CHECK(same_vec(p, make_point({2, 4, 4})));
  CHECK(make_point({1, 2, 2}).squaredNorm() == 9);
  CHECK(p.squaredNorm() == 36);
  CHECK(same_vec(doubling_map(make_point({0, 1})), make_point({0, 2})));
  const Point q = doubling_map(make_point({3, 4}));
  CHECK(same_vec(q, make_point({6, 8})));
  CHECK(q.squaredNorm() == 100);
  CHECK_THROWS_AS(doubling_map(make_point({0, 0, 0})), DomainError);
}

TEST_CASE("choose_distance_odd rejects an all-same-first-coordinate pool") {
  const PointList degenerate = {make_point({0, 2}), make_point({0, -2})};
  CHECK_THROWS_AS(choose_distance_odd(degenerate), ResourceError);
}

TEST_CASE("construct_even d=2 k=4 r0=5") {
  ConstructionParams params;
  params.dim = 2;
  params.k = 4;
  params.r0 = 5;
  const ConstructedSet set = construct_even(params);

  CHECK(set.witness.m_r == 25);
  CHECK(set.witness.radii.size() == 2);
  CHECK(set.witness.radii[0] == set.witness.m_r);
  CHECK(set.witness.radii[1] == set.witness.m_r + 2 * set.witness.m_ell);
  CHECK(verify_gap(set.points, 4));
  CHECK(set.warnings.empty());

  const Census cen = census(set.points);
  CHECK(cen.t(4) >= Int(set.witness.pairs.size()).convert_to<std::int64_t>());
  CHECK(cen.T(5) == 0);

  // squared norms follow r^2 + i(i-1) ell^2 along every witness line
  for (const WitnessPair& pair : set.witness.pairs) {
    CHECK(pair.p.squaredNorm() == set.witness.m_r);
    CHECK(pair.q.squaredNorm() == set.witness.m_r);
    CHECK((pair.p - pair.q).squaredNorm() == set.witness.m_ell);
    const PointList line = witness_line_points(set, pair);
    REQUIRE(line.size() == 4);
    for (int j = 0; j < 4; ++j) {
      const int i = j < 2 ? 2 - j : j - 1;  // q2 q1 p1 p2
      CHECK(line[j].squaredNorm() ==
            set.witness.m_r + Int(i) * (i - 1) * set.witness.m_ell);
    }
  }
}

TEST_CASE("construct_even d=3 k=4 r0=4") {
  ConstructionParams params;
  params.dim = 3;
  params.k = 4;
  params.r0 = 4;
  const ConstructedSet set = construct_even(params);
  CHECK(verify_gap(set.points, 4));
  CHECK(census(set.points).t(4) >= Int(set.witness.pairs.size()).convert_to<std::int64_t>());
}

TEST_CASE("construct_even d=2 k=6 r0=8 radii ladder") {
  ConstructionParams params;
  params.dim = 2;
  params.k = 6;
  params.r0 = 8;
  const ConstructedSet set = construct_even(params);
  const Int m = set.witness.m_r, l = set.witness.m_ell;
  REQUIRE(set.witness.radii.size() == 3);
  CHECK(set.witness.radii[0] == m);
  CHECK(set.witness.radii[1] == m + 2 * l);
  CHECK(set.witness.radii[2] == m + 6 * l);
  CHECK(verify_gap(set.points, 6));
}

TEST_CASE("construct_odd d=3 k=5 r0=4") {
  ConstructionParams params;
  params.dim = 3;
  params.k = 5;
  params.r0 = 4;
  const ConstructedSet set = construct_odd(params);

  REQUIRE(set.witness.x0.has_value());
  CHECK(verify_gap(set.points, 5));
  CHECK(set.warnings.empty());
  const Census cen = census(set.points);
  CHECK(cen.t(5) >= Int(set.witness.pairs.size()).convert_to<std::int64_t>());

  const Int m_mid = 4 * set.witness.m_r - set.witness.m_ell;
  CHECK(set.witness.radii[0] == m_mid);
  CHECK(set.witness.radii[1] == 4 * set.witness.m_r);

  // x0 maximizes the midpoint classes, smallest value among ties
  std::map<Int, std::int64_t> classes;
  const PointList base = enumerate_shell(set.dim, set.witness.m_r);
  for (std::size_t i = 0; i < base.size(); ++i)
    for (std::size_t j = i + 1; j < base.size(); ++j) {
      const Point p = 2 * base[i], q = 2 * base[j];
      if (p(0) == q(0)) continue;
      if ((p - q).squaredNorm() != 4 * set.witness.m_ell) continue;
      ++classes[base[i](0) + base[j](0)];
    }
  Int want_x0 = 0;
  std::int64_t best = -1;
  for (const auto& [x, c] : classes) {
    if (c > best) {
      want_x0 = x;
      best = c;
    }
  }
  CHECK(*set.witness.x0 == want_x0);
  CHECK(set.stats.hyperplane_class == best);

  for (const WitnessPair& pair : set.witness.pairs) {
    // doubled-shell pair with distinct first coordinates at the class distance
    CHECK(pair.p.squaredNorm() == 4 * set.witness.m_r);
    CHECK(pair.q.squaredNorm() == 4 * set.witness.m_r);
    CHECK((pair.p - pair.q).squaredNorm() == 4 * set.witness.m_ell);
    CHECK(pair.p(0) != pair.q(0));
    for (int i = 0; i < set.dim; ++i) {
      CHECK(pair.p(i) % 2 == 0);
      CHECK((pair.p(i) + pair.q(i)) % 2 == 0);  // midpoint lands in Z^d
    }
    const PointList line = witness_line_points(set, pair);
    std::int64_t in_plane = 0;
    for (const Point& p : line)
      if (p(0) == *set.witness.x0) {
        ++in_plane;
        CHECK(p.squaredNorm() == m_mid);
      }
    CHECK(in_plane == 1);
  }
}

TEST_CASE("construct_odd d=2 k=5 r0=6") {
  ConstructionParams params;
  params.dim = 2;
  params.k = 5;
  params.r0 = 6;
  const ConstructedSet set = construct_odd(params);
  CHECK(set.witness.m_r == 25);
  CHECK(set.witness.m_ell == 50);
  CHECK(verify_gap(set.points, 5));
  CHECK(census(set.points).t(5) >= Int(set.witness.pairs.size()).convert_to<std::int64_t>());
}

TEST_CASE("construct_odd d=3 k=7 keeps two full interior shells") {
  ConstructionParams params;
  params.dim = 3;
  params.k = 7;
  params.r0 = 3;
  const ConstructedSet set = construct_odd(params);
  REQUIRE(set.witness.radii.size() == 4);  // midpoint sphere + spheres i = 1..3
  CHECK(verify_gap(set.points, 7));
  const Census cen = census(set.points);
  CHECK(cen.t(7) >= static_cast<std::int64_t>(set.witness.pairs.size()));
  for (const WitnessPair& pair : set.witness.pairs) {
    const PointList line = witness_line_points(set, pair);
    CHECK(line.size() == 7);
  }
}

TEST_CASE("construct_even d=2 k=8") {
  ConstructionParams params;
  params.dim = 2;
  params.k = 8;
  params.r0 = 6;
  const ConstructedSet set = construct_even(params);
  CHECK(set.witness.radii.size() == 4);
  CHECK(verify_gap(set.points, 8));
  CHECK(census(set.points).t(8) >= static_cast<std::int64_t>(set.witness.pairs.size()));
}

TEST_CASE("parameter validation") {
  ConstructionParams params;
  params.dim = 2;
  params.k = 5;
  CHECK_THROWS_AS(construct_even(params), DomainError);
  params.k = 4;
  CHECK_THROWS_AS(construct_odd(params), DomainError);
  params.k = 3;
  CHECK_THROWS_AS(construct(params), DomainError);
  params.k = 4;
  params.dim = 1;
  CHECK_THROWS_AS(construct_even(params), DomainError);
}

TEST_CASE("r0 defaults to 2^dim") {
  ConstructionParams params;
  params.dim = 2;
  params.k = 4;
  params.r0 = 0;
  const ConstructedSet set = construct_even(params);
  CHECK(set.r0 == 4);
}

TEST_CASE("recompute_stats agrees with the stats a build records") {
  ConstructionParams params;
  params.dim = 2;
  params.k = 5;
  params.r0 = 3;
  const ConstructedSet set = construct_odd(params);
  const PigeonholeStats st = recompute_stats(set);
  CHECK(st.ball_count == set.stats.ball_count);
  CHECK(st.shell_count == set.stats.shell_count);
  CHECK(st.total_pairs == set.stats.total_pairs);
  CHECK(st.restricted_pairs == set.stats.restricted_pairs);
  CHECK(st.class_size == set.stats.class_size);
  CHECK(st.hyperplane_class == set.stats.hyperplane_class);
  CHECK(st.hyperplane_range == set.stats.hyperplane_range);
}
