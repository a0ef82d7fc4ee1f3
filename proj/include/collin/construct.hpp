#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "collin/geometry.hpp"
#include "collin/lattice.hpp"
#include "collin/types.hpp"

namespace collin {

enum class Parity { even, odd };

struct ConstructionParams {
  int dim = 2;
  int k = 4;
  Int r0 = 0;  // 0 selects the default 2^dim
  Budget budget;
};

struct WitnessPair {
  Point p, q;
};

// Certificate of one construction run: the pigeonholed squared radius and
// squared spacing, the sphere family, and the pairs whose lines carry exactly
// k points each. For odd k the pairs live on the doubled shell S_d(2r), so a
// pair has squared norm 4*m_r and squared separation 4*m_ell.
struct ConstructionWitness {
  Int m_r = 0;             // squared radius of the chosen base shell
  Int m_ell = 0;           // squared spacing between consecutive line points
  std::vector<Int> radii;  // squared radii of the sphere family, increasing
  std::optional<Int> x0;   // hyperplane first coordinate (odd k only)
  std::vector<WitnessPair> pairs;
};

// Exact integer tallies behind the pigeonhole selections; re-verified rather
// than trusted downstream.
struct PigeonholeStats {
  Int ball_count = 0;        // lattice points of B_d(r0)
  Int shell_count = 0;       // lattice points of the chosen shell
  Int total_pairs = 0;       // C(shell_count, 2)
  Int restricted_pairs = 0;  // odd: pairs with distinct first coordinates
  Int class_size = 0;        // pairs in the chosen distance class
  Int hyperplane_class = 0;  // odd: class pairs whose midpoint sits at x0
  Int hyperplane_range = 0;  // odd: floor of the midpoint sphere radius
};

struct ConstructedSet {
  int dim = 0;
  int k = 0;
  Parity parity = Parity::even;
  Int r0 = 0;
  PointList points;  // lex-sorted, duplicate-free
  ConstructionWitness witness;
  PigeonholeStats stats;
  std::vector<std::string> warnings;
};

// Scale a nonzero lattice point to the doubled lattice: 2p has all-even
// coordinates and four times the squared norm.
inline Point doubling_map(const Point& p) {
  if (p.size() < 1) throw DomainError("doubling_map: empty point");
  if ((p.array() == 0).all()) throw DomainError("doubling_map: zero point");
  return 2 * p;
}

struct ShellChoice {
  Int m_r = 0;
  Int count = 0;
  Int ball_count = 0;
};

// The squared radius 0 < m <= r0^2 whose shell holds the most lattice points;
// ties break to the smallest m. By pigeonhole over the r0^2 nonzero squared
// norms, count * r0^2 >= ball_count - 1 (the -1 drops the origin).
inline ShellChoice choose_shell(int dim, const Int& r0, const Budget& budget = {}) {
  if (dim < 1) throw DomainError("choose_shell: dim must be >= 1");
  if (r0 < 1) throw DomainError("choose_shell: r0 must be >= 1");
  ShellChoice best;
  best.ball_count = count_ball(dim, r0 * r0, budget.max_points);
  const std::int64_t m_max = detail::table_m(r0 * r0, "choose_shell");
  best.count = -1;
  for (std::int64_t m = 1; m <= m_max; ++m) {
    const Int c = count_shell(dim, m);
    if (c > best.count) {
      best.m_r = m;
      best.count = c;
    }
  }
  if (best.count * r0 * r0 < best.ball_count - 1)
    throw std::logic_error("choose_shell: pigeonhole guarantee violated");
  return best;
}

struct DistanceChoice {
  Int m_ell = 0;
  std::vector<WitnessPair> pairs;
  Int total_pairs = 0;
};

// Most popular squared distance among all unordered pairs; ties break to the
// smallest value. Squared distances of same-shell pairs lie in 1..4*m_r, so
// the winning class has at least C(n,2) / (4*m_r) pairs.
inline DistanceChoice choose_distance_even(const PointList& shell_points,
                                           const Budget& budget = {}) {
  const auto n = static_cast<std::int64_t>(shell_points.size());
  if (n < 2)
    throw DomainError("choose_distance_even: need at least 2 points, got " + std::to_string(n));
  DistanceChoice out;
  out.total_pairs = nc2(Int(n));
  if (out.total_pairs > budget.max_pairs)
    throw ResourceError("choose_distance_even: pair count exceeds the pair budget");
  std::map<Int, std::vector<WitnessPair>> classes;
  for (std::int64_t i = 0; i < n; ++i)
    for (std::int64_t j = i + 1; j < n; ++j) {
      Int d2 = (shell_points[i] - shell_points[j]).squaredNorm();
      classes[std::move(d2)].push_back({shell_points[i], shell_points[j]});
    }
  const std::vector<WitnessPair>* best = nullptr;
  for (const auto& [d2, pairs] : classes) {
    if (!best || pairs.size() > best->size()) {
      best = &pairs;
      out.m_ell = d2;
    }
  }
  out.pairs = *best;
  return out;
}

struct OddDistanceChoice {
  Int m_2ell = 0;  // squared distance class on the doubled shell
  std::vector<WitnessPair> pairs;
  Int total_pairs = 0;
  Int restricted_pairs = 0;
};

// Same selection over the doubled shell, restricted to pairs whose first
// coordinates differ (so no selected line lies inside a hyperplane alpha_x).
inline OddDistanceChoice choose_distance_odd(const PointList& doubled_points,
                                             const Budget& budget = {}) {
  const auto n = static_cast<std::int64_t>(doubled_points.size());
  if (n < 2)
    throw DomainError("choose_distance_odd: need at least 2 points, got " + std::to_string(n));
  OddDistanceChoice out;
  out.total_pairs = nc2(Int(n));
  if (out.total_pairs > budget.max_pairs)
    throw ResourceError("choose_distance_odd: pair count exceeds the pair budget");
  std::map<Int, std::vector<WitnessPair>> classes;
  for (std::int64_t i = 0; i < n; ++i)
    for (std::int64_t j = i + 1; j < n; ++j) {
      if (doubled_points[i](0) == doubled_points[j](0)) continue;
      ++out.restricted_pairs;
      Int d2 = (doubled_points[i] - doubled_points[j]).squaredNorm();
      classes[std::move(d2)].push_back({doubled_points[i], doubled_points[j]});
    }
  if (classes.empty())
    throw ResourceError("choose_distance_odd: empty distinct-first-coordinate pair pool");
  const std::vector<WitnessPair>* best = nullptr;
  for (const auto& [d2, pairs] : classes) {
    if (!best || pairs.size() > best->size()) {
      best = &pairs;
      out.m_2ell = d2;
    }
  }
  out.pairs = *best;
  return out;
}

// The k points a witness pair pins down, in arithmetic-progression order
// along the line (squared step m_ell).
inline PointList witness_line_points(const ConstructedSet& set, const WitnessPair& pair) {
  PointList line;
  line.reserve(set.k);
  if (set.parity == Parity::even) {
    const Point u = pair.p - pair.q;
    const int half = set.k / 2;
    for (int j = 0; j < set.k; ++j) line.push_back(pair.q + (j - (half - 1)) * u);
  } else {
    Point u = pair.p - pair.q;
    Point m0 = pair.p + pair.q;
    for (Eigen::Index i = 0; i < u.size(); ++i) {
      u(i) /= 2;
      m0(i) /= 2;
    }
    const int half = (set.k - 1) / 2;
    for (int j = -half; j <= half; ++j) line.push_back(m0 + j * u);
  }
  return line;
}

namespace detail {

inline Int pow2(int e) { return Int(1) << e; }

inline void append_shell(PointList& points, int dim, const Int& m, const Budget& budget) {
  PointList shell = enumerate_shell(dim, m, budget);
  if (static_cast<std::int64_t>(points.size() + shell.size()) > budget.max_points)
    throw ResourceError("construct: family point count exceeds the enumeration budget");
  points.insert(points.end(), shell.begin(), shell.end());
}

inline void sort_and_check_unique(PointList& points) {
  std::sort(points.begin(), points.end(), PointLess{});
  for (std::size_t i = 1; i < points.size(); ++i)
    if (same_vec(points[i - 1], points[i]))
      throw std::logic_error("construct: sphere family produced a duplicate point");
}

// Pairs generating coincident line points are dropped; cannot happen with a
// nonzero step, but a degenerate certificate must never be emitted.
inline void filter_degenerate_pairs(ConstructedSet& set) {
  std::vector<WitnessPair> kept;
  kept.reserve(set.witness.pairs.size());
  for (const WitnessPair& pair : set.witness.pairs) {
    PointList line = witness_line_points(set, pair);
    std::sort(line.begin(), line.end(), PointLess{});
    bool distinct = true;
    for (std::size_t i = 1; i < line.size(); ++i)
      if (same_vec(line[i - 1], line[i])) distinct = false;
    if (distinct) {
      kept.push_back(pair);
    } else {
      set.warnings.push_back("dropped witness pair with coincident line points: " +
                             to_string(pair.p) + " " + to_string(pair.q));
    }
  }
  set.witness.pairs = std::move(kept);
}

}  // namespace detail

// Even k: pick the richest shell S_d(r) with r <= r0, pick the most popular
// squared pair distance ell^2 on it, and take all lattice points of the k/2
// spheres of squared radius r^2 + i(i-1) ell^2. Every selected pair extends
// to exactly k equally spaced points of the family.
inline ConstructedSet construct_even(const ConstructionParams& params) {
  if (params.dim < 2) throw DomainError("construct_even: dim must be >= 2");
  if (params.k < 4 || params.k % 2 != 0)
    throw DomainError("construct_even: k must be even and >= 4");
  ConstructedSet set;
  set.dim = params.dim;
  set.k = params.k;
  set.parity = Parity::even;
  set.r0 = params.r0 == 0 ? detail::pow2(params.dim) : params.r0;

  const ShellChoice shell = choose_shell(params.dim, set.r0, params.budget);
  const PointList base = enumerate_shell(params.dim, shell.m_r, params.budget);
  const DistanceChoice dist = choose_distance_even(base, params.budget);

  set.witness.m_r = shell.m_r;
  set.witness.m_ell = dist.m_ell;
  for (int i = 1; i <= params.k / 2; ++i)
    set.witness.radii.push_back(shell.m_r + Int(i) * (i - 1) * dist.m_ell);
  for (std::size_t i = 1; i < set.witness.radii.size(); ++i)
    if (!(set.witness.radii[i - 1] < set.witness.radii[i]))
      throw std::logic_error("construct_even: sphere radii not strictly increasing");

  for (const Int& m : set.witness.radii) detail::append_shell(set.points, params.dim, m, params.budget);
  detail::sort_and_check_unique(set.points);

  set.witness.pairs = dist.pairs;
  set.stats.ball_count = shell.ball_count;
  set.stats.shell_count = shell.count;
  set.stats.total_pairs = dist.total_pairs;
  set.stats.class_size = static_cast<std::int64_t>(dist.pairs.size());
  detail::filter_degenerate_pairs(set);
  return set;
}

// Odd k: work on the doubled shell S_d(2r) inside (2Z)^d so pair midpoints
// are lattice points, restrict to pairs with distinct first coordinates,
// pigeonhole the midpoint multiset onto a hyperplane alpha_x0, and assemble
// the family from (k-3)/2 full spheres, the outermost sphere minus alpha_x0,
// and the midpoint sphere restricted to alpha_x0.
inline ConstructedSet construct_odd(const ConstructionParams& params) {
  if (params.dim < 2) throw DomainError("construct_odd: dim must be >= 2");
  if (params.k < 5 || params.k % 2 != 1)
    throw DomainError("construct_odd: k must be odd and >= 5");
  ConstructedSet set;
  set.dim = params.dim;
  set.k = params.k;
  set.parity = Parity::odd;
  set.r0 = params.r0 == 0 ? detail::pow2(params.dim) : params.r0;

  const ShellChoice shell = choose_shell(params.dim, set.r0, params.budget);
  const PointList base = enumerate_shell(params.dim, shell.m_r, params.budget);
  PointList doubled;
  doubled.reserve(base.size());
  for (const Point& p : base) doubled.push_back(doubling_map(p));

  const OddDistanceChoice dist = choose_distance_odd(doubled, params.budget);
  if (dist.m_2ell % 4 != 0)
    throw std::logic_error("construct_odd: doubled-shell squared distance not divisible by 4");
  const Int m_ell = dist.m_2ell / 4;
  const Int m_mid = 4 * shell.m_r - m_ell;

  // Midpoints all land on the sphere of squared radius 4 r^2 - ell^2.
  std::map<Int, Int> midpoint_classes;
  std::vector<Int> midpoint_x;
  midpoint_x.reserve(dist.pairs.size());
  for (const WitnessPair& pair : dist.pairs) {
    Point mid = pair.p + pair.q;
    for (Eigen::Index i = 0; i < mid.size(); ++i) {
      if (mid(i) % 2 != 0) throw std::logic_error("construct_odd: non-lattice midpoint");
      mid(i) /= 2;
    }
    if (mid.squaredNorm() != m_mid)
      throw std::logic_error("construct_odd: midpoint off the midpoint sphere");
    ++midpoint_classes[mid(0)];
    midpoint_x.push_back(mid(0));
  }
  std::optional<Int> x0;
  Int best_count = -1;
  for (const auto& [x, c] : midpoint_classes) {
    if (c > best_count) {
      x0 = x;
      best_count = c;
    }
  }

  set.witness.m_r = shell.m_r;
  set.witness.m_ell = m_ell;
  set.witness.x0 = x0;
  set.witness.radii.push_back(m_mid);
  for (int i = 1; i <= (params.k - 1) / 2; ++i)
    set.witness.radii.push_back(4 * shell.m_r + Int(i) * i * m_ell - m_ell);
  for (std::size_t i = 1; i < set.witness.radii.size(); ++i)
    if (!(set.witness.radii[i - 1] < set.witness.radii[i]))
      throw std::logic_error("construct_odd: sphere radii not strictly increasing");

  const int outer = (params.k - 1) / 2;
  for (int i = 1; i <= outer - 1; ++i)
    detail::append_shell(set.points, params.dim, set.witness.radii[i], params.budget);
  for (const Point& p : enumerate_shell(params.dim, set.witness.radii[outer], params.budget))
    if (p(0) != *x0) set.points.push_back(p);
  for (const Point& p : enumerate_shell(params.dim, m_mid, params.budget))
    if (p(0) == *x0) set.points.push_back(p);
  if (static_cast<std::int64_t>(set.points.size()) > params.budget.max_points)
    throw ResourceError("construct_odd: family point count exceeds the enumeration budget");
  detail::sort_and_check_unique(set.points);

  for (std::size_t i = 0; i < dist.pairs.size(); ++i)
    if (midpoint_x[i] == *x0) set.witness.pairs.push_back(dist.pairs[i]);

  set.stats.ball_count = shell.ball_count;
  set.stats.shell_count = shell.count;
  set.stats.total_pairs = dist.total_pairs;
  set.stats.restricted_pairs = dist.restricted_pairs;
  set.stats.class_size = static_cast<std::int64_t>(dist.pairs.size());
  set.stats.hyperplane_class = best_count;
  set.stats.hyperplane_range = isqrt_floor(m_mid);
  detail::filter_degenerate_pairs(set);
  return set;
}

inline ConstructedSet construct(const ConstructionParams& params) {
  if (params.k < 4) throw DomainError("construct: k must be >= 4");
  return params.k % 2 == 0 ? construct_even(params) : construct_odd(params);
}

// Re-derive the pigeonhole tallies for a stored certificate, without redoing
// the argmax selections. Used when verifying from files.
inline PigeonholeStats recompute_stats(const ConstructedSet& set, const Budget& budget = {}) {
  PigeonholeStats s;
  s.ball_count = count_ball(set.dim, set.r0 * set.r0, budget.max_points);
  s.shell_count = count_shell(set.dim, set.witness.m_r);
  s.total_pairs = nc2(s.shell_count);
  const PointList base = enumerate_shell(set.dim, set.witness.m_r, budget);
  if (set.parity == Parity::even) {
    for (std::size_t i = 0; i < base.size(); ++i)
      for (std::size_t j = i + 1; j < base.size(); ++j)
        if ((base[i] - base[j]).squaredNorm() == set.witness.m_ell) ++s.class_size;
  } else {
    const Int m_2ell = 4 * set.witness.m_ell;
    const Int m_mid = 4 * set.witness.m_r - set.witness.m_ell;
    for (std::size_t i = 0; i < base.size(); ++i)
      for (std::size_t j = i + 1; j < base.size(); ++j) {
        const Point p = doubling_map(base[i]);
        const Point q = doubling_map(base[j]);
        if (p(0) == q(0)) continue;
        ++s.restricted_pairs;
        if ((p - q).squaredNorm() != m_2ell) continue;
        ++s.class_size;
        Point mid = base[i] + base[j];
        if (set.witness.x0 && mid(0) == *set.witness.x0) ++s.hyperplane_class;
      }
    s.hyperplane_range = isqrt_floor(m_mid);
  }
  return s;
}

}  // namespace collin
