#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>

#include "collin/types.hpp"

namespace collin {

// True iff a, b, c lie on one affine line: (b-a) and (c-a) are dependent,
// decided by all 2x2 integer minors vanishing.
template <typename DA, typename DB, typename DC>
bool collinear(const Eigen::MatrixBase<DA>& a, const Eigen::MatrixBase<DB>& b,
               const Eigen::MatrixBase<DC>& c) {
  if (a.size() != b.size() || a.size() != c.size())
    throw DomainError("collinear: dimension mismatch");
  const auto u = (b - a).eval();
  const auto v = (c - a).eval();
  for (Eigen::Index i = 0; i < u.size(); ++i)
    for (Eigen::Index j = i + 1; j < u.size(); ++j)
      if (u(i) * v(j) != u(j) * v(i)) return false;
  return true;
}

// Canonical exact key for an affine line in Z^d.
//
// direction: the primitive vector along the line, gcd of entries 1, first
// nonzero entry positive. base: the unique representative p - t*direction
// whose coordinate at the direction's first nonzero index lies in
// [0, direction_j), i.e. the residue of any line point modulo the direction.
// Any two distinct points of the same line map to the same key.
struct LineKey {
  Point direction;
  Point base;

  friend bool operator==(const LineKey& a, const LineKey& b) {
    return same_vec(a.direction, b.direction) && same_vec(a.base, b.base);
  }
};

struct LineKeyHash {
  std::size_t operator()(const LineKey& k) const {
    std::size_t h = PointHash{}(k.direction);
    boost::hash_combine(h, PointHash{}(k.base));
    return h;
  }
};

struct LineKeyLess {
  bool operator()(const LineKey& a, const LineKey& b) const {
    if (lex_less(a.direction, b.direction)) return true;
    if (lex_less(b.direction, a.direction)) return false;
    return lex_less(a.base, b.base);
  }
};

inline std::string to_string(const LineKey& k) {
  return "dir=" + to_string(k.direction) + " base=" + to_string(k.base);
}

inline LineKey line_key(const Point& a, const Point& b) {
  if (a.size() != b.size()) throw DomainError("line_key: dimension mismatch");
  if (same_vec(a, b)) throw DomainError("line_key: degenerate pair " + to_string(a));
  Point dir = b - a;
  Int g = 0;
  for (Eigen::Index i = 0; i < dir.size(); ++i)
    g = boost::multiprecision::gcd(g, boost::multiprecision::abs(dir(i)));
  for (Eigen::Index i = 0; i < dir.size(); ++i) dir(i) /= g;
  for (Eigen::Index i = 0; i < dir.size(); ++i) {
    if (dir(i) != 0) {
      if (dir(i) < 0) dir = -dir;
      break;
    }
  }
  Eigen::Index j = 0;
  while (dir(j) == 0) ++j;
  const Int t = floor_div(a(j), dir(j));
  Point base = a - t * dir;
  return LineKey{std::move(dir), std::move(base)};
}

// Exact line census: exact_counts maps k >= 2 to t_k, the number of lines
// meeting the point set in exactly k points.
struct Census {
  std::map<std::int64_t, std::int64_t> exact_counts;
  std::int64_t n = 0;

  std::int64_t t(std::int64_t k) const {
    auto it = exact_counts.find(k);
    return it == exact_counts.end() ? 0 : it->second;
  }

  // T_k: number of lines with at least k points.
  std::int64_t T(std::int64_t k) const {
    std::int64_t total = 0;
    for (const auto& [kk, tk] : exact_counts)
      if (kk >= k) total += tk;
    return total;
  }

  // Every unordered pair of distinct points lies on exactly one line.
  bool pair_conservation() const {
    Int pairs = 0;
    for (const auto& [k, tk] : exact_counts) pairs += Int(tk) * nc2(Int(k));
    return pairs == nc2(Int(n));
  }

  friend bool operator==(const Census&, const Census&) = default;
};

namespace detail {

inline void require_distinct(const PointList& points) {
  std::unordered_set<Point, PointHash, PointEq> seen;
  seen.reserve(points.size() * 2);
  for (const Point& p : points) {
    if (p.size() != points.front().size())
      throw DomainError("census: points of mixed dimension");
    if (!seen.insert(p).second) throw DomainError("census: duplicate point " + to_string(p));
  }
}

inline std::unordered_map<LineKey, std::int64_t, LineKeyHash> group_pairs_by_line(
    const PointList& points) {
  std::unordered_map<LineKey, std::int64_t, LineKeyHash> counts;
  counts.reserve(points.size() * points.size() / 2 + 1);
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = i + 1; j < points.size(); ++j) ++counts[line_key(points[i], points[j])];
  return counts;
}

// Recover m from C(m,2) pair hits.
inline std::int64_t points_on_line_from_pairs(std::int64_t c) {
  const auto m = static_cast<std::int64_t>(
      (1 + u64_isqrt(1 + 8 * static_cast<std::uint64_t>(c))) / 2);
  if (m * (m - 1) / 2 != c) throw DomainError("census: inconsistent pair grouping");
  return m;
}

}  // namespace detail

// Hash-map census: group all pairs under their canonical line key, then read
// each line's multiplicity m off its C(m,2) pair count.
inline Census census(const PointList& points) {
  detail::require_distinct(points);
  Census out;
  out.n = static_cast<std::int64_t>(points.size());
  for (const auto& [key, c] : detail::group_pairs_by_line(points))
    ++out.exact_counts[detail::points_on_line_from_pairs(c)];
  return out;
}

// Independent cubic oracle: for every pair, count the points exactly on the
// spanned line; a line with m points is hit by C(m,2) pairs. No line keys,
// no hashing.
inline Census census_bruteforce(const PointList& points) {
  detail::require_distinct(points);
  Census out;
  out.n = static_cast<std::int64_t>(points.size());
  std::map<std::int64_t, std::int64_t> pair_hits;
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      std::int64_t on_line = 0;
      for (const Point& p : points)
        if (collinear(points[i], points[j], p)) ++on_line;
      ++pair_hits[on_line];
    }
  }
  for (const auto& [m, hits] : pair_hits) {
    const std::int64_t per_line = m * (m - 1) / 2;
    if (hits % per_line != 0) throw DomainError("census_bruteforce: inconsistent pair counts");
    out.exact_counts[m] += hits / per_line;
  }
  return out;
}

// True iff no line meets the set in k+1 or more points.
inline bool verify_gap(const PointList& points, std::int64_t k) {
  if (k < 2) throw DomainError("verify_gap: k must be >= 2");
  return census(points).T(k + 1) == 0;
}

// Some line meeting the set in at least k points, if any; used for failure
// payloads.
inline std::optional<std::pair<LineKey, std::int64_t>> find_rich_line(const PointList& points,
                                                                      std::int64_t k) {
  detail::require_distinct(points);
  std::optional<std::pair<LineKey, std::int64_t>> best;
  for (const auto& [key, c] : detail::group_pairs_by_line(points)) {
    const std::int64_t m = detail::points_on_line_from_pairs(c);
    if (m >= k && (!best || m > best->second ||
                   (m == best->second && LineKeyLess{}(key, best->first))))
      best = {key, m};
  }
  return best;
}

}  // namespace collin
