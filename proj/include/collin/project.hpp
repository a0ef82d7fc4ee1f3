#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "collin/geometry.hpp"
#include "collin/types.hpp"

namespace collin {

// Exact integer 2 x d projection. A map is only ever handed out after the
// census-preservation acceptance test below has passed on the set it was
// drawn for.
struct ProjectionMap {
  Eigen::Matrix<Int, 2, Eigen::Dynamic> matrix;
  std::uint64_t seed = 0;
  int attempts = 0;  // accepted attempt index, 1-based
};

inline Point apply_map(const ProjectionMap& map, const Point& p) {
  if (map.matrix.cols() != p.size()) throw DomainError("apply_map: dimension mismatch");
  Point out(2);
  for (int r = 0; r < 2; ++r) {
    Int s = 0;
    for (Eigen::Index c = 0; c < p.size(); ++c) s += map.matrix(r, c) * p(c);
    out(r) = std::move(s);
  }
  return out;
}

// Acceptance test: the image has no repeated points and its line census
// matches the source census in every t_k. Together these say the map is
// injective on the set and creates no new collinear triple.
inline bool map_preserves_census(const ProjectionMap& map, const PointList& points,
                                 const Census& source, std::string* why = nullptr,
                                 PointList* image_out = nullptr) {
  PointList image;
  image.reserve(points.size());
  std::unordered_set<Point, PointHash, PointEq> seen;
  seen.reserve(points.size() * 2);
  for (const Point& p : points) {
    Point q = apply_map(map, p);
    if (!seen.insert(q).second) {
      if (why) *why = "duplicate image point " + to_string(q);
      return false;
    }
    image.push_back(std::move(q));
  }
  if (census(image) != source) {
    if (why) *why = "image census differs from source census";
    return false;
  }
  if (image_out) *image_out = std::move(image);
  return true;
}

struct ProjectionResult {
  PointList image;
  ProjectionMap map;
};

// Seeded search for a census-preserving projection to the plane. Matrix
// entries are drawn uniformly from [-B, B] with B = max(2 n^2, 1000); the
// first candidate that passes the acceptance test wins, so identical
// (points, seed) always reproduce the same map.
inline ProjectionResult project_generic(const PointList& points, std::uint64_t seed,
                                        int max_attempts = 10) {
  if (points.empty()) throw DomainError("project_generic: empty point set");
  const auto dim = points.front().size();
  if (dim < 2) throw DomainError("project_generic: dimension must be >= 2");
  const Census source = census(points);  // also rejects duplicate inputs

  const auto n = static_cast<std::int64_t>(points.size());
  const std::int64_t bound = std::max<std::int64_t>(2 * n * n, 1000);
  const std::uint64_t span = 2 * static_cast<std::uint64_t>(bound) + 1;
  std::mt19937_64 rng(seed);

  std::string diagnostics;
  for (int attempt = 1; attempt <= max_attempts; ++attempt) {
    ProjectionMap map;
    map.seed = seed;
    map.attempts = attempt;
    map.matrix.resize(2, dim);
    for (int r = 0; r < 2; ++r)
      for (Eigen::Index c = 0; c < dim; ++c)
        map.matrix(r, c) = static_cast<std::int64_t>(rng() % span) - bound;
    std::string why;
    PointList image;
    if (map_preserves_census(map, points, source, &why, &image))
      return {std::move(image), std::move(map)};
    diagnostics += " attempt " + std::to_string(attempt) + ": " + why + ";";
  }
  throw ResourceError("project_generic: no census-preserving map within " +
                      std::to_string(max_attempts) + " attempts;" + diagnostics);
}

}  // namespace collin
