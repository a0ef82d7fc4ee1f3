#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <mutex>
#include <numbers>
#include <optional>
#include <utility>

#include "collin/types.hpp"

namespace collin {

// Lattice sphere S_d(sqrt(m)): all x in Z^d with sum x_i^2 == m. Radii are
// always carried squared so irrational radii never need a numeric value.
struct ShellSpec {
  int dim = 1;
  Int m = 0;
};

// Lattice ball B_d(sqrt(m)): all x in Z^d with sum x_i^2 <= m.
struct BallSpec {
  int dim = 1;
  Int m = 0;
};

inline void validate(const ShellSpec& s) {
  if (s.dim < 1) throw DomainError("ShellSpec: dim must be >= 1");
  if (s.m < 0) throw DomainError("ShellSpec: squared radius must be >= 0");
}

inline void validate(const BallSpec& s) {
  if (s.dim < 1) throw DomainError("BallSpec: dim must be >= 1");
  if (s.m < 0) throw DomainError("BallSpec: squared radius must be >= 0");
}

namespace detail {

// Loop guards. Scalar ops run O(sqrt m) loops, table ops run O(m)-ish
// recursions with memoization; both refuse inputs past these sizes.
constexpr std::int64_t kMaxScalarM = 1'000'000'000'000;
constexpr std::int64_t kMaxTableM = 5'000'000;

inline std::int64_t scalar_m(const Int& m, const char* what) {
  if (m > kMaxScalarM)
    throw ResourceError(std::string(what) + ": squared radius too large for exact scalar loop");
  return m.convert_to<std::int64_t>();
}

inline std::int64_t table_m(const Int& m, const char* what) {
  if (m > kMaxTableM)
    throw ResourceError(std::string(what) + ": squared radius too large for exact table recursion");
  return m.convert_to<std::int64_t>();
}

// Ordered signed pairs (a,b) with a^2 + b^2 == n.
inline std::int64_t rep2_i64(std::int64_t n) {
  if (n == 0) return 1;
  const auto un = static_cast<std::uint64_t>(n);
  std::int64_t count = 0;
  const std::uint64_t s = u64_isqrt(un);
  for (std::uint64_t a = 0; a <= s; ++a) {
    const std::uint64_t b2 = un - a * a;
    const std::uint64_t b = u64_isqrt(b2);
    if (b * b == b2) count += (a ? 2 : 1) * (b ? 2 : 1);
  }
  return count;
}

// Gamma(d/2 + 1) without a general gamma: exact factorial for even d,
// the (2n)!/(4^n n!) sqrt(pi) closed form for odd d.
inline double gamma_half_plus_one(int d) {
  if (d % 2 == 0) {
    double f = 1.0;
    for (int i = 2; i <= d / 2; ++i) f *= i;
    return f;
  }
  const int n = (d + 1) / 2;
  double num = 1.0;
  for (int i = 2; i <= 2 * n; ++i) num *= i;
  double den = std::pow(4.0, n);
  for (int i = 2; i <= n; ++i) den *= i;
  return num / den * std::sqrt(std::numbers::pi_v<double>);
}

}  // namespace detail

// Volume of the Euclidean ball of radius r in R^d.
inline double volume_ball(int dim, double r) {
  if (dim < 1) throw DomainError("volume_ball: dim must be >= 1");
  if (!(r > 0.0)) throw DomainError("volume_ball: radius must be positive");
  return std::pow(r, dim) * std::pow(std::numbers::pi_v<double>, dim / 2.0) /
         detail::gamma_half_plus_one(dim);
}

// Number of ordered signed pairs (a,b) with a^2 + b^2 == n.
inline Int rep_two_squares(const Int& n) {
  if (n < 0) throw DomainError("rep_two_squares: n must be >= 0");
  return detail::rep2_i64(detail::scalar_m(n, "rep_two_squares"));
}

// d(n), the number of positive divisors, by trial division up to sqrt(n).
inline Int divisor_count(const Int& n) {
  if (n < 1) throw DomainError("divisor_count: n must be >= 1");
  const std::int64_t v = detail::scalar_m(n, "divisor_count");
  std::int64_t count = 0;
  for (std::int64_t i = 1; i * i <= v; ++i) {
    if (v % i == 0) count += (i * i == v) ? 1 : 2;
  }
  return count;
}

namespace detail {

// |Z^d ∩ S_d(sqrt m)| by recursion. Odd d peels one coordinate, even d >= 4
// convolves off two coordinates at a time; base cases keep the identity valid
// for every parity: d=0 counts the empty tuple, d=1 counts +-sqrt(m).
inline Int count_shell_rec(int dim, std::int64_t m) {
  if (m < 0) return 0;
  if (dim == 0) return m == 0 ? 1 : 0;
  if (dim == 1) {
    if (m == 0) return 1;
    const auto r = static_cast<std::int64_t>(u64_isqrt(static_cast<std::uint64_t>(m)));
    return r * r == m ? 2 : 0;
  }
  if (dim == 2) return rep2_i64(m);

  static std::map<std::pair<int, std::int64_t>, Int> cache;
  static std::mutex mtx;
  const auto key = std::make_pair(dim, m);
  {
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }

  Int total = 0;
  if (dim % 2 == 1) {
    const auto s = static_cast<std::int64_t>(u64_isqrt(static_cast<std::uint64_t>(m)));
    total = count_shell_rec(dim - 1, m);
    for (std::int64_t x = 1; x <= s; ++x) total += 2 * count_shell_rec(dim - 1, m - x * x);
  } else {
    for (std::int64_t s = 0; s <= m; ++s) total += count_shell_rec(dim - 2, s) * rep2_i64(m - s);
  }

  std::lock_guard<std::mutex> lock(mtx);
  cache.emplace(key, total);
  return total;
}

// |Z^d ∩ B_d(sqrt m)| by peeling one coordinate; independent of the shell
// recursion so the two can cross-check each other.
inline Int count_ball_rec(int dim, std::int64_t m) {
  if (m < 0) return 0;
  if (dim == 0) return 1;
  const auto s = static_cast<std::int64_t>(u64_isqrt(static_cast<std::uint64_t>(m)));
  if (dim == 1) return 2 * s + 1;

  static std::map<std::pair<int, std::int64_t>, Int> cache;
  static std::mutex mtx;
  const auto key = std::make_pair(dim, m);
  {
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }

  Int total = count_ball_rec(dim - 1, m);
  for (std::int64_t x = 1; x <= s; ++x) total += 2 * count_ball_rec(dim - 1, m - x * x);

  std::lock_guard<std::mutex> lock(mtx);
  cache.emplace(key, total);
  return total;
}

}  // namespace detail

// Exact |Z^d ∩ S_d(sqrt m)| without materializing points.
inline Int count_shell(const ShellSpec& spec) {
  validate(spec);
  if (spec.dim <= 2) return detail::count_shell_rec(spec.dim, detail::scalar_m(spec.m, "count_shell"));
  return detail::count_shell_rec(spec.dim, detail::table_m(spec.m, "count_shell"));
}

inline Int count_shell(int dim, const Int& m) { return count_shell(ShellSpec{dim, m}); }

// Exact |Z^d ∩ B_d(sqrt m)|. When max_points is given, refuses counts past it.
inline Int count_ball(const BallSpec& spec,
                      std::optional<std::int64_t> max_points = std::nullopt) {
  validate(spec);
  Int count;
  if (spec.dim == 1) {
    count = 2 * isqrt_floor(spec.m) + 1;
  } else {
    const std::int64_t m = detail::table_m(spec.m, "count_ball");
    if (max_points && Int(m) >= Int(spec.dim)) {
      // Cheap refusal before recursing: the cube-packing lower volume bound
      // already reveals hopeless sizes.
      const double r = std::sqrt(static_cast<double>(m));
      const double lower = volume_ball(spec.dim, r - std::sqrt(static_cast<double>(spec.dim)) / 2);
      if (lower > 2.0 * static_cast<double>(*max_points))
        throw ResourceError("count_ball: count exceeds the enumeration budget");
    }
    count = detail::count_ball_rec(spec.dim, m);
  }
  if (max_points && count > *max_points)
    throw ResourceError("count_ball: count exceeds the enumeration budget");
  return count;
}

inline Int count_ball(int dim, const Int& m,
                      std::optional<std::int64_t> max_points = std::nullopt) {
  return count_ball(BallSpec{dim, m}, max_points);
}

namespace detail {

inline void enum_shell_rec(Point& cur, int idx, const Int& rem, const Budget& budget,
                           PointList& out) {
  const auto emit = [&]() {
    if (static_cast<std::int64_t>(out.size()) >= budget.max_points)
      throw ResourceError("enumerate_shell: point count exceeds the enumeration budget");
    out.push_back(cur);
  };
  const int d = static_cast<int>(cur.size());
  if (idx == d - 1) {
    Int r;
    if (is_square(rem, &r)) {
      if (r == 0) {
        cur(idx) = 0;
        emit();
      } else {
        cur(idx) = -r;
        emit();
        cur(idx) = r;
        emit();
      }
    }
    return;
  }
  const Int s = isqrt_floor(rem);
  for (Int x = -s; x <= s; ++x) {
    cur(idx) = x;
    enum_shell_rec(cur, idx + 1, rem - x * x, budget, out);
  }
}

}  // namespace detail

// All lattice points of S_d(sqrt m), each exactly once, in ascending
// lexicographic order. Coordinate descent, pruned by the remaining budget
// m minus the partial sum of squares.
inline PointList enumerate_shell(const ShellSpec& spec, const Budget& budget = {}) {
  validate(spec);
  PointList out;
  Point cur(spec.dim);
  detail::enum_shell_rec(cur, 0, spec.m, budget, out);
  return out;
}

inline PointList enumerate_shell(int dim, const Int& m, const Budget& budget = {}) {
  return enumerate_shell(ShellSpec{dim, m}, budget);
}

}  // namespace collin
