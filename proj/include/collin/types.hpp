#pragma once

#include <Eigen/Core>

#include <boost/functional/hash.hpp>
#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/eigen.hpp>

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace collin {

// Exact arbitrary-precision signed integer. Every coordinate, squared radius
// and squared distance in this library is one of these; floating point never
// enters a geometric predicate.
using Int = boost::multiprecision::cpp_int;

template <typename Scalar>
using VecX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

// A lattice point in Z^d.
using Point = VecX<Int>;
using PointList = std::vector<Point>;

// Invalid arguments: bad dimensions, out-of-domain values, degenerate input.
struct DomainError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Work refused because it would exceed a configured budget or an internal
// table limit.
struct ResourceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed input file.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Enumeration limits: max_points caps materialized lattice points, max_pairs
// caps pair histograms. The CLI also honors COLLINEAR_BUDGET for max_points.
struct Budget {
  std::int64_t max_points = 100'000'000;
  std::int64_t max_pairs = 10'000'000;
};

namespace detail {

inline std::uint64_t u64_isqrt(std::uint64_t n) {
  if (n == 0) return 0;
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
  while (r > 0 && r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

}  // namespace detail

inline Int isqrt_floor(const Int& n) {
  if (n < 0) throw DomainError("isqrt_floor: negative argument");
  return boost::multiprecision::sqrt(n);
}

inline bool is_square(const Int& n, Int* root = nullptr) {
  if (n < 0) return false;
  Int r = boost::multiprecision::sqrt(n);
  if (root) *root = r;
  return r * r == n;
}

// cpp_int division truncates toward zero; this one rounds toward -inf.
inline Int floor_div(const Int& a, const Int& b) {
  Int q = a / b;
  Int r = a % b;
  if (r != 0 && ((r < 0) != (b < 0))) --q;
  return q;
}

template <typename DA, typename DB>
bool same_vec(const Eigen::MatrixBase<DA>& a, const Eigen::MatrixBase<DB>& b) {
  if (a.size() != b.size()) return false;
  for (Eigen::Index i = 0; i < a.size(); ++i)
    if (a(i) != b(i)) return false;
  return true;
}

template <typename DA, typename DB>
bool lex_less(const Eigen::MatrixBase<DA>& a, const Eigen::MatrixBase<DB>& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (a(i) < b(i)) return true;
    if (b(i) < a(i)) return false;
  }
  return false;
}

struct PointLess {
  bool operator()(const Point& a, const Point& b) const { return lex_less(a, b); }
};

struct PointEq {
  bool operator()(const Point& a, const Point& b) const { return same_vec(a, b); }
};

struct PointHash {
  std::size_t operator()(const Point& p) const {
    std::size_t h = boost::hash<std::size_t>{}(static_cast<std::size_t>(p.size()));
    boost::hash<Int> hi;
    for (Eigen::Index i = 0; i < p.size(); ++i) boost::hash_combine(h, hi(p(i)));
    return h;
  }
};

inline Point make_point(std::initializer_list<long long> coords) {
  Point p(static_cast<Eigen::Index>(coords.size()));
  Eigen::Index i = 0;
  for (long long c : coords) p(i++) = c;
  return p;
}

inline std::string to_string(const Point& p) {
  std::ostringstream os;
  os << "(";
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    if (i) os << ",";
    os << p(i);
  }
  os << ")";
  return os.str();
}

inline std::string to_string(const Int& n) { return n.str(); }

inline Int nc2(const Int& n) { return n * (n - 1) / 2; }

}  // namespace collin
