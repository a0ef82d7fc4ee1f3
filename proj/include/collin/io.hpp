#pragma once

#include <cctype>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "collin/construct.hpp"
#include "collin/geometry.hpp"
#include "collin/types.hpp"
#include "collin/verify.hpp"

namespace collin {

namespace detail {

inline bool integer_token(const std::string& tok) {
  std::size_t i = (tok[0] == '+' || tok[0] == '-') ? 1 : 0;
  if (i == tok.size()) return false;
  for (; i < tok.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(tok[i]))) return false;
  return true;
}

inline Int parse_int(const std::string& tok, std::size_t line_no, const std::string& file) {
  if (tok.empty() || !integer_token(tok))
    throw ParseError(file + ":" + std::to_string(line_no) + ": not an integer: '" + tok + "'");
  return Int(tok);
}

inline std::vector<std::string> split_ws(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream is(line);
  std::string tok;
  while (is >> tok) out.push_back(tok);
  return out;
}

inline bool comment_or_blank(const std::string& line) {
  for (char ch : line) {
    if (ch == '#') return true;
    if (!std::isspace(static_cast<unsigned char>(ch))) return false;
  }
  return true;
}

inline std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open for writing: " + path.string());
  return os;
}

inline std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw ParseError("cannot open: " + path.string());
  return is;
}

}  // namespace detail

struct PointsFile {
  int dim = 0;
  PointList points;
};

// Point file: `d n` on the first data line, then n rows of d decimal
// integers. Lines starting with '#' are comments.
inline void write_points(const std::filesystem::path& path, const PointList& points, int dim,
                         const std::vector<std::string>& header_comments = {}) {
  std::ofstream os = detail::open_out(path);
  for (const std::string& c : header_comments) os << "# " << c << "\n";
  os << dim << " " << points.size() << "\n";
  for (const Point& p : points) {
    for (Eigen::Index i = 0; i < p.size(); ++i) {
      if (i) os << " ";
      os << p(i);
    }
    os << "\n";
  }
}

inline PointsFile read_points(const std::filesystem::path& path) {
  std::ifstream is = detail::open_in(path);
  const std::string file = path.filename().string();
  PointsFile out;
  std::string line;
  std::size_t line_no = 0;
  std::int64_t expected = -1;
  while (std::getline(is, line)) {
    ++line_no;
    if (detail::comment_or_blank(line)) continue;
    const std::vector<std::string> toks = detail::split_ws(line);
    if (expected < 0) {
      if (toks.size() != 2)
        throw ParseError(file + ":" + std::to_string(line_no) + ": header must be 'd n'");
      const Int d = detail::parse_int(toks[0], line_no, file);
      const Int n = detail::parse_int(toks[1], line_no, file);
      if (d < 1 || d > 1024)
        throw ParseError(file + ":" + std::to_string(line_no) + ": bad dimension");
      if (n < 0)
        throw ParseError(file + ":" + std::to_string(line_no) + ": bad point count");
      out.dim = d.convert_to<int>();
      expected = n.convert_to<std::int64_t>();
      continue;
    }
    if (static_cast<std::int64_t>(out.points.size()) >= expected)
      throw ParseError(file + ":" + std::to_string(line_no) + ": more rows than declared");
    if (static_cast<int>(toks.size()) != out.dim)
      throw ParseError(file + ":" + std::to_string(line_no) + ": expected " +
                       std::to_string(out.dim) + " coordinates, got " +
                       std::to_string(toks.size()));
    Point p(out.dim);
    for (int i = 0; i < out.dim; ++i) p(i) = detail::parse_int(toks[i], line_no, file);
    out.points.push_back(std::move(p));
  }
  if (expected < 0) throw ParseError(file + ": missing 'd n' header line");
  if (static_cast<std::int64_t>(out.points.size()) != expected)
    throw ParseError(file + ": declared " + std::to_string(expected) + " points, found " +
                     std::to_string(out.points.size()));
  return out;
}

// Witness certificate file. Header comments carry the run parameters and the
// sphere family; each data line is one witness pair `m_r m_ell p... q...`.
inline void write_witness(const std::filesystem::path& path, const ConstructedSet& set) {
  std::ofstream os = detail::open_out(path);
  os << "# parity " << (set.parity == Parity::even ? "even" : "odd") << "\n";
  os << "# d " << set.dim << "\n";
  os << "# k " << set.k << "\n";
  os << "# r0 " << set.r0 << "\n";
  os << "# m_r " << set.witness.m_r << "\n";
  os << "# m_ell " << set.witness.m_ell << "\n";
  os << "# radii";
  for (const Int& m : set.witness.radii) os << " " << m;
  os << "\n";
  if (set.witness.x0) os << "# x0 " << *set.witness.x0 << "\n";
  os << "# class_size " << set.stats.class_size << "\n";
  for (const WitnessPair& pair : set.witness.pairs) {
    os << set.witness.m_r << " " << set.witness.m_ell;
    for (Eigen::Index i = 0; i < pair.p.size(); ++i) os << " " << pair.p(i);
    for (Eigen::Index i = 0; i < pair.q.size(); ++i) os << " " << pair.q(i);
    os << "\n";
  }
}

struct WitnessData {
  Parity parity = Parity::even;
  int dim = 0;
  int k = 0;
  Int r0 = 0;
  Int m_r = 0;
  Int m_ell = 0;
  std::vector<Int> radii;
  std::optional<Int> x0;
  Int class_size = 0;
  std::vector<WitnessPair> pairs;
};

inline WitnessData read_witness(const std::filesystem::path& path) {
  std::ifstream is = detail::open_in(path);
  const std::string file = path.filename().string();
  WitnessData out;
  bool have_parity = false, have_d = false, have_k = false, have_r0 = false, have_mr = false,
       have_mell = false, have_radii = false;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    std::vector<std::string> toks = detail::split_ws(line);
    if (toks.empty()) continue;
    if (toks[0] == "#") {
      if (toks.size() < 3) continue;
      const std::string& key = toks[1];
      if (key == "parity") {
        if (toks[2] != "even" && toks[2] != "odd")
          throw ParseError(file + ":" + std::to_string(line_no) + ": bad parity");
        out.parity = toks[2] == "even" ? Parity::even : Parity::odd;
        have_parity = true;
      } else if (key == "d") {
        out.dim = detail::parse_int(toks[2], line_no, file).convert_to<int>();
        have_d = true;
      } else if (key == "k") {
        out.k = detail::parse_int(toks[2], line_no, file).convert_to<int>();
        have_k = true;
      } else if (key == "r0") {
        out.r0 = detail::parse_int(toks[2], line_no, file);
        have_r0 = true;
      } else if (key == "m_r") {
        out.m_r = detail::parse_int(toks[2], line_no, file);
        have_mr = true;
      } else if (key == "m_ell") {
        out.m_ell = detail::parse_int(toks[2], line_no, file);
        have_mell = true;
      } else if (key == "radii") {
        for (std::size_t i = 2; i < toks.size(); ++i)
          out.radii.push_back(detail::parse_int(toks[i], line_no, file));
        have_radii = true;
      } else if (key == "x0") {
        out.x0 = detail::parse_int(toks[2], line_no, file);
      } else if (key == "class_size") {
        out.class_size = detail::parse_int(toks[2], line_no, file);
      }
      continue;
    }
    if (detail::comment_or_blank(line)) continue;
    if (!have_d) throw ParseError(file + ":" + std::to_string(line_no) + ": pair before '# d'");
    if (static_cast<int>(toks.size()) != 2 + 2 * out.dim)
      throw ParseError(file + ":" + std::to_string(line_no) + ": expected " +
                       std::to_string(2 + 2 * out.dim) + " fields, got " +
                       std::to_string(toks.size()));
    const Int m_r = detail::parse_int(toks[0], line_no, file);
    const Int m_ell = detail::parse_int(toks[1], line_no, file);
    if (m_r != out.m_r || m_ell != out.m_ell)
      throw ParseError(file + ":" + std::to_string(line_no) +
                       ": pair line disagrees with header m_r/m_ell");
    WitnessPair pair;
    pair.p.resize(out.dim);
    pair.q.resize(out.dim);
    for (int i = 0; i < out.dim; ++i) pair.p(i) = detail::parse_int(toks[2 + i], line_no, file);
    for (int i = 0; i < out.dim; ++i)
      pair.q(i) = detail::parse_int(toks[2 + out.dim + i], line_no, file);
    out.pairs.push_back(std::move(pair));
  }
  if (!(have_parity && have_d && have_k && have_r0 && have_mr && have_mell && have_radii))
    throw ParseError(file + ": incomplete witness header");
  if (out.parity == Parity::odd && !out.x0)
    throw ParseError(file + ": odd witness missing '# x0'");
  return out;
}

// Census file: `k t_k` per line, ascending k, only nonzero entries.
inline void write_census(const std::filesystem::path& path, const Census& cen) {
  std::ofstream os = detail::open_out(path);
  for (const auto& [k, tk] : cen.exact_counts)
    if (tk > 0) os << k << " " << tk << "\n";
}

inline void write_report(const std::filesystem::path& path, const VerificationReport& report) {
  std::ofstream os = detail::open_out(path);
  os << report.render();
}

// Rebuild a ConstructedSet from its two files; stats are re-derived, not read.
inline ConstructedSet assemble_set(const PointsFile& pf, const WitnessData& wd,
                                   const Budget& budget = {}) {
  if (pf.dim != wd.dim) throw DomainError("assemble_set: point/witness dimension mismatch");
  ConstructedSet set;
  set.dim = wd.dim;
  set.k = wd.k;
  set.parity = wd.parity;
  set.r0 = wd.r0;
  set.points = pf.points;
  set.witness.m_r = wd.m_r;
  set.witness.m_ell = wd.m_ell;
  set.witness.radii = wd.radii;
  set.witness.x0 = wd.x0;
  set.witness.pairs = wd.pairs;
  set.stats = recompute_stats(set, budget);
  return set;
}

}  // namespace collin
