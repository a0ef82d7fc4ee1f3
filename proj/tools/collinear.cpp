// Command-line front end: build constructions, census point files, validate
// the counting lemmas, project to the plane, and export artifacts.
//
// Exit codes: 0 success, 1 usage/parse errors, 2 exhausted budgets,
// 3 verification or oracle failure.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "collin/construct.hpp"
#include "collin/geometry.hpp"
#include "collin/io.hpp"
#include "collin/lattice.hpp"
#include "collin/project.hpp"
#include "collin/verify.hpp"

namespace fs = std::filesystem;
using namespace collin;

namespace {

struct RunConfig {
  int dim = 2;
  int k = 4;
  std::int64_t r0 = 0;  // 0 selects the default 2^dim
  std::uint64_t seed = 0;
  int max_attempts = 10;
  std::string out_dir;
  std::string in_path;
  std::string out_path;
  std::string points_path;
  std::string witness_path;
  std::string format = "txt";
  bool oracle = false;
  int dmax = 6;
  std::int64_t mmax = 400;
  std::int64_t nmax = 100000;
  std::int64_t max_points = -1;  // -1 keeps the default
  std::int64_t max_pairs = -1;
};

Budget resolve_budget(const RunConfig& cfg) {
  Budget budget;
  if (const char* env = std::getenv("COLLINEAR_BUDGET")) {
    const std::string v(env);
    if (v.empty() || !detail::integer_token(v) || Int(v) < 1)
      throw DomainError("COLLINEAR_BUDGET must be a positive integer");
    if (Int(v) > std::numeric_limits<std::int64_t>::max())
      throw DomainError("COLLINEAR_BUDGET too large");
    budget.max_points = Int(v).convert_to<std::int64_t>();
  }
  if (cfg.max_points >= 0) budget.max_points = cfg.max_points;
  if (cfg.max_pairs >= 0) budget.max_pairs = cfg.max_pairs;
  if (budget.max_points < 1 || budget.max_pairs < 1)
    throw DomainError("budgets must be positive");
  return budget;
}

std::vector<std::string> map_header(const ProjectionMap& map) {
  std::ostringstream row;
  row << "map";
  for (int r = 0; r < 2; ++r)
    for (Eigen::Index c = 0; c < map.matrix.cols(); ++c) row << " " << map.matrix(r, c);
  return {"seed " + std::to_string(map.seed), "attempt " + std::to_string(map.attempts),
          row.str()};
}

int cmd_build(const RunConfig& cfg) {
  if (cfg.k < 4) {
    std::cerr << "build: k must be >= 4\n";
    return 1;
  }
  if (cfg.dim < 2) {
    std::cerr << "build: dim must be >= 2\n";
    return 1;
  }
  if (cfg.r0 < 0) {
    std::cerr << "build: r0 must be >= 1 (or omitted for the 2^dim default)\n";
    return 1;
  }
  const Budget budget = resolve_budget(cfg);
  ConstructionParams params;
  params.dim = cfg.dim;
  params.k = cfg.k;
  params.r0 = cfg.r0;
  params.budget = budget;

  const ConstructedSet set = construct(params);
  VerificationReport report = verify_construction(set, budget);
  const Census cen = census(set.points);
  const ProjectionResult proj = project_generic(set.points, cfg.seed, cfg.max_attempts);
  report.add("projection-accepted", true, "attempt " + std::to_string(proj.map.attempts));
  report.add("projection-census-equal", census(proj.image) == cen);
  for (const std::string& line : bound_report(set, cen)) report.diag.push_back(line);

  const fs::path out(cfg.out_dir);
  fs::create_directories(out);
  write_points(out / "points_d.txt", set.points, set.dim);
  write_points(out / "points_2d.txt", proj.image, 2, map_header(proj.map));
  write_witness(out / "witness.txt", set);
  write_report(out / "report.txt", report);
  std::cout << report.render();
  return report.all_pass() ? 0 : 3;
}

int cmd_census(const RunConfig& cfg) {
  const PointsFile pf = read_points(cfg.in_path);
  const Census cen = census(pf.points);
  if (cfg.oracle && census_bruteforce(pf.points) != cen) {
    std::cerr << "census: hash-map census and brute-force oracle disagree\n";
    return 3;
  }
  if (cfg.out_path.empty()) {
    for (const auto& [k, tk] : cen.exact_counts)
      if (tk > 0) std::cout << k << " " << tk << "\n";
  } else {
    write_census(cfg.out_path, cen);
  }
  return 0;
}

int cmd_lemmas(const RunConfig& cfg) {
  if (cfg.dmax < 3) {
    std::cerr << "lemmas: --dmax must be >= 3 (the shell bound needs d >= 3)\n";
    return 1;
  }
  if (cfg.mmax < cfg.dmax) {
    std::cerr << "lemmas: --mmax must be >= --dmax\n";
    return 1;
  }
  if (cfg.nmax < 1) {
    std::cerr << "lemmas: --nmax must be >= 1\n";
    return 1;
  }
  VerificationReport report;
  for (int d = 1; d <= cfg.dmax; ++d) {
    std::vector<Int> ms;
    for (std::int64_t m = d; m <= cfg.mmax; ++m) ms.push_back(m);
    for (CheckResult& c : check_lemma1(d, ms)) report.checks.push_back(std::move(c));
  }
  std::vector<int> dims;
  for (int d = 3; d <= cfg.dmax; ++d) dims.push_back(d);
  for (CheckResult& c : check_lemma2(dims, cfg.mmax, cfg.nmax))
    report.checks.push_back(std::move(c));
  if (!cfg.out_path.empty()) write_report(cfg.out_path, report);
  std::cout << report.render();
  return report.all_pass() ? 0 : 3;
}

int cmd_verify(const RunConfig& cfg) {
  const Budget budget = resolve_budget(cfg);
  const PointsFile pf = read_points(cfg.points_path);
  const WitnessData wd = read_witness(cfg.witness_path);
  const ConstructedSet set = assemble_set(pf, wd, budget);
  VerificationReport report = verify_construction(set, budget);
  report.add("witness-class-size-consistent", wd.class_size == set.stats.class_size,
             "header=" + to_string(wd.class_size) + " recomputed=" +
                 to_string(set.stats.class_size));
  if (!cfg.out_path.empty()) write_report(cfg.out_path, report);
  std::cout << report.render();
  return report.all_pass() ? 0 : 3;
}

int cmd_project(const RunConfig& cfg) {
  const PointsFile pf = read_points(cfg.in_path);
  const ProjectionResult proj = project_generic(pf.points, cfg.seed, cfg.max_attempts);
  write_points(cfg.out_path, proj.image, 2, map_header(proj.map));
  return 0;
}

int cmd_export(const RunConfig& cfg) {
  const PointsFile pf = read_points(cfg.in_path);
  std::ostringstream body;
  if (cfg.format == "txt") {
    body << pf.dim << " " << pf.points.size() << "\n";
    for (const Point& p : pf.points) {
      for (Eigen::Index i = 0; i < p.size(); ++i) body << (i ? " " : "") << p(i);
      body << "\n";
    }
  } else if (cfg.format == "csv") {
    for (const Point& p : pf.points) {
      for (Eigen::Index i = 0; i < p.size(); ++i) body << (i ? "," : "") << p(i);
      body << "\n";
    }
  } else if (cfg.format == "json") {
    nlohmann::json j;
    j["dim"] = pf.dim;
    j["n"] = pf.points.size();
    auto rows = nlohmann::json::array();
    for (const Point& p : pf.points) {
      auto row = nlohmann::json::array();
      for (Eigen::Index i = 0; i < p.size(); ++i) row.push_back(p(i).str());
      rows.push_back(std::move(row));
    }
    j["points"] = std::move(rows);
    body << j.dump(2) << "\n";
  } else {
    std::cerr << "export: unknown format '" << cfg.format << "' (txt, csv, json)\n";
    return 1;
  }
  if (cfg.out_path.empty()) {
    std::cout << body.str();
  } else {
    std::ofstream os(cfg.out_path);
    if (!os) {
      std::cerr << "export: cannot open " << cfg.out_path << "\n";
      return 1;
    }
    os << body.str();
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact constructions of planar point sets rich in collinear k-tuples"};
  app.require_subcommand(1);
  RunConfig cfg;

  CLI::App* build = app.add_subcommand("build", "run a construction and write its artifacts");
  build->add_option("--dim", cfg.dim, "ambient dimension (>= 2)")->required();
  build->add_option("--k", cfg.k, "points per witness line (>= 4)")->required();
  build->add_option("--r0", cfg.r0, "outer radius for the shell search (default 2^dim)");
  build->add_option("--seed", cfg.seed, "projection seed");
  build->add_option("--out", cfg.out_dir, "output directory")->required();
  build->add_option("--max-attempts", cfg.max_attempts, "projection attempts");
  build->add_option("--max-points", cfg.max_points, "enumeration budget");
  build->add_option("--max-pairs", cfg.max_pairs, "pair budget");

  CLI::App* census_cmd = app.add_subcommand("census", "line census of a point file");
  census_cmd->add_option("--in", cfg.in_path, "input point file")->required();
  census_cmd->add_option("--out", cfg.out_path, "output census file (default stdout)");
  census_cmd->add_flag("--oracle", cfg.oracle, "cross-check against the cubic oracle");

  CLI::App* lemmas = app.add_subcommand("lemmas", "validate the counting lemmas over a range");
  lemmas->add_option("--dmax", cfg.dmax, "largest dimension (>= 3)");
  lemmas->add_option("--mmax", cfg.mmax, "largest squared radius");
  lemmas->add_option("--nmax", cfg.nmax, "largest n for the two-squares/divisor bound");
  lemmas->add_option("--out", cfg.out_path, "also write the report here");

  CLI::App* verify_cmd = app.add_subcommand("verify", "re-check a stored certificate");
  verify_cmd->add_option("--points", cfg.points_path, "points_d.txt from a build")->required();
  verify_cmd->add_option("--witness", cfg.witness_path, "witness.txt from a build")->required();
  verify_cmd->add_option("--out", cfg.out_path, "also write the report here");
  verify_cmd->add_option("--max-points", cfg.max_points, "enumeration budget");
  verify_cmd->add_option("--max-pairs", cfg.max_pairs, "pair budget");

  CLI::App* project_cmd = app.add_subcommand("project", "project a point file to the plane");
  project_cmd->add_option("--in", cfg.in_path, "input point file")->required();
  project_cmd->add_option("--seed", cfg.seed, "projection seed");
  project_cmd->add_option("--out", cfg.out_path, "output 2d point file")->required();
  project_cmd->add_option("--max-attempts", cfg.max_attempts, "projection attempts");

  CLI::App* export_cmd = app.add_subcommand("export", "convert a point file");
  export_cmd->add_option("--in", cfg.in_path, "input point file")->required();
  export_cmd->add_option("--format", cfg.format, "txt, csv, or json");
  export_cmd->add_option("--out", cfg.out_path, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    if (build->parsed()) return cmd_build(cfg);
    if (census_cmd->parsed()) return cmd_census(cfg);
    if (lemmas->parsed()) return cmd_lemmas(cfg);
    if (verify_cmd->parsed()) return cmd_verify(cfg);
    if (project_cmd->parsed()) return cmd_project(cfg);
    if (export_cmd->parsed()) return cmd_export(cfg);
  } catch (const ResourceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
