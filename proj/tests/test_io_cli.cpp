#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "collin/construct.hpp"
#include "collin/io.hpp"

using namespace collin;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "collin_tests" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

int run(const std::string& cmd) {
  const int status = std::system((cmd + " >/dev/null 2>&1").c_str());
  return WEXITSTATUS(status);
}

std::string slurp(const fs::path& p) {
  std::ifstream is(p);
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

const std::string bin = COLLINEAR_BIN;

}  // namespace

TEST_CASE("point file round trip, including huge coordinates") {
  const fs::path dir = fresh_dir("points_roundtrip");
  PointList pts = {make_point({1, -2, 3}), make_point({0, 0, 0})};
  Point big(3);
  big << Int("123456789012345678901234567890"), Int("-987654321098765432109876543210"), Int(7);
  pts.push_back(big);
  write_points(dir / "p.txt", pts, 3, {"round trip fixture"});
  const PointsFile back = read_points(dir / "p.txt");
  CHECK(back.dim == 3);
  REQUIRE(back.points.size() == pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) CHECK(same_vec(back.points[i], pts[i]));
}

TEST_CASE("point file parse errors name the line") {
  const fs::path dir = fresh_dir("points_errors");
  {
    std::ofstream os(dir / "bad_token.txt");
    os << "2 2\n1 2\n3 x\n";
  }
  try {
    read_points(dir / "bad_token.txt");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find(":3") != std::string::npos);
  }
  {
    std::ofstream os(dir / "bad_arity.txt");
    os << "3 1\n1 2\n";
  }
  CHECK_THROWS_AS(read_points(dir / "bad_arity.txt"), ParseError);
  {
    std::ofstream os(dir / "short.txt");
    os << "2 3\n1 2\n";
  }
  CHECK_THROWS_AS(read_points(dir / "short.txt"), ParseError);
  {
    std::ofstream os(dir / "no_header.txt");
    os << "# only comments\n";
  }
  CHECK_THROWS_AS(read_points(dir / "no_header.txt"), ParseError);
  {
    std::ofstream os(dir / "extra.txt");
    os << "2 1\n1 2\n3 4\n";
  }
  CHECK_THROWS_AS(read_points(dir / "extra.txt"), ParseError);
}

TEST_CASE("comments and blank lines are skipped") {
  const fs::path dir = fresh_dir("points_comments");
  {
    std::ofstream os(dir / "p.txt");
    os << "# leading comment\n\n2 2\n# interior\n1 2\n\n3 4\n";
  }
  const PointsFile pf = read_points(dir / "p.txt");
  CHECK(pf.dim == 2);
  CHECK(pf.points.size() == 2);
}

TEST_CASE("witness round trip, even and odd") {
  const fs::path dir = fresh_dir("witness_roundtrip");
  ConstructionParams params;
  params.dim = 2;
  params.k = 5;
  params.r0 = 3;
  const ConstructedSet odd = construct_odd(params);
  write_witness(dir / "w_odd.txt", odd);
  const WitnessData wd = read_witness(dir / "w_odd.txt");
  CHECK(wd.parity == Parity::odd);
  CHECK(wd.dim == odd.dim);
  CHECK(wd.k == odd.k);
  CHECK(wd.r0 == odd.r0);
  CHECK(wd.m_r == odd.witness.m_r);
  CHECK(wd.m_ell == odd.witness.m_ell);
  CHECK(wd.radii == odd.witness.radii);
  REQUIRE(wd.x0.has_value());
  CHECK(*wd.x0 == *odd.witness.x0);
  CHECK(wd.class_size == odd.stats.class_size);
  REQUIRE(wd.pairs.size() == odd.witness.pairs.size());
  for (std::size_t i = 0; i < wd.pairs.size(); ++i) {
    CHECK(same_vec(wd.pairs[i].p, odd.witness.pairs[i].p));
    CHECK(same_vec(wd.pairs[i].q, odd.witness.pairs[i].q));
  }

  params.k = 4;
  params.r0 = 5;
  const ConstructedSet even = construct_even(params);
  write_witness(dir / "w_even.txt", even);
  const WitnessData we = read_witness(dir / "w_even.txt");
  CHECK(we.parity == Parity::even);
  CHECK_FALSE(we.x0.has_value());
  CHECK(we.pairs.size() == even.witness.pairs.size());
}

TEST_CASE("witness parse errors") {
  const fs::path dir = fresh_dir("witness_errors");
  {
    std::ofstream os(dir / "incomplete.txt");
    os << "# parity even\n# d 2\n";
  }
  CHECK_THROWS_AS(read_witness(dir / "incomplete.txt"), ParseError);
  {
    std::ofstream os(dir / "mismatch.txt");
    os << "# parity even\n# d 2\n# k 4\n# r0 5\n# m_r 25\n# m_ell 50\n# radii 25 125\n"
       << "7 50 -5 0 0 -5\n";
  }
  CHECK_THROWS_AS(read_witness(dir / "mismatch.txt"), ParseError);
}

TEST_CASE("cli build writes a coherent run directory") {
  const fs::path dir = fresh_dir("cli_build");
  const std::string out = (dir / "run").string();
  CHECK(run(bin + " build --dim 2 --k 4 --r0 5 --seed 0 --out " + out) == 0);
  for (const char* name : {"points_d.txt", "points_2d.txt", "witness.txt", "report.txt"})
    CHECK(fs::exists(dir / "run" / name));

  const PointsFile source = read_points(dir / "run" / "points_d.txt");
  const PointsFile image = read_points(dir / "run" / "points_2d.txt");
  CHECK(image.dim == 2);
  CHECK(census(image.points) == census(source.points));

  const std::string report = slurp(dir / "run" / "report.txt");
  CHECK(report.find("FAIL") == std::string::npos);
  CHECK(report.find("CHECK gap-no-k-plus-1 PASS") != std::string::npos);
  CHECK(report.find("DIAG") != std::string::npos);
}

TEST_CASE("cli build usage errors exit 1") {
  const fs::path dir = fresh_dir("cli_usage");
  CHECK(run(bin + " build --k 3 --dim 2 --out " + (dir / "x").string()) == 1);
  CHECK(run(bin + " build --dim 2 --out " + (dir / "x").string()) == 1);  // missing --k
  CHECK(run(bin + " nonsense") == 1);
}

TEST_CASE("cli budget exhaustion exits 2") {
  const fs::path dir = fresh_dir("cli_budget");
  const std::string out = (dir / "run").string();
  CHECK(run(bin + " build --dim 2 --k 4 --r0 5 --max-points 3 --out " + out) == 2);
  CHECK(run("COLLINEAR_BUDGET=3 " + bin + " build --dim 2 --k 4 --r0 5 --out " + out) == 2);
  CHECK(run("COLLINEAR_BUDGET=banana " + bin + " build --dim 2 --k 4 --r0 5 --out " + out) == 1);
}

TEST_CASE("cli verify accepts a build and rejects a tampered one") {
  const fs::path dir = fresh_dir("cli_verify");
  const std::string out = (dir / "run").string();
  REQUIRE(run(bin + " build --dim 2 --k 4 --r0 5 --seed 0 --out " + out) == 0);
  CHECK(run(bin + " verify --points " + out + "/points_d.txt --witness " + out +
            "/witness.txt") == 0);

  // tamper: replace the first data row with a point off the sphere family
  PointsFile pf = read_points(dir / "run" / "points_d.txt");
  pf.points[0] = make_point({999, 998});
  write_points(dir / "run" / "points_d.txt", pf.points, pf.dim);
  CHECK(run(bin + " verify --points " + out + "/points_d.txt --witness " + out +
            "/witness.txt") == 3);
}

TEST_CASE("cli census matches fixtures and the oracle flag works") {
  const fs::path dir = fresh_dir("cli_census");
  {
    std::ofstream os(dir / "five.txt");
    os << "2 5\n0 0\n1 0\n2 0\n3 0\n4 0\n";
  }
  REQUIRE(run(bin + " census --in " + (dir / "five.txt").string() + " --out " +
              (dir / "five_census.txt").string()) == 0);
  CHECK(slurp(dir / "five_census.txt") == "5 1\n");

  {
    std::ofstream os(dir / "four.txt");
    os << "2 4\n0 0\n1 1\n2 2\n0 1\n";
  }
  REQUIRE(run(bin + " census --in " + (dir / "four.txt").string() + " --out " +
              (dir / "four_census.txt").string() + " --oracle") == 0);
  CHECK(slurp(dir / "four_census.txt") == "2 3\n3 1\n");

  {
    std::ofstream os(dir / "bad.txt");
    os << "2 2\n1 2\noops 4\n";
  }
  CHECK(run(bin + " census --in " + (dir / "bad.txt").string()) == 1);
  CHECK(run(bin + " census --in " + (dir / "missing.txt").string()) == 1);
}

TEST_CASE("cli lemmas ranges and usage") {
  CHECK(run(bin + " lemmas --dmax 3 --mmax 40 --nmax 500") == 0);
  CHECK(run(bin + " lemmas --dmax 2") == 1);
  CHECK(run(bin + " lemmas --dmax 4 --mmax 3") == 1);
}

TEST_CASE("cli build is byte-for-byte reproducible") {
  const fs::path dir = fresh_dir("cli_build_repro");
  const std::string a = (dir / "a").string(), b = (dir / "b").string();
  REQUIRE(run(bin + " build --dim 2 --k 5 --r0 6 --seed 0 --out " + a) == 0);
  REQUIRE(run(bin + " build --dim 2 --k 5 --r0 6 --seed 0 --out " + b) == 0);
  for (const char* name : {"points_d.txt", "points_2d.txt", "witness.txt", "report.txt"})
    CHECK(slurp(dir / "a" / name) == slurp(dir / "b" / name));
}

TEST_CASE("cli verify re-checks an odd build from its files") {
  const fs::path dir = fresh_dir("cli_verify_odd");
  const std::string out = (dir / "run").string();
  REQUIRE(run(bin + " build --dim 2 --k 5 --r0 6 --seed 0 --out " + out) == 0);
  CHECK(run(bin + " verify --points " + out + "/points_d.txt --witness " + out +
            "/witness.txt") == 0);
}

TEST_CASE("cli project is byte-for-byte reproducible") {
  const fs::path dir = fresh_dir("cli_project");
  const std::string out = (dir / "run").string();
  REQUIRE(run(bin + " build --dim 3 --k 4 --r0 4 --seed 0 --out " + out) == 0);
  const std::string src = out + "/points_d.txt";
  REQUIRE(run(bin + " project --in " + src + " --seed 0 --out " + (dir / "a.txt").string()) == 0);
  REQUIRE(run(bin + " project --in " + src + " --seed 0 --out " + (dir / "b.txt").string()) == 0);
  CHECK(slurp(dir / "a.txt") == slurp(dir / "b.txt"));
  CHECK(slurp(dir / "a.txt").find("# map ") != std::string::npos);
}

TEST_CASE("cli export formats") {
  const fs::path dir = fresh_dir("cli_export");
  {
    std::ofstream os(dir / "p.txt");
    os << "2 2\n1 -2\n30000000000000000000 4\n";
  }
  const std::string in = (dir / "p.txt").string();
  REQUIRE(run(bin + " export --in " + in + " --format json --out " + (dir / "p.json").string()) ==
          0);
  const auto j = nlohmann::json::parse(slurp(dir / "p.json"));
  CHECK(j["dim"] == 2);
  CHECK(j["n"] == 2);
  CHECK(j["points"][1][0] == "30000000000000000000");

  REQUIRE(run(bin + " export --in " + in + " --format csv --out " + (dir / "p.csv").string()) ==
          0);
  CHECK(slurp(dir / "p.csv") == "1,-2\n30000000000000000000,4\n");

  REQUIRE(run(bin + " export --in " + in + " --format txt --out " + (dir / "p2.txt").string()) ==
          0);
  const PointsFile back = read_points(dir / "p2.txt");
  CHECK(back.points.size() == 2);

  CHECK(run(bin + " export --in " + in + " --format yaml") == 1);
}
