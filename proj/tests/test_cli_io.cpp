// Serialization formats (CSV / JSON / TSV / SVG) and end-to-end checks of
// the command-line tool through a subprocess.

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "sl2mag/io.hpp"

#ifdef SL2MAG_CLI_PATH
#include <sys/wait.h>
#endif

using namespace sl2mag;

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

io::TrajectoryFile sample_file() {
  io::TrajectoryFile file;
  file.meta.q = 3.25;
  file.meta.sigma = M_PI_2;
  file.meta.qbar = 3.25;
  file.meta.kappa_beta = kNan;
  file.meta.case_id = "case3";
  file.rows.push_back(io::make_row(0.0, 0.0, 1.25, 0.0, 0.0));
  file.rows.push_back(io::make_row(0.5, 1.0 / 3.0, 2.0, 7.0, 1.1));
  file.rows.push_back(io::make_row(1.0, -0.0, 1e-17, -2.5, 2.9));
  return file;
}

}  // namespace

TEST_CASE("shortest round trip double formatting") {
  for (const double v : {0.0, 1.0, -1.0, 0.5, 1.0 / 3.0, M_PI, 1e-300,
                         6.02214076e23, -17.25, 1e-9}) {
    const std::string s = io::format_double(v);
    const double back = io::parse_double(s);
    CHECK(back == v);
  }
  CHECK(io::format_double(0.5) == "0.5");
  CHECK(io::format_double(-1.0) == "-1");
  CHECK(io::format_double(0.0) == "0");
  // Signed zero keeps its sign through the round trip.
  CHECK(std::signbit(io::parse_double(io::format_double(-0.0))));
  // NaN serializes to "nan" and parses back to a NaN.
  CHECK(io::format_double(kNan) == "nan");
  CHECK(std::isnan(io::parse_double("nan")));
}

TEST_CASE("parse rejects malformed numbers") {
  CHECK_THROWS_AS(io::parse_double(""), io::ParseError);
  CHECK_THROWS_AS(io::parse_double("abc"), io::ParseError);
  CHECK_THROWS_AS(io::parse_double("1.5x"), io::ParseError);
  CHECK_THROWS_AS(io::parse_double(" 1.5"), io::ParseError);
}

TEST_CASE("angle reduction lands in the principal window") {
  CHECK(io::mod_2pi(0.0) == 0.0);
  CHECK(io::mod_2pi(2.0 * M_PI) == 0.0);
  CHECK(std::fabs(io::mod_2pi(7.0) - (7.0 - 2.0 * M_PI)) < 1e-15);
  CHECK(std::fabs(io::mod_2pi(-0.5) - (2.0 * M_PI - 0.5)) < 1e-15);
  for (const double th : {-100.0, -6.29, -1e-16, 1e-16, 12.56, 1e8}) {
    const double m = io::mod_2pi(th);
    CHECK(m >= 0.0);
    CHECK(m < 2.0 * M_PI);
  }
}

TEST_CASE("row construction fills the derived columns") {
  const io::TrajectoryRow r = io::make_row(0.25, 0.0, 1.0, 4.0 * M_PI + 0.3, 1.5);
  CHECK(std::fabs(r.theta_mod2pi - 0.3) < 1e-12);
  // (0, 1) is the disk origin.
  CHECK(std::fabs(r.disk_u) < 1e-15);
  CHECK(std::fabs(r.disk_v) < 1e-15);
  CHECK(r.s == 0.25);
  CHECK(r.U == 1.5);
}

TEST_CASE("trajectory csv round trips bit-exactly") {
  const io::TrajectoryFile file = sample_file();
  std::stringstream ss;
  io::write_trajectory_csv(ss, file);
  const std::string text = ss.str();
  CHECK(text.find("# q = 3.25\n") != std::string::npos);
  CHECK(text.find("# kappa_beta = nan\n") != std::string::npos);
  CHECK(text.find("# case = case3\n") != std::string::npos);
  CHECK(text.find("s,x,y,theta_unwrapped,theta_mod2pi,U,disk_u,disk_v\n") !=
        std::string::npos);

  std::stringstream in(text);
  const io::TrajectoryFile back = io::read_trajectory_csv(in);
  CHECK(back.meta.q == file.meta.q);
  CHECK(back.meta.sigma == file.meta.sigma);
  CHECK(back.meta.qbar == file.meta.qbar);
  CHECK(std::isnan(back.meta.kappa_beta));
  CHECK(back.meta.case_id == "case3");
  REQUIRE(back.rows.size() == file.rows.size());
  for (std::size_t i = 0; i < file.rows.size(); ++i) {
    CHECK(back.rows[i].s == file.rows[i].s);
    CHECK(back.rows[i].x == file.rows[i].x);
    CHECK(back.rows[i].y == file.rows[i].y);
    CHECK(back.rows[i].theta_unwrapped == file.rows[i].theta_unwrapped);
    CHECK(back.rows[i].theta_mod2pi == file.rows[i].theta_mod2pi);
    CHECK(back.rows[i].U == file.rows[i].U);
    CHECK(back.rows[i].disk_u == file.rows[i].disk_u);
    CHECK(back.rows[i].disk_v == file.rows[i].disk_v);
  }
  // Writing again produces identical bytes.
  std::stringstream again;
  io::write_trajectory_csv(again, back);
  CHECK(again.str() == text);
}

TEST_CASE("csv reader reports malformed input") {
  {
    std::stringstream in("1,2,3\n");
    CHECK_THROWS_AS(io::read_trajectory_csv(in), io::ParseError);
  }
  {
    std::stringstream in("# q = 1\n# unknown = 2\n");
    CHECK_THROWS_AS(io::read_trajectory_csv(in), io::ParseError);
  }
  {
    std::stringstream in(
        "s,x,y,theta_unwrapped,theta_mod2pi,U,disk_u,disk_v\n1,2,3\n");
    CHECK_THROWS_AS(io::read_trajectory_csv(in), io::ParseError);
  }
  {
    std::stringstream in("");
    CHECK_THROWS_AS(io::read_trajectory_csv(in), io::ParseError);
  }
}

TEST_CASE("trajectory json round trips with nan as null") {
  const io::TrajectoryFile file = sample_file();
  std::stringstream ss;
  io::write_trajectory_json(ss, file);
  const std::string text = ss.str();
  CHECK(text.find("\"kappa_beta\": null") != std::string::npos);

  std::stringstream in(text);
  const io::TrajectoryFile back = io::read_trajectory_json(in);
  CHECK(back.meta.q == file.meta.q);
  CHECK(std::isnan(back.meta.kappa_beta));
  CHECK(back.meta.case_id == "case3");
  REQUIRE(back.rows.size() == file.rows.size());
  CHECK(back.rows[1].x == file.rows[1].x);
  CHECK(back.rows[2].y == file.rows[2].y);

  std::stringstream bad("{\"meta\": {}}");
  CHECK_THROWS_AS(io::read_trajectory_json(bad), io::ParseError);
  std::stringstream junk("not json");
  CHECK_THROWS_AS(io::read_trajectory_json(junk), io::ParseError);
}

TEST_CASE("scan tsv layout is stable") {
  std::vector<io::ScanRow> rows(2);
  rows[0].m = 1;
  rows[0].k = 3;
  rows[0].sigma = 0.5;
  rows[0].q_accepted = {2.5, -1.0};
  rows[0].q_rejected = {"1.25(reason a)", "0.5(reason b)"};
  rows[0].t_phase = {1.1, 2.2};
  rows[0].defect = {0.0, 1e-9};
  rows[0].defect_perturbed = {0.01, 0.02};
  rows[1].m = 2;
  rows[1].k = 5;
  rows[1].sigma = 1.5;

  std::stringstream ss;
  io::write_scan_tsv(ss, rows);
  const std::string expected =
      "m\tk\tsigma\tq_accepted\tq_rejected\tT_phase\tdefect\t"
      "defect_perturbed\n"
      "1\t3\t0.5\t2.5;-1\t1.25(reason a);0.5(reason b)\t1.1;2.2\t0;1e-09\t"
      "0.01;0.02\n"
      "2\t5\t1.5\t\t\t\t\t\n";
  CHECK(ss.str() == expected);
}

TEST_CASE("figure svg has the four panels and is deterministic") {
  const io::TrajectoryFile file = sample_file();
  std::stringstream a, b;
  io::write_figure_svg(a, "T1: a<b&c", file);
  io::write_figure_svg(b, "T1: a<b&c", file);
  const std::string svg = a.str();
  CHECK(svg == b.str());
  CHECK(svg.rfind("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n", 0) == 0);
  CHECK(svg.find("<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" "
                 "height=\"668\"") != std::string::npos);
  CHECK(svg.find("T1: a&lt;b&amp;c") != std::string::npos);
  CHECK(svg.find(">half-plane<") != std::string::npos);
  CHECK(svg.find(">disk<") != std::string::npos);
  CHECK(svg.find(">torus view A<") != std::string::npos);
  CHECK(svg.find(">torus view B<") != std::string::npos);
  CHECK(svg.find("</svg>\n") != std::string::npos);
}

#ifdef SL2MAG_CLI_PATH

namespace {

std::filesystem::path test_dir() {
  const auto dir = std::filesystem::temp_directory_path() / "sl2mag-cli-tests";
  std::filesystem::create_directories(dir);
  return dir;
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string("\"") + SL2MAG_CLI_PATH + "\" " + args +
                          " > /dev/null 2>&1";
  const int rc = std::system(cmd.c_str());
  REQUIRE(rc != -1);
  REQUIRE(WIFEXITED(rc));
  return WEXITSTATUS(rc);
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("cli help and config errors") {
  CHECK(run_cli("--help") == 0);
  CHECK(run_cli("integrate --help") == 0);
  CHECK(run_cli("") == 2);                       // missing subcommand
  CHECK(run_cli("integrate --no-such-flag") == 2);
  CHECK(run_cli("integrate") == 2);              // --q is required
  CHECK(run_cli("figures --id BOGUS") == 2);
  CHECK(run_cli("integrate --q 3 --samples 1") == 2);
}

TEST_CASE("cli integrate writes a readable trajectory") {
  const auto out = test_dir() / "traj.csv";
  std::filesystem::remove(out);
  CHECK(run_cli("integrate --q 3.2 --span 2 --samples 5 --out " +
                out.string()) == 0);
  std::ifstream in(out);
  REQUIRE(in.good());
  const io::TrajectoryFile file = io::read_trajectory_csv(in);
  CHECK(file.meta.q == 3.2);
  CHECK(file.meta.sigma == M_PI_2);
  CHECK(file.meta.qbar == 3.2);
  CHECK(file.meta.case_id == "case3");
  REQUIRE(file.rows.size() == 5);
  CHECK(file.rows[0].s == 0.0);
  CHECK(std::fabs(file.rows[0].x) < 1e-15);
  CHECK(std::fabs(file.rows[0].y - 1.2) < 1e-12);
  for (const io::TrajectoryRow& r : file.rows) {
    CHECK(r.y > 0.0);
    CHECK(r.theta_mod2pi >= 0.0);
    CHECK(r.theta_mod2pi < 2.0 * M_PI);
    CHECK(r.disk_u * r.disk_u + r.disk_v * r.disk_v < 1.0);
  }
}

TEST_CASE("cli integrate json output") {
  const auto out = test_dir() / "traj.json";
  std::filesystem::remove(out);
  CHECK(run_cli("integrate --q 3.2 --samples 3 --format json --out " +
                out.string()) == 0);
  std::ifstream in(out);
  REQUIRE(in.good());
  const io::TrajectoryFile file = io::read_trajectory_json(in);
  CHECK(file.meta.q == 3.2);
  REQUIRE(file.rows.size() == 3);
}

TEST_CASE("cli oracle comparison gates the exit code") {
  const auto out = test_dir() / "traj-oracle.csv";
  // A generous tolerance passes ...
  CHECK(run_cli("integrate --q 2.8 --span 4 --samples 9 --oracle "
                "--oracle-tol 1e-6 --out " +
                out.string()) == 0);
  // ... an impossible one reports numerical failure.
  CHECK(run_cli("integrate --q 2.8 --span 4 --samples 9 --oracle "
                "--oracle-tol 1e-15 --out " +
                out.string()) == 3);
  // The oracle samples land next to the requested output.
  CHECK(std::filesystem::exists(test_dir() / "traj-oracle.oracle.csv"));
}

TEST_CASE("cli verify runs suites and fails on a corrupted table") {
  CHECK(run_cli("verify --suite connection") == 0);
  CHECK(run_cli("verify --suite curvature --corrupt-table") == 1);
  CHECK(run_cli("verify --suite no-such-suite") == 2);
}

TEST_CASE("cli scan emits the tsv schema") {
  const auto out = test_dir() / "scan.tsv";
  std::filesystem::remove(out);
  CHECK(run_cli("scan-periodic --m-max 1 --k-max 3 --sigma pi/3 --jobs 1 "
                "--out " + out.string()) == 0);
  const std::string text = slurp(out);
  CHECK(text.rfind("m\tk\tsigma\tq_accepted\tq_rejected\tT_phase\tdefect\t"
                   "defect_perturbed\n", 0) == 0);
  // The (1, 3, pi/3) row carries the exact root 11/4.
  CHECK(text.find("2.75") != std::string::npos);
  // Short spelling is an alias for the same subcommand.
  CHECK(run_cli("scan --m-max 1 --k-max 2 --sigma pi/3 --jobs 1 --out " +
                (test_dir() / "scan2.tsv").string()) == 0);
}

TEST_CASE("cli figures are deterministic files") {
  const auto dir = test_dir() / "figs";
  std::filesystem::remove_all(dir);
  CHECK(run_cli("figures --id L1 --samples 40 --out-dir " + dir.string()) == 0);
  const std::string first = slurp(dir / "L1.svg");
  CHECK(first.rfind("<?xml", 0) == 0);
  CHECK(run_cli("figures --id L1 --samples 40 --out-dir " + dir.string()) == 0);
  CHECK(slurp(dir / "L1.svg") == first);
}

TEST_CASE("cli iwasawa rejects non unimodular input") {
  CHECK(run_cli("iwasawa --entries 1 0 0 1") == 0);
  CHECK(run_cli("iwasawa --entries 1 1 1 1") == 2);
}

#endif  // SL2MAG_CLI_PATH
