// Command-line front end for the SL2R contact magnetic trajectory library.
//
// Subcommands:
//   integrate      closed-form trajectory run, optional independent-integrator
//                  cross-check, CSV/JSON export
//   scan-periodic  rational quantization scan over (m, k, sigma) grids (TSV)
//   figures        four-panel SVG reproduction of the five reference figures
//   verify         structure-verification suites (exit 1 on any failure)
//   exp            one-parameter subgroup run with projection classification
//   iwasawa        Iwasawa (NAK) decomposition of a single matrix
//
// Exit codes: 0 ok, 1 verification failure, 2 config error, 3 numerical
// failure.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <mutex>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "sl2mag/geometry.hpp"
#include "sl2mag/homogeneous.hpp"
#include "sl2mag/hopf_tube.hpp"
#include "sl2mag/hyperbolic.hpp"
#include "sl2mag/io.hpp"
#include "sl2mag/lie_core.hpp"
#include "sl2mag/numderiv.hpp"
#include "sl2mag/periodicity.hpp"
#include "sl2mag/trajectories.hpp"

namespace {

using namespace sl2mag;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailure = 1;
constexpr int kExitConfigError = 2;
constexpr int kExitNumericalFailure = 3;

// Thrown for bad parameter combinations detected past CLI11 parsing.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
// Thrown when a computation runs but produces out-of-tolerance results.
struct NumericError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Small utilities

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

// Accepts plain decimals ("1.25") and pi expressions ("pi", "-pi/4",
// "2pi/5", "2*pi/5").
double parse_angle(const std::string& text) {
  const std::string s = trim(text);
  const auto fail = [&]() -> double {
    throw ConfigError("cannot parse angle '" + text +
                      "' (expected a decimal or a pi expression like 2pi/5)");
  };
  try {
    const auto pos = s.find("pi");
    if (pos == std::string::npos) return io::parse_double(s);
    std::string pre = s.substr(0, pos);
    const std::string post = s.substr(pos + 2);
    if (!pre.empty() && pre.back() == '*') pre.pop_back();
    double coef = 1.0;
    if (pre == "-")
      coef = -1.0;
    else if (!pre.empty() && pre != "+")
      coef = io::parse_double(pre);
    double denom = 1.0;
    if (!post.empty()) {
      if (post.front() != '/') return fail();
      denom = io::parse_double(post.substr(1));
      if (denom == 0.0) return fail();
    }
    return coef * M_PI / denom;
  } catch (const io::ParseError&) {
    return fail();
  }
}

// Streams the writer either to stdout ("-" or empty path) or to a fresh file
// opened in binary mode so output bytes are platform-independent.
void write_output(const std::string& path,
                  const std::function<void(std::ostream&)>& writer) {
  if (path.empty() || path == "-") {
    writer(std::cout);
    std::cout.flush();
    return;
  }
  std::ofstream os(path, std::ios::binary);
  if (!os) throw ConfigError("cannot open output file '" + path + "'");
  writer(os);
  os.flush();
  if (!os) throw ConfigError("failed while writing '" + path + "'");
}

// Where human-readable notes go when the data file itself goes to stdout.
std::ostream& info_stream(const std::string& out_path) {
  return (out_path.empty() || out_path == "-") ? std::cerr : std::cout;
}

bool is_reeb(const MagneticParams& mp) {
  return std::fabs(mp.sin_sigma()) < 1e-15;
}

// Branch-consistent default sign for the radius parameter (magnitude 1).
double auto_rbar(const MagneticParams& mp) {
  const double qb = mp.qbar();
  if (is_reeb(mp)) return qb >= 0.0 ? 1.0 : -1.0;
  switch (classify_phase(mp)) {
    case PhaseCase::Case2:
      return 1.0;
    case PhaseCase::Case3:
      return qb > 0.0 ? 1.0 : -1.0;
    default:
      return -1.0;
  }
}

io::TrajectoryFile sample_reconstructed(const ReconstructedTrajectory& traj,
                                        double span, int samples) {
  const MagneticParams& mp = traj.params();
  io::TrajectoryFile file;
  file.meta.q = mp.q;
  file.meta.sigma = mp.sigma;
  file.meta.qbar = mp.qbar();
  if (is_reeb(mp)) {
    file.meta.kappa_beta = std::numeric_limits<double>::quiet_NaN();
    file.meta.case_id = "reeb";
  } else {
    file.meta.kappa_beta = traj.projected_curvature();
    file.meta.case_id = to_string(classify_phase(mp));
  }
  file.rows.reserve(samples);
  for (int i = 0; i < samples; ++i) {
    const double s = span * i / (samples - 1);
    const TrajectoryState st = traj.at(s);
    file.rows.push_back(io::make_row(st.s, st.x, st.y, st.theta, st.U));
  }
  return file;
}

// Converts raw integrator samples to the export schema.  U is recovered from
// (x, y) through the reconstruction parameter map (pure postprocessing of the
// integrator output) and unwrapped row to row.
io::TrajectoryFile sample_oracle(const std::vector<OracleSample>& samples,
                                 const io::TrajectoryFile& like,
                                 const ReconstructionParams& rc, double u0) {
  io::TrajectoryFile file;
  file.meta = like.meta;
  file.rows.reserve(samples.size());
  const MagneticParams mp{like.meta.q, like.meta.sigma};
  const double sin_s = mp.sin_sigma();
  double prev_u = u0;
  for (const OracleSample& os : samples) {
    double u = 0.0;
    if (std::fabs(sin_s) >= 1e-15) {
      const double su = (os.x - rc.x0) / (2.0 * rc.rbar * sin_s);
      const double cu = (mp.qbar() - os.y / rc.rbar) / (2.0 * sin_s);
      u = unwrap_near(std::atan2(su, cu), prev_u);
      prev_u = u;
    }
    file.rows.push_back(io::make_row(os.s, os.x, os.y, os.theta, u));
  }
  return file;
}

void write_trajectory(const std::string& path, const std::string& format,
                      const io::TrajectoryFile& file) {
  write_output(path, [&](std::ostream& os) {
    if (format == "json")
      io::write_trajectory_json(os, file);
    else
      io::write_trajectory_csv(os, file);
  });
}

// ---------------------------------------------------------------------------
// integrate

struct IntegrateOptions {
  double q = 0.0;
  std::string sigma_text = "pi/2";
  double rbar = 0.0;  // 0 = automatic sign, magnitude 1
  double x0 = 0.0;
  double theta0 = 0.0;
  double span = 0.0;  // 0 = default (3 phase periods when rotational, else 10)
  int periods = 0;
  int samples = 400;
  std::string out = "-";
  std::string format = "csv";
  bool oracle = false;
  std::string oracle_out;
  double oracle_tol = 1e-6;
};

int run_integrate(const IntegrateOptions& opt) {
  const MagneticParams mp{opt.q, parse_angle(opt.sigma_text)};
  if (opt.samples < 2) throw ConfigError("--samples must be at least 2");
  if (opt.span < 0.0) throw ConfigError("--span must be positive");
  if (opt.periods < 0) throw ConfigError("--periods must be positive");
  if (opt.span > 0.0 && opt.periods > 0)
    throw ConfigError("--span and --periods are mutually exclusive");

  double span = opt.span;
  if (opt.periods > 0) {
    span = opt.periods * phase_period(mp);  // throws if not rotational
  } else if (span == 0.0) {
    try {
      span = 3.0 * phase_period(mp);
    } catch (const NonRotationalPhase&) {
      span = 10.0;
    }
  }

  const ReconstructionParams rc{opt.rbar != 0.0 ? opt.rbar : auto_rbar(mp),
                                opt.x0, opt.theta0};
  const ReconstructedTrajectory traj(mp, rc);
  const io::TrajectoryFile file = sample_reconstructed(traj, span, opt.samples);
  write_trajectory(opt.out, opt.format, file);

  if (!opt.oracle) return kExitOk;

  // Cross-check against the adaptive integrator on the unreduced system.
  std::string oracle_path = opt.oracle_out;
  if (oracle_path.empty()) {
    if (opt.out.empty() || opt.out == "-")
      throw ConfigError(
          "--oracle needs a file --out (or an explicit --oracle-out) for the "
          "second trajectory file");
    const std::filesystem::path p(opt.out);
    std::filesystem::path q = p;
    q.replace_extension();
    oracle_path = q.string() + ".oracle" + p.extension().string();
  }
  const std::vector<OracleSample> oracle =
      integrate_oracle(traj.at(0.0), mp, span, 1e-10, opt.samples);
  double sup = 0.0;
  for (int i = 0; i < opt.samples; ++i) {
    const TrajectoryState st = traj.at(oracle[i].s);
    sup = std::max({sup, std::fabs(st.x - oracle[i].x),
                    std::fabs(st.y - oracle[i].y),
                    std::fabs(st.theta - oracle[i].theta)});
  }
  write_trajectory(oracle_path, opt.format,
                   sample_oracle(oracle, file, rc, traj.at(0.0).U));
  std::ostream& info = info_stream(opt.out);
  info << "oracle cross-check: sup-norm diff " << io::format_double(sup)
       << " over " << opt.samples << " samples (tol "
       << io::format_double(opt.oracle_tol) << ")\n";
  if (!(sup < opt.oracle_tol))
    throw NumericError("closed form and integrator disagree: sup-norm diff " +
                       io::format_double(sup) + " exceeds " +
                       io::format_double(opt.oracle_tol));
  return kExitOk;
}

// ---------------------------------------------------------------------------
// scan-periodic

struct ScanOptions {
  int m_max = 3;
  int k_max = 8;
  std::vector<std::string> sigma_texts;
  double tol = 1e-8;
  double perturb = 0.01;
  unsigned jobs = 0;  // 0 = available parallelism
  std::string out = "-";
};

io::ScanRow scan_one(int m, int k, double sigma, double tol, double perturb) {
  const PeriodicityCert cert = certify(m, k, sigma, tol);
  io::ScanRow row;
  row.m = m;
  row.k = k;
  row.sigma = sigma;
  const int window = std::max(4 * k, 2 * m);
  for (const PeriodicityCert::Root& root : cert.accepted) {
    row.q_accepted.push_back(root.q);
    row.t_phase.push_back(root.T_phase);
    row.defect.push_back(root.defect);
    double perturbed = std::numeric_limits<double>::quiet_NaN();
    try {
      perturbed = detect_closure(MagneticParams{root.q * (1.0 + perturb), sigma},
                                 window, tol)
                      .theta_defect;
    } catch (const NonRotationalPhase&) {
      // Perturbation pushed the root across the phase boundary; leave NaN.
    }
    row.defect_perturbed.push_back(perturbed);
  }
  for (const RejectedRoot& rej : cert.rejected)
    row.q_rejected.push_back(io::format_double(rej.q) + "(" + rej.reason + ")");
  return row;
}

int run_scan(const ScanOptions& opt) {
  if (opt.m_max < 1 || opt.k_max < 2)
    throw ConfigError("--m-max must be >= 1 and --k-max >= 2");
  if (!(opt.tol > 0.0)) throw ConfigError("--tol must be positive");

  std::vector<std::string> sigma_texts = opt.sigma_texts;
  if (sigma_texts.empty())
    sigma_texts = {"pi/6", "pi/4", "pi/3", "2pi/5", "pi/2"};
  std::vector<double> sigmas;
  for (const std::string& t : sigma_texts) {
    const double s = parse_angle(t);
    if (std::fabs(std::sin(s)) < 1e-12)
      throw ConfigError("sigma '" + t + "' has sin(sigma) = 0 (Reeb direction)");
    sigmas.push_back(s);
  }

  struct Node {
    int m, k;
    double sigma;
  };
  std::vector<Node> nodes;
  for (int m = 1; m <= opt.m_max; ++m)
    for (int k = m + 1; k <= opt.k_max; ++k) {
      if (std::gcd(m, k) != 1) continue;
      for (const double s : sigmas) nodes.push_back({m, k, s});
    }
  if (nodes.empty()) throw ConfigError("empty (m, k) grid");

  // Pure per-node workers; results land at their grid index, so the merged
  // table is byte-deterministic regardless of scheduling.
  std::vector<io::ScanRow> rows(nodes.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&]() {
    for (std::size_t i; (i = next.fetch_add(1)) < nodes.size();) {
      try {
        rows[i] = scan_one(nodes[i].m, nodes[i].k, nodes[i].sigma, opt.tol,
                           opt.perturb);
      } catch (...) {
        const std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        return;
      }
    }
  };
  unsigned jobs = opt.jobs != 0 ? opt.jobs : std::thread::hardware_concurrency();
  jobs = std::max(1u, std::min<unsigned>(jobs, nodes.size()));
  std::vector<std::thread> threads;
  for (unsigned t = 1; t < jobs; ++t) threads.emplace_back(worker);
  worker();
  for (std::thread& t : threads) t.join();
  if (failure) std::rethrow_exception(failure);

  write_output(opt.out,
               [&](std::ostream& os) { io::write_scan_tsv(os, rows); });
  return kExitOk;
}

// ---------------------------------------------------------------------------
// figures

struct FigureSpec {
  const char* id;
  int m, k;
  double sigma;
  bool legendre;
};

constexpr FigureSpec kFigureTable[] = {
    {"L1", 1, 3, M_PI_2, true},        {"L2", 3, 5, M_PI_2, true},
    {"L3", 2, 7, M_PI_2, true},        {"M4", 1, 3, 2.0 * M_PI / 5.0, false},
    {"M5", 3, 5, M_PI / 3.0, false},
};

struct FigureOptions {
  std::vector<std::string> ids;
  bool all = false;
  std::string out_dir = ".";
  int samples = 600;
};

std::pair<std::string, io::TrajectoryFile> build_figure(const FigureSpec& spec,
                                                        int samples) {
  std::ostringstream title;
  io::TrajectoryFile file;
  if (spec.legendre) {
    const double q = kajigaya_strength(spec.m, spec.k);
    const int h = legendre_branch_count(spec.m, spec.k);
    const LegendreTrajectory traj(q, 1.0, 0.0, 0.0);
    const double span = (h + 1) * traj.period();
    title << spec.id << ": m=" << spec.m << " k=" << spec.k << " h=" << h;
    file.meta.q = q;
    file.meta.sigma = M_PI_2;
    file.meta.qbar = q;
    file.meta.kappa_beta = q;
    file.meta.case_id = "legendre";
    for (int i = 0; i < samples; ++i) {
      const double s = span * i / (samples - 1);
      const TrajectoryState st = traj.at(s);
      file.rows.push_back(io::make_row(st.s, st.x, st.y, st.theta, st.U));
    }
  } else {
    const QuantizedRoots roots = quantized_strength(spec.m, spec.k, spec.sigma);
    if (roots.accepted.empty())
      throw NumericError(std::string("figure ") + spec.id +
                         ": quantization produced no admissible root");
    const double q = roots.accepted.front();
    const MagneticParams mp{q, spec.sigma};
    const ClosureResult closure =
        detect_closure(mp, std::max(4 * spec.k, 2 * spec.m));
    if (!closure.n_periods)
      throw NumericError(std::string("figure ") + spec.id +
                         ": trajectory did not close in the search window");
    const double span = *closure.n_periods * phase_period(mp);
    const ReconstructedTrajectory traj(mp, {auto_rbar(mp), 0.0, 0.0});
    title << spec.id << ": m=" << spec.m << " k=" << spec.k
          << " q=" << io::format_double(q);
    io::TrajectoryFile sampled = sample_reconstructed(traj, span, samples);
    file = std::move(sampled);
  }
  return {title.str(), std::move(file)};
}

int run_figures(const FigureOptions& opt) {
  std::vector<std::string> ids = opt.ids;
  if (opt.all) {
    ids.clear();
    for (const FigureSpec& spec : kFigureTable) ids.push_back(spec.id);
  }
  if (ids.empty())
    throw ConfigError("no figure selected (use --id L1..M5 or --all)");
  if (opt.samples < 2) throw ConfigError("--samples must be at least 2");
  std::filesystem::create_directories(opt.out_dir);
  for (const std::string& id : ids) {
    const FigureSpec* spec = nullptr;
    for (const FigureSpec& candidate : kFigureTable)
      if (id == candidate.id) spec = &candidate;
    if (spec == nullptr)
      throw ConfigError("unknown figure id '" + id +
                        "' (expected one of L1, L2, L3, M4, M5)");
    auto [title, file] = build_figure(*spec, opt.samples);
    const std::string path =
        (std::filesystem::path(opt.out_dir) / (id + ".svg")).string();
    write_output(path, [&](std::ostream& os) {
      io::write_figure_svg(os, title, file);
    });
    std::cout << "wrote " << path << " (" << file.rows.size() << " samples)\n";
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// verify

struct VerifyOptions {
  std::vector<std::string> suites;
  int samples = 300;
  std::uint64_t seed = 20260823u;
  bool corrupt_table = false;  // test mode: inject a curvature-table error
};

struct Check {
  std::string name;
  double residual = 0.0;
  double tol = 0.0;  // 0 means exact (integer) equality
};

using SuiteFn = std::vector<Check> (*)(const VerifyOptions&);

double frame_abs_max(const FrameVec& v) {
  return std::max({std::fabs(v.v1), std::fabs(v.v2), std::fabs(v.v3)});
}

std::vector<Check> suite_connection(const VerifyOptions&) {
  double residual = 0.0;
  for (int i = 1; i <= 3; ++i)
    for (int j = 1; j <= 3; ++j)
      residual = std::max(
          residual, frame_abs_max(nabla_frame(i, j) - nabla_frame_koszul(i, j)));
  return {{"connection table vs Koszul derivation", residual, 0.0}};
}

std::vector<Check> suite_curvature(const VerifyOptions& opt) {
  double residual = 0.0;
  bool first = true;
  for (int i = 1; i <= 3; ++i)
    for (int j = 1; j <= 3; ++j)
      for (int k = 1; k <= 3; ++k) {
        FrameVec table = curvature_frame(i, j, k);
        if (opt.corrupt_table && first) table.v1 += 1.0;
        first = false;
        residual = std::max(
            residual, frame_abs_max(table - curvature_frame_derived(i, j, k)));
      }
  const double phi_sect = curvature_frame(1, 2, 2).v1;
  return {{"27 curvature triples vs first-principles derivation", residual, 0.0},
          {"phi-sectional curvature equals -7", std::fabs(phi_sect + 7.0), 0.0}};
}

std::vector<Check> suite_sasakian(const VerifyOptions& opt) {
  const SasakianReport rep = verify_sasakian(opt.samples, opt.seed);
  return {{"Sasakian identities (" + std::to_string(rep.samples) + " samples)",
           rep.max_residual, 1e-9},
          {"d(eta) finite-difference cross-check",
           deta_fd_residual(64, 1e-5, opt.seed), 1e-7}};
}

std::vector<Check> suite_exp(const VerifyOptions& opt) {
  std::mt19937_64 rng(opt.seed);
  std::uniform_real_distribution<double> comp(-1.5, 1.5);
  std::uniform_real_distribution<double> ts(-2.5, 2.5);
  double exp_res = 0.0, rt_res = 0.0;
  for (int i = 0; i < 200; ++i) {
    const AlgebraVec X{comp(rng), comp(rng), comp(rng)};
    const double t = ts(rng);
    const Mat2 closed = exp_algebra(X, t);
    exp_res = std::max(exp_res, (closed - exp_oracle(X, t)).max_abs());
    const Mat2 back = iwasawa_compose(iwasawa_decompose(closed));
    rt_res = std::max(rt_res, (back - closed).max_abs());
  }
  return {{"closed-form exponential vs series oracle (200 draws)", exp_res,
           1e-10},
          {"Iwasawa decompose/compose round trip", rt_res, 1e-12}};
}

std::vector<Check> suite_trajectories(const VerifyOptions&) {
  struct TrialCase {
    double q, sigma, rbar, span;
  };
  constexpr TrialCase trials[] = {
      {0.8, 1.1, -1.0, 6.0},      // oscillating phase
      {2.0, M_PI_2, 1.0, 3.0},    // parabolic boundary (qbar = 2 sin sigma)
      {4.0, M_PI_2, 1.0, 6.0},    // rotational, positive strength
      {-4.0, M_PI_2, -1.0, 6.0},  // rotational, negative strength
      {-2.0, M_PI_2, -1.0, 3.0},  // dissipative boundary (qbar = -2 sin sigma)
  };
  double sup = 0.0;
  for (const TrialCase& tc : trials) {
    const MagneticParams mp{tc.q, tc.sigma};
    const ReconstructedTrajectory traj(mp, {tc.rbar, 0.2, -0.3});
    const auto oracle = integrate_oracle(traj.at(0.0), mp, tc.span, 1e-10, 121);
    for (const OracleSample& os : oracle) {
      const TrajectoryState st = traj.at(os.s);
      sup = std::max({sup, std::fabs(st.x - os.x), std::fabs(st.y - os.y),
                      std::fabs(st.theta - os.theta)});
    }
  }
  return {{"closed forms vs adaptive integrator (all phase cases)", sup, 1e-6}};
}

std::vector<Check> suite_quantization(const VerifyOptions&) {
  const QuantizedRoots roots = quantized_strength(1, 3, M_PI / 3.0);
  double root_res = std::numeric_limits<double>::infinity();
  if (roots.accepted.size() == 2)
    root_res = std::max(std::fabs(roots.accepted[0] - 2.75),
                        std::fabs(roots.accepted[1] + 1.0));
  double rel_res = 0.0;
  const double sigma_list[] = {M_PI / 6.0, M_PI / 4.0, M_PI / 3.0,
                               2.0 * M_PI / 5.0, M_PI_2};
  for (int m = 1; m <= 7; ++m)
    for (int k = m + 1; k <= 8; ++k) {
      if (std::gcd(m, k) != 1) continue;
      for (const double sigma : sigma_list)
        for (const double q : quantized_strength(m, k, sigma).accepted)
          rel_res = std::max(rel_res, period_relation_residual(m, k, sigma, q));
    }
  return {{"(1,3,pi/3) roots are exactly {11/4, -1}", root_res, 1e-12},
          {"period relation residual (coprime k <= 8)", rel_res, 1e-10}};
}

std::vector<Check> suite_closure(const VerifyOptions&) {
  double defect = 0.0;
  const std::pair<std::pair<int, int>, double> sets[] = {
      {{1, 3}, 2.0 * M_PI / 5.0}, {{3, 5}, M_PI / 3.0}};
  for (const auto& [mk, sigma] : sets) {
    const PeriodicityCert cert = certify(mk.first, mk.second, sigma);
    if (cert.accepted.empty())
      defect = std::numeric_limits<double>::infinity();
    for (const PeriodicityCert::Root& root : cert.accepted) {
      if (!root.n_periods) defect = std::numeric_limits<double>::infinity();
      defect = std::max(defect, root.defect);
    }
  }
  return {{"closure defects for the two quantized figure sets", defect, 1e-8}};
}

std::vector<Check> suite_conics(const VerifyOptions& opt) {
  double param_res = 0.0;
  for (const double sgn : {+1.0, -1.0}) {
    const ProjectionConic conic = project_exp_curve({1.0, -1.0, sgn * kSqrt2});
    param_res = std::max({param_res, std::fabs(std::fabs(conic.cx) - 1.0),
                          std::fabs(conic.cy - 1.0),
                          std::fabs(conic.radius - 1.0)});
  }
  {
    const ProjectionConic conic = project_exp_curve({0.0, 1.0, 0.0});
    param_res = std::max({param_res, std::fabs(conic.cx),
                          std::fabs(conic.cy - 0.5),
                          std::fabs(conic.radius - 0.5)});
  }
  {
    const ProjectionConic conic = project_exp_curve({1.0, 0.0, 0.0});
    param_res = std::max({param_res, std::fabs(conic.line_a),
                          std::fabs(conic.line_b - 1.0),
                          std::fabs(conic.line_c + 1.0)});
  }
  // Sampled implicit residuals over random directions.
  std::mt19937_64 rng(opt.seed + 1);
  std::uniform_real_distribution<double> comp(-1.0, 1.0);
  double sample_res = 0.0;
  for (int i = 0; i < 200; ++i) {
    const AlgebraVec X{comp(rng), comp(rng), comp(rng)};
    if (norm(X) < 0.3) continue;
    try {
      const ProjectionConic conic = project_exp_curve(X);
      const AlgebraVec unitX = X * (1.0 / norm(X));
      for (int j = 0; j <= 16; ++j) {
        const IwasawaCoord p = iwasawa_decompose(exp_algebra(unitX, 0.15 * j));
        sample_res =
            std::max(sample_res, std::fabs(conic.implicit_residual(p.x, p.y)));
      }
    } catch (const DegenerateProjection&) {
      continue;  // Reeb direction: the projection is a point
    }
  }
  return {{"reference projection conics (two horocycles, circle, line)",
           param_res, 1e-9},
          {"sampled conic implicit residuals (random directions)", sample_res,
           1e-7}};
}

std::vector<Check> suite_hopf_tube(const VerifyOptions&) {
  const RiemannianCircle base = riemannian_circle(3.0, 0.7, 0.0);
  const auto lift = horizontal_lift(base, 0.3);
  double eta_res = 0.0;
  for (int i = 0; i <= 40; ++i) {
    const double u = 0.2 + 2.6 * i / 40.0;
    const double xp = central_derivative(
        [&](double uu) { return lift(uu).x; }, u, kVelocityStep);
    const double thp = central_derivative(
        [&](double uu) { return lift(uu).theta; }, u, kVelocityStep);
    eta_res = std::max(eta_res, std::fabs(thp + xp / (2.0 * lift(u).y)));
  }

  const HopfTube tube(base, 0.0);
  double form_res = 0.0, flat_res = 0.0;
  for (const double u : {0.4, 1.1, 1.9}) {
    const TubeSecondForm form = tube_second_form_fd(tube, 0.25, u);
    form_res = std::max({form_res, std::fabs(form.h_tt - base.curvature()),
                         std::fabs(form.h_txi - 1.0), std::fabs(form.h_xixi)});
    flat_res = std::max(flat_res, std::fabs(gauss_curvature_f1(tube, u)));
  }

  const MagneticParams mp{3.1, 1.05};
  const ReconstructedTrajectory traj(mp, {auto_rbar(mp), -0.2, 0.15});
  const auto gamma = [&traj](double s) {
    const TrajectoryState st = traj.at(s);
    return IwasawaCoord{st.x, st.y, st.theta};
  };
  const TubeGeodesicReport rep = tube_geodesic_residual(gamma, 6.0, 33, 1e-7);

  return {{"horizontal lift is eta-horizontal", eta_res, 1e-9},
          {"second fundamental form equals (kappa, 1, 0)", form_res, 1e-6},
          {"intrinsic flatness (Gauss curvature)", flat_res, 1e-7},
          {"magnetic trajectory is a tube geodesic", rep.max_tangential, 1e-7}};
}

int run_verify(const VerifyOptions& opt) {
  const std::vector<std::pair<std::string, SuiteFn>> registry = {
      {"connection", suite_connection}, {"curvature", suite_curvature},
      {"sasakian", suite_sasakian},     {"exp", suite_exp},
      {"trajectories", suite_trajectories},
      {"quantization", suite_quantization},
      {"closure", suite_closure},       {"conics", suite_conics},
      {"hopf-tube", suite_hopf_tube},
  };
  std::vector<std::pair<std::string, SuiteFn>> selected;
  if (opt.suites.empty()) {
    selected = registry;
  } else {
    for (const std::string& want : opt.suites) {
      bool found = false;
      for (const auto& entry : registry)
        if (entry.first == want) {
          selected.push_back(entry);
          found = true;
        }
      if (!found) {
        std::string names;
        for (const auto& entry : registry)
          names += (names.empty() ? "" : ", ") + entry.first;
        throw ConfigError("unknown suite '" + want + "' (available: " + names +
                          ")");
      }
    }
  }

  bool all_passed = true;
  for (const auto& [name, fn] : selected) {
    for (const Check& check : fn(opt)) {
      const bool passed =
          check.tol == 0.0 ? check.residual == 0.0 : check.residual <= check.tol;
      all_passed = all_passed && passed;
      std::printf("[%s] %-58s residual %-12s (tol %s) %s\n", name.c_str(),
                  check.name.c_str(), io::format_double(check.residual).c_str(),
                  check.tol == 0.0 ? "exact" : io::format_double(check.tol).c_str(),
                  passed ? "ok" : "FAIL");
    }
  }
  std::printf("verify: %s\n", all_passed ? "all suites passed" : "FAILURES present");
  return all_passed ? kExitOk : kExitVerifyFailure;
}

// ---------------------------------------------------------------------------
// exp

struct ExpOptions {
  double a = 0.0, b = 0.0, c = 0.0;
  bool normalize = false;
  double span = 3.0;
  int samples = 256;
  std::string out = "-";
  std::string format = "csv";
};

int run_exp(const ExpOptions& opt) {
  AlgebraVec X{opt.a, opt.b, opt.c};
  const double n = norm(X);
  if (n < 1e-14)
    throw ConfigError("the direction (a, b, c) must be a nonzero vector");
  if (opt.normalize) X = X * (1.0 / n);
  if (opt.samples < 2) throw ConfigError("--samples must be at least 2");
  if (!(opt.span > 0.0)) throw ConfigError("--span must be positive");

  const double speed = norm(X);
  io::TrajectoryFile file;
  file.meta.q = homogeneous_strength(X);
  file.meta.sigma = contact_angle(X);
  file.meta.qbar = file.meta.q - 2.0 * std::cos(file.meta.sigma);
  file.meta.case_id = "exp";

  std::ostream& info = info_stream(opt.out);
  std::optional<ProjectionConic> conic;
  try {
    conic = project_exp_curve(X);
    file.meta.kappa_beta = conic->kappa;
  } catch (const DegenerateProjection&) {
    file.meta.kappa_beta = std::numeric_limits<double>::quiet_NaN();
  }

  double prev_mu = 0.0;
  bool have_mu = false;
  for (int i = 0; i < opt.samples; ++i) {
    const double t = opt.span * i / (opt.samples - 1);
    const Mat2 p = exp_algebra(X, t);
    // det drifts like eps * cosh^2(t |X|); scale the unimodularity gate.
    const IwasawaCoord coord =
        iwasawa_decompose(p, 1e-9 * (1.0 + p.max_abs() * p.max_abs()));
    const FrameVec w = leftinvariant_to_frame(X, coord.theta);
    double mu = prev_mu;
    if (std::hypot(w.v1, w.v2) > 1e-12) {
      const double raw = std::atan2(w.v2, w.v1);
      mu = have_mu ? unwrap_near(raw, prev_mu) : raw;
      have_mu = true;
    }
    prev_mu = mu;
    file.rows.push_back(io::make_row(t * speed, coord.x, coord.y, coord.theta, mu));
  }
  write_trajectory(opt.out, opt.format, file);

  info << "direction (" << io::format_double(X.a) << ", "
       << io::format_double(X.b) << ", " << io::format_double(X.c)
       << "), |X| = " << io::format_double(speed) << "\n";
  info << "contact angle sigma = " << io::format_double(file.meta.sigma)
       << ", homogeneous geodesic: "
       << (is_homogeneous_geodesic(X) ? "yes" : "no")
       << ", magnetic for q = " << io::format_double(file.meta.q) << "\n";
  if (conic) {
    if (conic->shape == ProjectionConic::Shape::Circle)
      info << "projection: circle center (" << io::format_double(conic->cx)
           << ", " << io::format_double(conic->cy) << ") radius "
           << io::format_double(conic->radius) << " [" << to_string(conic->kind)
           << (conic->fitted_numerically ? ", fitted numerically]" : "]")
           << "\n";
    else
      info << "projection: line " << io::format_double(conic->line_a) << " x + "
           << io::format_double(conic->line_b) << " y + "
           << io::format_double(conic->line_c) << " = 0 ["
           << to_string(conic->kind) << "]\n";
  } else {
    info << "projection: degenerate (Reeb direction; the curve is a fibre)\n";
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// iwasawa

struct IwasawaOptions {
  std::vector<double> entries;  // p11 p12 p21 p22
  double tol = 1e-9;
  std::string format = "text";
};

int run_iwasawa(const IwasawaOptions& opt) {
  Mat2 p;
  if (!opt.entries.empty()) {
    if (opt.entries.size() != 4)
      throw ConfigError("--entries needs exactly 4 values: p11 p12 p21 p22");
    p = {opt.entries[0], opt.entries[1], opt.entries[2], opt.entries[3]};
  } else {
    if (!(std::cin >> p.p11 >> p.p12 >> p.p21 >> p.p22))
      throw ConfigError(
          "expected 4 whitespace-separated matrix entries on stdin "
          "(row-major p11 p12 p21 p22)");
  }
  IwasawaCoord coord;
  try {
    coord = iwasawa_decompose(p, opt.tol);
  } catch (const NonUnitDeterminant& e) {
    throw ConfigError(std::string("input matrix is not in SL2R: ") + e.what());
  }
  const MobiusClass cls = classify_mobius(p);
  if (opt.format == "json") {
    std::cout << "{\n  \"x\": " << io::format_double(coord.x)
              << ",\n  \"y\": " << io::format_double(coord.y)
              << ",\n  \"theta\": " << io::format_double(coord.theta)
              << ",\n  \"trace\": " << io::format_double(p.trace())
              << ",\n  \"mobius_class\": \"" << to_string(cls) << "\"\n}\n";
  } else {
    std::cout << "x     = " << io::format_double(coord.x) << "\n"
              << "y     = " << io::format_double(coord.y) << "\n"
              << "theta = " << io::format_double(coord.theta) << "\n"
              << "trace = " << io::format_double(p.trace()) << "\n"
              << "class = " << to_string(cls) << "\n";
  }
  return kExitOk;
}

}  // namespace

// ---------------------------------------------------------------------------

int main(int argc, char** argv) {
  CLI::App app{
      "Contact magnetic trajectories on SL2R: closed-form runs, rational "
      "periodicity scans, figures, and structure verification"};
  app.require_subcommand(1);
  app.set_config("--config", "",
                 "Read option defaults from a TOML/INI file (explicit flags "
                 "win over file values)");

  IntegrateOptions integrate_opt;
  CLI::App* integrate = app.add_subcommand(
      "integrate", "Run a closed-form trajectory and export CSV/JSON");
  integrate->add_option("--q", integrate_opt.q, "Magnetic strength")->required();
  integrate->add_option("--sigma", integrate_opt.sigma_text,
                        "Contact angle (decimal or pi expression, e.g. 2pi/5)");
  integrate->add_option("--rbar", integrate_opt.rbar,
                        "Radius parameter; 0 picks magnitude 1 with the "
                        "branch-consistent sign");
  integrate->add_option("--x0", integrate_opt.x0, "Projection x offset");
  integrate->add_option("--theta0", integrate_opt.theta0, "Initial fibre angle");
  integrate->add_option("--span", integrate_opt.span, "Arclength span");
  integrate->add_option("--periods", integrate_opt.periods,
                        "Span as a number of phase periods (rotational only)");
  integrate->add_option("--samples", integrate_opt.samples, "Sample count");
  integrate->add_option("--out", integrate_opt.out, "Output path ('-' = stdout)");
  integrate->add_option("--format", integrate_opt.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  integrate->add_flag("--oracle", integrate_opt.oracle,
                      "Also integrate the unreduced system adaptively, write a "
                      "second file, and report the sup-norm difference");
  integrate->add_option("--oracle-out", integrate_opt.oracle_out,
                        "Path for the cross-check file");
  integrate->add_option("--oracle-tol", integrate_opt.oracle_tol,
                        "Sup-norm gate for the cross-check");

  ScanOptions scan_opt;
  CLI::App* scan = app.add_subcommand(
      "scan-periodic", "Quantize strengths over an (m, k, sigma) grid (TSV)");
  scan->alias("scan");
  scan->add_option("--m-max", scan_opt.m_max, "Largest numerator m");
  scan->add_option("--k-max", scan_opt.k_max, "Largest denominator k");
  scan->add_option("--sigma", scan_opt.sigma_texts,
                   "Contact angles (repeatable; pi expressions allowed)");
  scan->add_option("--tol", scan_opt.tol, "Closure tolerance");
  scan->add_option("--perturb", scan_opt.perturb,
                   "Relative strength perturbation for the negative-control "
                   "defect column");
  scan->add_option("--jobs", scan_opt.jobs,
                   "Worker threads (0 = available parallelism)");
  scan->add_option("--out", scan_opt.out, "Output path ('-' = stdout)");

  FigureOptions fig_opt;
  CLI::App* figures = app.add_subcommand(
      "figures", "Reproduce the reference four-panel SVG figures");
  figures->add_option("--id", fig_opt.ids,
                      "Figure ids (repeatable): L1, L2, L3, M4, M5");
  figures->add_flag("--all", fig_opt.all, "Render all five figures");
  figures->add_option("--out-dir", fig_opt.out_dir, "Output directory");
  figures->add_option("--samples", fig_opt.samples, "Samples per curve");

  VerifyOptions verify_opt;
  CLI::App* verify = app.add_subcommand(
      "verify", "Run the structure-verification suites (exit 1 on failure)");
  verify->add_option("--suite", verify_opt.suites,
                     "Only run the named suites (repeatable)");
  verify->add_option("--samples", verify_opt.samples,
                     "Random samples for the Sasakian suite");
  verify->add_option("--seed", verify_opt.seed, "Random seed");
  verify
      ->add_flag("--corrupt-table", verify_opt.corrupt_table,
                 "Test mode: corrupt one curvature entry to prove the gate "
                 "trips")
      ->group("");  // hidden from help

  ExpOptions exp_opt;
  CLI::App* exp_cmd = app.add_subcommand(
      "exp", "Run a one-parameter subgroup and classify its projection");
  exp_cmd->add_option("--a", exp_opt.a, "E1 component")->required();
  exp_cmd->add_option("--b", exp_opt.b, "E2 component")->required();
  exp_cmd->add_option("--c", exp_opt.c, "E3 component")->required();
  exp_cmd->add_flag("--normalize", exp_opt.normalize, "Scale X to unit norm");
  exp_cmd->add_option("--span", exp_opt.span, "Parameter span (t from 0)");
  exp_cmd->add_option("--samples", exp_opt.samples, "Sample count");
  exp_cmd->add_option("--out", exp_opt.out, "Output path ('-' = stdout)");
  exp_cmd->add_option("--format", exp_opt.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));

  IwasawaOptions iw_opt;
  CLI::App* iwasawa = app.add_subcommand(
      "iwasawa", "Decompose an SL2R matrix into N A K coordinates");
  iwasawa->add_option("--entries", iw_opt.entries,
                      "Row-major entries p11 p12 p21 p22 (else read stdin)")
      ->expected(4);
  iwasawa->add_option("--tol", iw_opt.tol, "Unimodularity tolerance");
  iwasawa->add_option("--format", iw_opt.format, "text or json")
      ->check(CLI::IsMember({"text", "json"}));

  int exit_code = kExitOk;
  try {
    app.parse(argc, argv);
    if (integrate->parsed()) exit_code = run_integrate(integrate_opt);
    if (scan->parsed()) exit_code = run_scan(scan_opt);
    if (figures->parsed()) exit_code = run_figures(fig_opt);
    if (verify->parsed()) exit_code = run_verify(verify_opt);
    if (exp_cmd->parsed()) exit_code = run_exp(exp_opt);
    if (iwasawa->parsed()) exit_code = run_iwasawa(iw_opt);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfigError;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const NumericError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumericalFailure;
  } catch (const io::ParseError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const StepUnderflow& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumericalFailure;
  } catch (const std::domain_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const std::out_of_range& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumericalFailure;
  }
  return exit_code;
}
