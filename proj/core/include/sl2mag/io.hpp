#pragma once

// Deterministic serialization: trajectory CSV/JSON with a metadata header,
// periodicity-scan TSV, and four-panel SVG figures.  Floats in CSV/JSON use
// the shortest round-trip decimal form (std::to_chars); SVG coordinates are
// fixed 6-decimal.  Same inputs always produce the same bytes.

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace sl2mag::io {

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Shortest decimal form that parses back to the same double.
std::string format_double(double v);
/// Inverse of format_double (std::from_chars); throws ParseError.
double parse_double(std::string_view s);

// ---------------------------------------------------------------------------
// Trajectory files

struct TrajectoryMeta {
  double q = 0.0;
  double sigma = 0.0;
  double qbar = 0.0;
  double kappa_beta = 0.0;  ///< projected curvature; NaN when undefined
  std::string case_id;      ///< e.g. "case-3", "legendre", "reeb", "exp"
};

struct TrajectoryRow {
  double s = 0.0;
  double x = 0.0;
  double y = 1.0;
  double theta_unwrapped = 0.0;
  double theta_mod2pi = 0.0;  ///< in [0, 2 pi)
  double U = 0.0;             ///< phase variable (mu for Legendre, exp runs)
  double disk_u = 0.0;        ///< Cayley image of (x, y)
  double disk_v = 0.0;
};

/// Reduction of theta to [0, 2 pi).
double mod_2pi(double theta);

/// Builds a row from raw curve data: fills theta_mod2pi and the Cayley disk
/// coordinates from (x, y, theta).
TrajectoryRow make_row(double s, double x, double y, double theta_unwrapped,
                       double U);

struct TrajectoryFile {
  TrajectoryMeta meta;
  std::vector<TrajectoryRow> rows;
};

/// CSV layout: `# key = value` metadata lines (q, sigma, qbar, kappa_beta,
/// case), one header row, then one line per sample.
void write_trajectory_csv(std::ostream& os, const TrajectoryFile& file);
TrajectoryFile read_trajectory_csv(std::istream& is);

/// JSON mirror of the CSV fields: {"meta": {...}, "rows": [{...}]}.
void write_trajectory_json(std::ostream& os, const TrajectoryFile& file);
TrajectoryFile read_trajectory_json(std::istream& is);

// ---------------------------------------------------------------------------
// Periodicity scan table

/// One row per (m, k, sigma) grid node.  List-valued columns are
/// semicolon-joined (empty cell when the list is empty); t_phase and defect
/// entries are aligned with q_accepted, and defect_perturbed holds the
/// closure defect after a +1% perturbation of each accepted root (negative
/// control).
struct ScanRow {
  int m = 0;
  int k = 0;
  double sigma = 0.0;
  std::vector<double> q_accepted;
  std::vector<std::string> q_rejected;  ///< "value(reason)" entries
  std::vector<double> t_phase;
  std::vector<double> defect;
  std::vector<double> defect_perturbed;
};

void write_scan_tsv(std::ostream& os, const std::vector<ScanRow>& rows);

// ---------------------------------------------------------------------------
// Four-panel SVG figures
//
// Panels: (1) the projected curve in the half-plane, (2) its Cayley image in
// the unit disk, (3) and (4) two axonometric views of the trajectory on the
// solid torus via (u, v, theta) -> ((R + rho u) cos theta,
// (R + rho u) sin theta, rho v) with R = 2, rho = 1.

void write_figure_svg(std::ostream& os, const std::string& title,
                      const TrajectoryFile& file);

}  // namespace sl2mag::io
