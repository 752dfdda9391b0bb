#include "sl2mag/io.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "sl2mag/hyperbolic.hpp"

namespace sl2mag::io {

namespace {

constexpr double kTwoPi = 2.0 * M_PI;

const char* const kCsvHeader =
    "s,x,y,theta_unwrapped,theta_mod2pi,U,disk_u,disk_v";

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : line) {
    if (ch == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  out.push_back(cur);
  return out;
}

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  std::size_t e = s.find_last_not_of(" \t\r");
  if (b == std::string::npos) return "";
  return s.substr(b, e - b + 1);
}

std::string join_doubles(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out.push_back(';');
    out += format_double(v[i]);
  }
  return out;
}

std::string escape_xml(const std::string& s) {
  std::string out;
  for (char ch : s) {
    switch (ch) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      default: out.push_back(ch);
    }
  }
  return out;
}

// Fixed 6-decimal SVG coordinate formatting.
std::string fmt6(double v) {
  std::array<char, 48> buf{};
  // Avoid the signed-zero "-0.000000" artifact for determinism.
  if (v == 0.0) v = 0.0;
  std::snprintf(buf.data(), buf.size(), "%.6f", v);
  return buf.data();
}

}  // namespace

std::string format_double(double v) {
  std::array<char, 64> buf{};
  auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

double parse_double(std::string_view s) {
  double v = 0.0;
  const char* begin = s.data();
  const char* end = s.data() + s.size();
  auto res = std::from_chars(begin, end, v);
  if (res.ec != std::errc{} || res.ptr != end) {
    throw ParseError("cannot parse floating-point value: '" + std::string(s) +
                     "'");
  }
  return v;
}

double mod_2pi(double theta) {
  double m = std::fmod(theta, kTwoPi);
  if (m < 0.0) m += kTwoPi;
  // fmod of a slightly negative value can land exactly on 2 pi after the
  // correction; fold it back to 0.
  if (m >= kTwoPi) m = 0.0;
  return m;
}

TrajectoryRow make_row(double s, double x, double y, double theta_unwrapped,
                       double U) {
  TrajectoryRow r;
  r.s = s;
  r.x = x;
  r.y = y;
  r.theta_unwrapped = theta_unwrapped;
  r.theta_mod2pi = mod_2pi(theta_unwrapped);
  r.U = U;
  const auto disk = cayley_to_disk({x, y});
  r.disk_u = disk.first;
  r.disk_v = disk.second;
  return r;
}

// ---------------------------------------------------------------------------
// CSV

void write_trajectory_csv(std::ostream& os, const TrajectoryFile& file) {
  const TrajectoryMeta& m = file.meta;
  os << "# q = " << format_double(m.q) << "\n";
  os << "# sigma = " << format_double(m.sigma) << "\n";
  os << "# qbar = " << format_double(m.qbar) << "\n";
  os << "# kappa_beta = " << format_double(m.kappa_beta) << "\n";
  os << "# case = " << m.case_id << "\n";
  os << kCsvHeader << "\n";
  for (const TrajectoryRow& r : file.rows) {
    os << format_double(r.s) << ',' << format_double(r.x) << ','
       << format_double(r.y) << ',' << format_double(r.theta_unwrapped) << ','
       << format_double(r.theta_mod2pi) << ',' << format_double(r.U) << ','
       << format_double(r.disk_u) << ',' << format_double(r.disk_v) << "\n";
  }
}

TrajectoryFile read_trajectory_csv(std::istream& is) {
  TrajectoryFile file;
  std::string line;
  bool header_seen = false;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      const std::size_t eq = line.find('=');
      if (eq == std::string::npos)
        throw ParseError("malformed metadata line: " + line);
      const std::string key = trim(line.substr(1, eq - 1));
      const std::string value = trim(line.substr(eq + 1));
      if (key == "q") file.meta.q = parse_double(value);
      else if (key == "sigma") file.meta.sigma = parse_double(value);
      else if (key == "qbar") file.meta.qbar = parse_double(value);
      else if (key == "kappa_beta") file.meta.kappa_beta = parse_double(value);
      else if (key == "case") file.meta.case_id = value;
      else throw ParseError("unknown metadata key: " + key);
      continue;
    }
    if (!header_seen) {
      if (line != kCsvHeader)
        throw ParseError("unexpected CSV header: " + line);
      header_seen = true;
      continue;
    }
    const auto fields = split(line, ',');
    if (fields.size() != 8)
      throw ParseError("expected 8 CSV fields, got " +
                       std::to_string(fields.size()));
    TrajectoryRow r;
    r.s = parse_double(fields[0]);
    r.x = parse_double(fields[1]);
    r.y = parse_double(fields[2]);
    r.theta_unwrapped = parse_double(fields[3]);
    r.theta_mod2pi = parse_double(fields[4]);
    r.U = parse_double(fields[5]);
    r.disk_u = parse_double(fields[6]);
    r.disk_v = parse_double(fields[7]);
    file.rows.push_back(r);
  }
  if (!header_seen) throw ParseError("missing CSV header row");
  return file;
}

// ---------------------------------------------------------------------------
// JSON (numbers stay numbers; NaN round-trips through null)

namespace {

nlohmann::json num_or_null(double v) {
  if (std::isnan(v)) return nullptr;
  return v;
}

double null_or_num(const nlohmann::json& j, const char* key) {
  const auto& v = j.at(key);
  if (v.is_null()) return std::numeric_limits<double>::quiet_NaN();
  return v.get<double>();
}

}  // namespace

void write_trajectory_json(std::ostream& os, const TrajectoryFile& file) {
  nlohmann::json j;
  j["meta"] = {{"q", num_or_null(file.meta.q)},
               {"sigma", num_or_null(file.meta.sigma)},
               {"qbar", num_or_null(file.meta.qbar)},
               {"kappa_beta", num_or_null(file.meta.kappa_beta)},
               {"case", file.meta.case_id}};
  nlohmann::json rows = nlohmann::json::array();
  for (const TrajectoryRow& r : file.rows) {
    rows.push_back({{"s", num_or_null(r.s)},
                    {"x", num_or_null(r.x)},
                    {"y", num_or_null(r.y)},
                    {"theta_unwrapped", num_or_null(r.theta_unwrapped)},
                    {"theta_mod2pi", num_or_null(r.theta_mod2pi)},
                    {"U", num_or_null(r.U)},
                    {"disk_u", num_or_null(r.disk_u)},
                    {"disk_v", num_or_null(r.disk_v)}});
  }
  j["rows"] = std::move(rows);
  os << j.dump(2) << "\n";
}

TrajectoryFile read_trajectory_json(std::istream& is) {
  nlohmann::json j;
  try {
    is >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad JSON: ") + e.what());
  }
  try {
    TrajectoryFile file;
    const auto& meta = j.at("meta");
    file.meta.q = null_or_num(meta, "q");
    file.meta.sigma = null_or_num(meta, "sigma");
    file.meta.qbar = null_or_num(meta, "qbar");
    file.meta.kappa_beta = null_or_num(meta, "kappa_beta");
    file.meta.case_id = meta.at("case").get<std::string>();
    for (const auto& row : j.at("rows")) {
      TrajectoryRow r;
      r.s = null_or_num(row, "s");
      r.x = null_or_num(row, "x");
      r.y = null_or_num(row, "y");
      r.theta_unwrapped = null_or_num(row, "theta_unwrapped");
      r.theta_mod2pi = null_or_num(row, "theta_mod2pi");
      r.U = null_or_num(row, "U");
      r.disk_u = null_or_num(row, "disk_u");
      r.disk_v = null_or_num(row, "disk_v");
      file.rows.push_back(r);
    }
    return file;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad trajectory JSON layout: ") + e.what());
  }
}

// ---------------------------------------------------------------------------
// Scan TSV

void write_scan_tsv(std::ostream& os, const std::vector<ScanRow>& rows) {
  os << "m\tk\tsigma\tq_accepted\tq_rejected\tT_phase\tdefect\t"
        "defect_perturbed\n";
  for (const ScanRow& r : rows) {
    os << r.m << '\t' << r.k << '\t' << format_double(r.sigma) << '\t'
       << join_doubles(r.q_accepted) << '\t';
    for (std::size_t i = 0; i < r.q_rejected.size(); ++i) {
      if (i) os << ';';
      os << r.q_rejected[i];
    }
    os << '\t' << join_doubles(r.t_phase) << '\t' << join_doubles(r.defect)
       << '\t' << join_doubles(r.defect_perturbed) << "\n";
  }
}

// ---------------------------------------------------------------------------
// SVG figures

namespace {

struct Poly {
  std::vector<std::pair<double, double>> pts;
  const char* stroke;
  double width;
};

// Renders polylines into a panel rectangle with uniform scaling (y up).
void render_panel(std::ostream& os, double px, double py, double pw, double ph,
                  const std::string& label, const std::vector<Poly>& polys) {
  double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
  for (const Poly& p : polys) {
    for (const auto& [x, y] : p.pts) {
      xmin = std::min(xmin, x);
      xmax = std::max(xmax, x);
      ymin = std::min(ymin, y);
      ymax = std::max(ymax, y);
    }
  }
  if (!(xmax >= xmin)) {
    xmin = -1.0;
    xmax = 1.0;
    ymin = -1.0;
    ymax = 1.0;
  }
  const double dx = std::max(xmax - xmin, 1e-12);
  const double dy = std::max(ymax - ymin, 1e-12);
  const double margin = 0.08;
  const double scale =
      std::min(pw * (1.0 - 2.0 * margin) / dx, ph * (1.0 - 2.0 * margin) / dy);
  const double cx = 0.5 * (xmin + xmax), cy = 0.5 * (ymin + ymax);
  const double ox = px + 0.5 * pw, oy = py + 0.5 * ph;

  os << "<rect x=\"" << fmt6(px) << "\" y=\"" << fmt6(py) << "\" width=\""
     << fmt6(pw) << "\" height=\"" << fmt6(ph)
     << "\" fill=\"none\" stroke=\"#999999\" stroke-width=\"0.8\"/>\n";
  for (const Poly& p : polys) {
    if (p.pts.size() < 2) continue;
    os << "<polyline fill=\"none\" stroke=\"" << p.stroke
       << "\" stroke-width=\"" << fmt6(p.width) << "\" points=\"";
    bool first = true;
    for (const auto& [x, y] : p.pts) {
      if (!first) os << ' ';
      first = false;
      os << fmt6(ox + (x - cx) * scale) << ',' << fmt6(oy - (y - cy) * scale);
    }
    os << "\"/>\n";
  }
  os << "<text x=\"" << fmt6(px + 6.0) << "\" y=\"" << fmt6(py + 16.0)
     << "\" font-family=\"monospace\" font-size=\"12\" fill=\"#333333\">"
     << escape_xml(label) << "</text>\n";
}

std::array<double, 3> torus_embed(double u, double v, double theta) {
  const double R = 2.0, rho = 1.0;
  return {(R + rho * u) * std::cos(theta), (R + rho * u) * std::sin(theta),
          rho * v};
}

std::pair<double, double> axonometric(const std::array<double, 3>& p,
                                      double az, double el) {
  const double a = p[0] * std::cos(az) + p[1] * std::sin(az);
  const double b = -p[0] * std::sin(az) + p[1] * std::cos(az);
  return {a, p[2] * std::cos(el) - b * std::sin(el)};
}

std::vector<Poly> torus_view(const std::vector<TrajectoryRow>& rows, double az,
                             double el) {
  std::vector<Poly> polys;
  // Wireframe: outer equator plus four meridian rings.
  Poly equator{{}, "#cccccc", 0.6};
  for (int i = 0; i <= 128; ++i) {
    const double th = kTwoPi * i / 128;
    equator.pts.push_back(axonometric(torus_embed(1.0, 0.0, th), az, el));
  }
  polys.push_back(std::move(equator));
  for (int m = 0; m < 4; ++m) {
    const double th = 0.5 * M_PI * m;
    Poly ring{{}, "#cccccc", 0.6};
    for (int i = 0; i <= 64; ++i) {
      const double phi = kTwoPi * i / 64;
      ring.pts.push_back(
          axonometric(torus_embed(std::cos(phi), std::sin(phi), th), az, el));
    }
    polys.push_back(std::move(ring));
  }
  Poly curve{{}, "#1f77b4", 1.3};
  for (const TrajectoryRow& r : rows) {
    curve.pts.push_back(axonometric(
        torus_embed(r.disk_u, r.disk_v, r.theta_mod2pi), az, el));
  }
  polys.push_back(std::move(curve));
  return polys;
}

}  // namespace

void write_figure_svg(std::ostream& os, const std::string& title,
                      const TrajectoryFile& file) {
  const std::vector<TrajectoryRow>& rows = file.rows;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" "
        "height=\"668\" viewBox=\"0 0 640 668\">\n"
     << "<rect width=\"640\" height=\"668\" fill=\"#ffffff\"/>\n"
     << "<text x=\"10\" y=\"20\" font-family=\"monospace\" font-size=\"14\" "
        "fill=\"#000000\">"
     << escape_xml(title) << "</text>\n";

  // Panel 1: half-plane curve with the boundary line y = 0.
  {
    std::vector<Poly> polys;
    Poly curve{{}, "#1f77b4", 1.3};
    double xmin = 1e300, xmax = -1e300;
    for (const TrajectoryRow& r : rows) {
      curve.pts.push_back({r.x, r.y});
      xmin = std::min(xmin, r.x);
      xmax = std::max(xmax, r.x);
    }
    if (xmax >= xmin) {
      const double pad = 0.1 * std::max(xmax - xmin, 1.0);
      Poly axis{{{xmin - pad, 0.0}, {xmax + pad, 0.0}}, "#999999", 0.8};
      polys.push_back(std::move(axis));
    }
    polys.push_back(std::move(curve));
    render_panel(os, 10, 34, 300, 300, "half-plane", polys);
  }
  // Panel 2: Cayley disk.
  {
    std::vector<Poly> polys;
    Poly circle{{}, "#999999", 0.8};
    for (int i = 0; i <= 128; ++i) {
      const double th = kTwoPi * i / 128;
      circle.pts.push_back({std::cos(th), std::sin(th)});
    }
    polys.push_back(std::move(circle));
    Poly curve{{}, "#1f77b4", 1.3};
    for (const TrajectoryRow& r : rows) curve.pts.push_back({r.disk_u, r.disk_v});
    polys.push_back(std::move(curve));
    render_panel(os, 330, 34, 300, 300, "disk", polys);
  }
  // Panels 3 and 4: solid-torus axonometric views.
  render_panel(os, 10, 344, 300, 300, "torus view A",
               torus_view(rows, 0.5235987755982988, 1.0471975511965976));
  render_panel(os, 330, 344, 300, 300, "torus view B",
               torus_view(rows, -0.8726646259971648, 0.2617993877991494));
  os << "</svg>\n";
}

}  // namespace sl2mag::io
