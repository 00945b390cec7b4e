#include "qgeom/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace qgeom {

using nlohmann::json;

namespace {

std::vector<std::vector<double>> parse_grid(const json& j, int n, const char* key) {
  const auto& arr = j.at(key);
  if (!arr.is_array() || static_cast<int>(arr.size()) != n)
    throw std::invalid_argument(std::string("matrix JSON: '") + key + "' must be " +
                                std::to_string(n) + " rows");
  std::vector<std::vector<double>> grid;
  grid.reserve(n);
  for (const auto& row : arr) {
    if (!row.is_array() || static_cast<int>(row.size()) != n)
      throw std::invalid_argument(std::string("matrix JSON: '") + key +
                                  "' rows must have length " + std::to_string(n));
    grid.push_back(row.get<std::vector<double>>());
  }
  return grid;
}

}  // namespace

ComplexMatrix matrix_from_json_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("matrix JSON parse error: ") + e.what());
  }
  const int n = j.at("n").get<int>();
  if (n < 1) throw std::invalid_argument("matrix JSON: n must be positive");
  const auto re = parse_grid(j, n, "re");
  ComplexMatrix m(n);
  if (j.contains("im")) {
    const auto im = parse_grid(j, n, "im");
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k) m.at(i, k) = Complex(re[i][k], im[i][k]);
  } else {
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k) m.at(i, k) = Complex(re[i][k], 0.0);
  }
  return m;
}

ComplexMatrix read_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return matrix_from_json_text(ss.str());
}

std::string matrix_to_json_text(const ComplexMatrix& m) {
  const int n = m.order();
  json re = json::array(), im = json::array();
  bool any_imag = false;
  for (int i = 0; i < n; ++i) {
    json rrow = json::array(), irow = json::array();
    for (int k = 0; k < n; ++k) {
      rrow.push_back(m.at(i, k).real());
      irow.push_back(m.at(i, k).imag());
      if (m.at(i, k).imag() != 0.0) any_imag = true;
    }
    re.push_back(std::move(rrow));
    im.push_back(std::move(irow));
  }
  json j;
  j["n"] = n;
  j["re"] = std::move(re);
  if (any_imag) j["im"] = std::move(im);
  return j.dump();
}

SicCandidate read_sic_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("SIC JSON parse error: ") + e.what());
  }
  SicCandidate c;
  c.n = j.at("n").get<int>();
  for (const auto& vec : j.at("vectors")) {
    std::vector<Complex> psi;
    for (const auto& comp : vec) {
      if (!comp.is_array() || comp.size() != 2)
        throw std::invalid_argument("SIC JSON: components must be [re, im] pairs");
      psi.emplace_back(comp[0].get<double>(), comp[1].get<double>());
    }
    if (static_cast<int>(psi.size()) != c.n)
      throw std::invalid_argument("SIC JSON: vector length mismatch");
    c.vectors.push_back(std::move(psi));
  }
  return c;
}

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string boundary_csv(const Boundary2D& b, bool ray_style) {
  std::string out = ray_style ? "phi,s,x,y\n" : "theta,h,x,y\n";
  for (const auto& s : b.samples) {
    const double second =
        ray_style ? std::hypot(s.point.x, s.point.y) : s.h;
    out += format_double(s.theta);
    out += ',';
    out += format_double(second);
    out += ',';
    out += format_double(s.point.x);
    out += ',';
    out += format_double(s.point.y);
    out += '\n';
  }
  return out;
}

std::string mesh_csv(const std::vector<std::array<double, 3>>& points) {
  std::string out = "x,y,z\n";
  for (const auto& p : points) {
    out += format_double(p[0]);
    out += ',';
    out += format_double(p[1]);
    out += ',';
    out += format_double(p[2]);
    out += '\n';
  }
  return out;
}

std::string svg_figure(const std::vector<SvgPolygon>& polys) {
  double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
  for (const auto& p : polys)
    for (const auto& q : p.points) {
      xmin = std::min(xmin, q.x);
      xmax = std::max(xmax, q.x);
      ymin = std::min(ymin, q.y);
      ymax = std::max(ymax, q.y);
    }
  if (xmin > xmax) {
    xmin = ymin = -1.0;
    xmax = ymax = 1.0;
  }
  const double span = std::max(xmax - xmin, ymax - ymin);
  const double margin = 0.05 * (span > 0 ? span : 1.0);
  const double scale = 600.0 / (span + 2.0 * margin);
  const double x0 = 0.5 * (xmin + xmax), y0 = 0.5 * (ymin + ymax);
  auto px = [&](double x) { return 300.0 + (x - x0) * scale; };
  auto py = [&](double y) { return 300.0 - (y - y0) * scale; };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"600\" height=\"600\" "
         "viewBox=\"0 0 600 600\">\n";
  for (const auto& p : polys) {
    svg << "  <polygon points=\"";
    for (size_t i = 0; i < p.points.size(); ++i) {
      if (i) svg << ' ';
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.2f,%.2f", px(p.points[i].x), py(p.points[i].y));
      svg << buf;
    }
    svg << "\" fill=\"" << (p.fill.empty() ? "none" : p.fill) << "\" stroke=\""
        << (p.stroke.empty() ? "none" : p.stroke) << "\"/>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

void write_text_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write file: " + tmp);
    out << content;
    if (!out) throw std::runtime_error("write failed: " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw std::runtime_error("rename failed: " + path);
}

}  // namespace qgeom
