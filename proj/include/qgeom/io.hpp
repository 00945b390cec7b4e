#ifndef QGEOM_IO_HPP
#define QGEOM_IO_HPP

#include <array>
#include <string>
#include <vector>

#include "qgeom/designs.hpp"
#include "qgeom/herm.hpp"
#include "qgeom/numrange.hpp"

namespace qgeom {

// Matrix JSON schema shared by all CLI commands:
//   {"n": int, "re": [[float]], "im": [[float]]}
// with "im" omitted meaning a real symmetric matrix.
ComplexMatrix matrix_from_json_text(const std::string& text);
ComplexMatrix read_matrix_file(const std::string& path);
std::string matrix_to_json_text(const ComplexMatrix& m);

// SIC candidate schema: {"n": int, "vectors": [[[re, im], ...], ...]}
SicCandidate read_sic_file(const std::string& path);

// full 17-significant-digit decimal, lossless on round-trip
std::string format_double(double x);

// header "theta,h,x,y" (angle label configurable; "phi,s,x,y" for sections,
// where s is the point radius)
std::string boundary_csv(const Boundary2D& b, bool ray_style);

std::string mesh_csv(const std::vector<std::array<double, 3>>& points);

struct SvgPolygon {
  std::vector<Vec2> points;
  std::string fill;    // empty = none
  std::string stroke;  // empty = none
};

// fixed 600x600 viewport, autoscaled to the drawn geometry
std::string svg_figure(const std::vector<SvgPolygon>& polys);

// temp file + rename
void write_text_atomic(const std::string& path, const std::string& content);

}  // namespace qgeom

#endif
