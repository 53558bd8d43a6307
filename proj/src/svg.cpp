#include "peripack/svg.hpp"

#include <cmath>
#include <sstream>

namespace peripack {

namespace {

std::string num(double v) {
  // Flush tiny negatives from flipping so output stays stable.
  if (v == 0.0) v = 0.0;
  return double_str(v);
}

void path_for_polygon(std::ostringstream& out, const ConvexPolygon& poly, double flip_sum) {
  out << "M";
  for (size_t i = 0; i < poly.size(); ++i) {
    const Point& p = poly.vertex(i);
    out << (i == 0 ? " " : " L ") << num(p.x.to_double()) << " "
        << num(flip_sum - p.y.to_double());
  }
  out << " Z";
}

}  // namespace

std::string render_svg(const PackingDoc& doc, int width_px) {
  if (width_px < 16) throw Error("render_svg: width too small");
  const Box bb = bounding_box(Body{doc.container()});
  const double x0 = bb.lo.x.to_double(), y0 = bb.lo.y.to_double();
  const double x1 = bb.hi.x.to_double(), y1 = bb.hi.y.to_double();
  const double margin = 0.02 * std::max(x1 - x0, y1 - y0);
  const double vx = x0 - margin, vy = y0 - margin;
  const double vw = (x1 - x0) + 2 * margin, vh = (y1 - y0) + 2 * margin;
  // Mirror y inside the view box so the world y axis points up.
  const double flip_sum = y0 + y1;
  const int height_px = static_cast<int>(std::lround(width_px * vh / vw));

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width_px
      << "\" height=\"" << height_px << "\" viewBox=\"" << num(vx) << " " << num(vy)
      << " " << num(vw) << " " << num(vh) << "\">\n";
  svg << "<path d=\"";
  path_for_polygon(svg, doc.container(), flip_sum);
  svg << "\" fill=\"none\" stroke=\"black\" stroke-width=\"" << num(vw / width_px)
      << "\"/>\n";
  for (const Body& b : doc.bodies()) {
    if (const Disk* d = std::get_if<Disk>(&b)) {
      svg << "<circle cx=\"" << num(d->center.x.to_double()) << "\" cy=\""
          << num(flip_sum - d->center.y.to_double()) << "\" r=\""
          << num(d->radius.to_double()) << "\" fill=\"#1f77b4\" fill-opacity=\"0.5\"/>\n";
    } else {
      svg << "<path d=\"";
      path_for_polygon(svg, std::get<ConvexPolygon>(b), flip_sum);
      svg << "\" fill=\"#d62728\" fill-opacity=\"0.5\"/>\n";
    }
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace peripack
