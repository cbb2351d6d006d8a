#include "bubbles/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace bubbles {

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;

const char* kPalette[] = {"#9ecae1", "#a1d99b", "#fdae6b", "#bcbddc",
                          "#fee391", "#fc9272", "#c7e9c0", "#d9d9d9"};

void fmt(std::ostringstream& os, double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.8g", v);
  os << buf;
}
}  // namespace

std::string render_svg(const Cluster& c, bool labels) {
  double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
  auto grow = [&](Point p) {
    xmin = std::min(xmin, p.x);
    xmax = std::max(xmax, p.x);
    ymin = std::min(ymin, p.y);
    ymax = std::max(ymax, p.y);
  };
  for (size_t e = 0; e < c.edges.size(); ++e) {
    DirectedArc a = c.arc((int)e);
    for (int k = 0; k <= 16; ++k) grow(a.point(k / 16.0));
  }
  double pad = 0.06 * std::max(xmax - xmin, ymax - ymin);
  xmin -= pad; xmax += pad; ymin -= pad; ymax += pad;

  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  os << "<!-- cluster rendering v1 -->\n";
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"640\" "
        "height=\"640\" viewBox=\"";
  fmt(os, xmin); os << " "; fmt(os, -ymax); os << " ";
  fmt(os, xmax - xmin); os << " "; fmt(os, ymax - ymin);
  os << "\">\n<g transform=\"scale(1,-1)\" stroke=\"#222222\" stroke-width=\"";
  fmt(os, 0.008 * std::max(xmax - xmin, ymax - ymin));
  os << "\" stroke-linejoin=\"round\">\n";

  for (size_t f = 0; f < c.faces.size(); ++f) {
    ArcPolygon poly = c.face_polygon((int)f);
    os << "<path fill=\"" << kPalette[c.faces[f].region % 8] << "\" fill-opacity=\"0.85\" d=\"M ";
    fmt(os, poly.arcs[0].start.x); os << " "; fmt(os, poly.arcs[0].start.y);
    for (const auto& a : poly.arcs) {
      if (a.straight()) {
        os << " L ";
      } else {
        double r = a.radius();
        os << " A ";
        fmt(os, r); os << " "; fmt(os, r);
        os << " 0 " << (std::abs(a.turn) > kPi ? 1 : 0) << " " << (a.turn > 0 ? 1 : 0) << " ";
      }
      fmt(os, a.end.x); os << " "; fmt(os, a.end.y);
    }
    os << " Z\"/>\n";
  }
  os << "</g>\n";
  if (labels) {
    double fs = 0.07 * std::max(xmax - xmin, ymax - ymin);
    for (size_t f = 0; f < c.faces.size(); ++f) {
      // anchor at the mean of the face's vertices
      double cx = 0, cy = 0;
      int n = 0;
      ArcPolygon poly = c.face_polygon((int)f);
      for (const auto& a : poly.arcs) {
        Point m = a.point(0.5);
        cx += m.x; cy += m.y; ++n;
      }
      cx /= n; cy /= n;
      const Region& reg = c.region(c.faces[f].region);
      os << "<text x=\"";
      fmt(os, cx); os << "\" y=\"";
      fmt(os, -cy); os << "\" font-size=\"";
      fmt(os, fs);
      os << "\" text-anchor=\"middle\">E" << reg.id;
      if (reg.pressure) {
        char buf[48];
        std::snprintf(buf, sizeof buf, " p=%.4g", *reg.pressure);
        os << buf;
      }
      os << "</text>\n";
    }
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace bubbles
