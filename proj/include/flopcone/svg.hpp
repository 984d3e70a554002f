#pragma once

// SVG rendering of the height-1 slice of a complex: the slice {y + z = 1}
// drawn in the (x, y) coordinates of the figures, rays as labelled dots,
// walls as polylines, the singular line as an x marker. Fixed viewBox and
// deterministic decimal formatting.

#include <sstream>
#include <string>

#include "flopcone/cone_engine.hpp"

namespace flopcone {

namespace svgdetail {

struct Pt {
  Rat x, y;
};

// slice coordinates of a ray: scale to height 1, keep (x, y)
inline Pt slice(const Vec3& v) {
  Rat h = Rat(v(1)) + Rat(v(2));
  if (h <= 0) throw std::invalid_argument("ray not above the slice plane");
  return {Rat(v(0)) / h, Rat(v(1)) / h};
}

// fixed-precision decimal of an exact rational (6 places, round toward
// zero); deterministic across runs
inline std::string dec(const Rat& r) {
  Int scaled = (num(r) * 1000000) / den(r);
  bool neg = scaled < 0;
  Int a = neg ? Int(-scaled) : scaled;
  Int ip = a / 1000000;
  Int fp = a % 1000000;
  std::string f = fp.get_str();
  f.insert(f.begin(), 6 - f.size(), '0');
  while (f.size() > 1 && f.back() == '0') f.pop_back();
  std::string s = ip.get_str() + "." + f;
  return neg ? "-" + s : s;
}

struct Mapper {
  // map slice coords into the 1000 x 800 viewBox with margins; the slice
  // x range [0, 2.2] and y range [0, 1.1] cover every figure we draw
  std::string operator()(const Pt& p) const {
    Rat px = Rat(60) + p.x * Rat(400);
    Rat py = Rat(740) - p.y * Rat(640);
    return dec(px) + "," + dec(py);
  }
  std::string xy(const Pt& p, Rat dx, Rat dy) const {
    Rat px = Rat(60) + p.x * Rat(400) + dx;
    Rat py = Rat(740) - p.y * Rat(640) + dy;
    return "x=\"" + dec(px) + "\" y=\"" + dec(py) + "\"";
  }
};

}  // namespace svgdetail

// Renders the height-1 slice of a subdivision. Walls collinear with the
// diagonal spine x = y are drawn as class "spine"; the remaining interior
// walls as class "wall". The singular line is always marked, even when it
// coincides with the ray f_n.
inline std::string render_svg(const ConeComplex& cx) {
  using svgdetail::Pt;
  const FlopConfig& cfg = cx.cfg;
  svgdetail::Mapper map;
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 1000 800\">\n";

  // boundary of sigma in the slice: d2 (0,1) -- d1 (1,1) -- corner -- d3
  // (0,0) -- d2, with the bent face through the corner (2n, n, 1)
  SigmaCone sigma(cfg);
  Mat3 mi = monodromy_inverse(cfg);
  Vec3 corner = detail::h_crossing_ray(cfg, sigma.d1(), Vec3(mi * sigma.d3()));
  Pt p2 = svgdetail::slice(sigma.d2());
  Pt p1 = svgdetail::slice(sigma.d1());
  Pt pc = svgdetail::slice(corner);
  Pt p3 = svgdetail::slice(sigma.d3());
  os << "  <polygon class=\"sigma\" fill=\"none\" stroke=\"black\" points=\""
     << map(p2) << " " << map(p1) << " " << map(pc) << " " << map(p3)
     << "\"/>\n";

  // walls
  for (const Wall& w : cx.walls) {
    bool spine = true;
    for (const WallPiece& piece : w.pieces) {
      if (piece.a(0) != piece.a(1) || piece.b(0) != piece.b(1)) spine = false;
    }
    os << "  <polyline class=\"" << (spine ? "spine" : "wall")
       << "\" fill=\"none\" stroke=\"" << (spine ? "gray" : "black")
       << "\" points=\"";
    // pieces share endpoints in order: emit a, joins, final b
    for (std::size_t i = 0; i < w.pieces.size(); ++i) {
      if (i == 0) os << map(svgdetail::slice(w.pieces[i].a)) << " ";
      os << map(svgdetail::slice(w.pieces[i].b));
      if (i + 1 < w.pieces.size()) os << " ";
    }
    os << "\"/>\n";
  }

  // rays as dots with labels
  for (const RayEntry& r : cx.rays) {
    Pt p = svgdetail::slice(r.v);
    std::string c = map(p);
    auto comma = c.find(',');
    os << "  <circle class=\"ray\" cx=\"" << c.substr(0, comma) << "\" cy=\""
       << c.substr(comma + 1) << "\" r=\"5\"/>\n";
    os << "  <text class=\"label\" " << map.xy(p, 8, -8) << ">" << r.label
       << "</text>\n";
  }

  // the singular line, always rendered
  Pt pl = svgdetail::slice(ell_generator(cfg));
  os << "  <text class=\"ell\" " << map.xy(pl, -5, 5)
     << " font-size=\"18\">&#215;</text>\n";
  os << "</svg>\n";
  return os.str();
}

}  // namespace flopcone
