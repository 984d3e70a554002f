// Command-line front end: verification suites over the width n,
// subdivision and pagoda computation, theta/mirror queries, pairing
// evaluation, and JSON/SVG emission.
//
// Exit codes: 0 success, 1 verification failure, 2 usage error.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "flopcone/json_io.hpp"
#include "flopcone/svg.hpp"
#include "flopcone/verify.hpp"

using namespace flopcone;

namespace {

Vec3 parse_triple(const std::string& s, const std::string& flag) {
  std::vector<Int> vals;
  std::string cur;
  for (char ch : s + ",") {
    if (ch == ',') {
      if (cur.empty()) throw CLI::ValidationError(flag, "malformed point '" + s + "'");
      try {
        vals.emplace_back(cur);
      } catch (const std::invalid_argument&) {
        throw CLI::ValidationError(flag, "malformed point '" + s + "'");
      }
      cur.clear();
    } else if (ch == '-' || (ch >= '0' && ch <= '9')) {
      cur += ch;
    } else {
      throw CLI::ValidationError(flag, "malformed point '" + s + "'");
    }
  }
  if (vals.size() != 3)
    throw CLI::ValidationError(flag, "expected three coordinates in '" + s + "'");
  return vec3(vals[0], vals[1], vals[2]);
}

DualPoint parse_dual_point(const std::string& s) {
  if (s.rfind("V1:", 0) == 0)
    return DualPoint(Chart::V1, parse_triple(s.substr(3), "--v"));
  if (s.rfind("V2:", 0) == 0)
    return DualPoint(Chart::V2, parse_triple(s.substr(3), "--v"));
  throw CLI::ValidationError("--v", "expected V1:a,b,c or V2:a,b,c");
}

std::vector<Vec3> parse_cone(const FlopConfig& cfg, const std::string& s) {
  std::vector<Vec3> rays;
  if (s.find(';') != std::string::npos) {
    std::string cur;
    for (char ch : s + ";") {
      if (ch == ';') {
        rays.push_back(parse_triple(cur, "--cone"));
        cur.clear();
      } else {
        cur += ch;
      }
    }
    return rays;
  }
  std::string cur;
  for (char ch : s + ",") {
    if (ch != ',') {
      cur += ch;
      continue;
    }
    if (cur == "d1")
      rays.push_back(vec3(1, 1, 0));
    else if (cur == "d2")
      rays.push_back(vec3(0, 1, 0));
    else if (cur == "d3")
      rays.push_back(vec3(0, 0, 1));
    else if (cur == "ell" || cur == "fn")
      rays.push_back(ell_generator(cfg));
    else if (!cur.empty() && cur[0] == 'f')
      rays.push_back(vec3(std::stoi(cur.substr(1)), std::stoi(cur.substr(1)), 1));
    else
      throw CLI::ValidationError("--cone", "unknown ray label '" + cur + "'");
    cur.clear();
  }
  return rays;
}

void emit(const std::string& text, const std::optional<std::string>& out) {
  if (!out) {
    std::cout << text;
    return;
  }
  std::ofstream f(*out, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + *out);
  f << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact combinatorics of (-2,0)-flops"};
  app.require_subcommand(1);

  int n = 1, n_max = 1;
  std::string side_str = "A", format = "text", point_str, u_str, v_str,
              cone_str;
  std::optional<std::string> out_path;
  bool check = false;

  CLI::App* cmd_verify = app.add_subcommand("verify", "run the identity suite");
  cmd_verify->add_option("--n-max", n_max, "largest width to verify")
      ->required()
      ->check(CLI::PositiveNumber);

  CLI::App* cmd_sub = app.add_subcommand("subdivide", "one flop subdivision");
  cmd_sub->add_option("--n", n, "flop width")->required()->check(CLI::PositiveNumber);
  cmd_sub->add_option("--side", side_str, "A or B")
      ->required()
      ->check(CLI::IsMember({"A", "B"}));
  cmd_sub->add_option("--format", format)->check(CLI::IsMember({"text", "json", "svg"}));
  cmd_sub->add_option("--out", out_path, "output path");

  CLI::App* cmd_pag = app.add_subcommand("pagoda", "the pagoda refinement");
  cmd_pag->add_option("--n", n, "flop width")->required()->check(CLI::PositiveNumber);
  cmd_pag->add_option("--format", format)->check(CLI::IsMember({"text", "json", "svg"}));
  cmd_pag->add_option("--out", out_path, "output path");

  CLI::App* cmd_theta = app.add_subcommand("theta", "theta function of a point");
  cmd_theta->add_option("--n", n, "flop width")->required()->check(CLI::PositiveNumber);
  cmd_theta->add_option("--point", point_str, "a,b,c")->required();

  CLI::App* cmd_mirror = app.add_subcommand("mirror", "the mirror determinantal ideal");
  cmd_mirror->add_option("--n", n, "flop width")->required()->check(CLI::PositiveNumber);
  cmd_mirror->add_flag("--check", check, "verify all minors vanish");
  cmd_mirror->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

  CLI::App* cmd_pair = app.add_subcommand("pair", "dual pairing <u, v>");
  cmd_pair->add_option("--n", n, "flop width")->required()->check(CLI::PositiveNumber);
  cmd_pair->add_option("--u", u_str, "p,q,r")->required();
  cmd_pair->add_option("--v", v_str, "V1:a,b,c or V2:a,b,c")->required();

  CLI::App* cmd_dual = app.add_subcommand("dual", "dualize a convex cone");
  cmd_dual->add_option("--n", n, "flop width")->required()->check(CLI::PositiveNumber);
  cmd_dual->add_option("--cone", cone_str, "ray labels or ;-separated triples")
      ->required();
  cmd_dual->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (cmd_verify->parsed()) {
      Report rep = run_verify(n_max);
      std::cout << render(rep);
      return rep.exit_status();
    }
    FlopConfig cfg = FlopConfig::canonical(n);
    if (cmd_sub->parsed() || cmd_pag->parsed()) {
      ConeComplex cx = cmd_pag->parsed()
                           ? pagoda(cfg)
                           : flop_subdivision(
                                 cfg, side_str == "A" ? Side::A : Side::B);
      if (format == "json") {
        emit(to_json(cx).dump(2) + "\n", out_path);
      } else if (format == "svg") {
        emit(render_svg(cx), out_path);
      } else {
        std::ostringstream os;
        os << cx.side << " subdivision, n = " << cfg.n << "\n";
        os << "rays:";
        for (const RayEntry& r : cx.rays)
          os << " " << r.label << "=(" << r.v(0).get_str() << ","
             << r.v(1).get_str() << "," << r.v(2).get_str() << ")";
        os << "\ncells:";
        for (const Cell& c : cx.cells) os << " " << c.label;
        os << "\nwalls:";
        for (const Wall& w : cx.walls) os << " " << w.curve;
        os << "\n";
        emit(os.str(), out_path);
      }
      return 0;
    }
    if (cmd_theta->parsed()) {
      Vec3 p = parse_triple(point_str, "--point");
      std::cout << "theta_(" << point_str << ") = " << theta(cfg, p).str()
                << "\n";
      return 0;
    }
    if (cmd_mirror->parsed()) {
      if (format == "json") {
        std::cout << mirror_json(cfg, check).dump(2) << "\n";
      } else {
        MirrorIdeal mi = mirror_ideal(cfg.n);
        std::cout << "2x" << mi.n << " matrix over th1..th"
                  << (mi.n + 3) << ":\n";
        for (const auto* row : {&mi.row1, &mi.row2}) {
          std::cout << " ";
          for (const ThetaPoly& p : *row) std::cout << "  [" << p.str() << "]";
          std::cout << "\n";
        }
        std::cout << "minors (" << mi.minors.size() << "), codimension "
                  << mi.codimension << ":\n";
        for (const ThetaPoly& p : mi.minors)
          std::cout << "   " << p.str() << "\n";
        if (check) {
          MinorCheck mc = verify_minors(cfg);
          std::cout << (mc.ok ? "verified: all minors vanish"
                              : "FAILED: " + mc.failing)
                    << "\n";
          return mc.ok ? 0 : 1;
        }
      }
      return 0;
    }
    if (cmd_pair->parsed()) {
      Vec3 u = parse_triple(u_str, "--u");
      DualPoint v = parse_dual_point(v_str);
      Rat val = pair(cfg, u, v);
      std::cout << val.get_str() << "\n";
      return 0;
    }
    if (cmd_dual->parsed()) {
      std::vector<Vec3> rays = parse_cone(cfg, cone_str);
      DualCone dc = dual_cone(cfg, rays);
      if (format == "json") {
        std::cout << to_json(cfg, dc).dump(2) << "\n";
        return 0;
      }
      auto show = [](const char* name, const ChartCone& cc,
                     const std::vector<Vec3>& hb) {
        std::cout << name << " inequalities:";
        for (const Vec3& v : cc.ineqs)
          std::cout << " (" << v(0).get_str() << "," << v(1).get_str() << ","
                    << v(2).get_str() << ")";
        std::cout << "\n" << name << " hilbert basis:";
        for (const Vec3& v : hb)
          std::cout << " (" << v(0).get_str() << "," << v(1).get_str() << ","
                    << v(2).get_str() << ")";
        std::cout << "\n";
      };
      DualHilbert h = dual_hilbert(cfg, dc);
      show("V1", dc.half1, h.half1);
      show("V2", dc.half2, h.half2);
      return 0;
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
