#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "pseudohyp/barbot.hpp"
#include "pseudohyp/boundary.hpp"
#include "pseudohyp/cone_metric.hpp"
#include "pseudohyp/contour.hpp"
#include "pseudohyp/einstein.hpp"
#include "pseudohyp/emit.hpp"
#include "pseudohyp/fixture.hpp"
#include "pseudohyp/surface_geom.hpp"
#include "pseudohyp/verify.hpp"

namespace fs = std::filesystem;
using namespace pseudohyp;
using json = nlohmann::json;

namespace {

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stod(item));
  return out;
}

// "1,0.3,0.1" lists coefficients from the highest degree down; a coefficient
// may be complex as re:im.
PolynomialQuartic parse_poly(const std::string& s) {
  std::vector<cplx> c;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto colon = item.find(':');
    if (colon == std::string::npos) c.emplace_back(std::stod(item), 0.0);
    else c.emplace_back(std::stod(item.substr(0, colon)), std::stod(item.substr(colon + 1)));
  }
  if (c.empty()) throw CLI::ValidationError("--poly", "empty coefficient list");
  std::reverse(c.begin(), c.end());
  return PolynomialQuartic(c);
}

json vec_json(const VectorE& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

void emit(const std::string& dir, const std::string& name, const std::string& text) {
  if (dir.empty() || dir == "-") {
    std::cout << text;
    return;
  }
  // --out may name the file itself when the extension matches
  fs::path target = fs::path(dir) / name;
  if (fs::path(dir).extension() == fs::path(name).extension()) target = dir;
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  write_text(target.string(), text);
  std::cerr << "wrote " << target.string() << "\n";
}

void read_config_file(const std::string& path, Config& cfg) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config " + path);
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    auto trim = [](std::string x) {
      const auto a = x.find_first_not_of(" \t\"");
      const auto b = x.find_last_not_of(" \t\"\r");
      return a == std::string::npos ? std::string() : x.substr(a, b - a + 1);
    };
    cfg.set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
}

// --- figures ---------------------------------------------------------------

struct FigureSet {
  double fig2_max_deviation = 0.0;
};

FigureSet emit_figures(const Config& cfg) {
  fs::create_directories(cfg.out);
  const BarbotSurface S = standard_barbot(cfg.n);
  const double W = 4.0;
  FigureSet fsr;

  // geodesic fans from two base points, colored by the limit class
  {
    SvgCanvas svg(-W, W, -W, W);
    CsvTable csv{{"base_u", "base_v", "a", "b", "kind", "index", "t", "u", "v"}, {}};
    const char* colors[] = {"#c0392b", "#2471a3", "#229954", "#b9770e"};
    for (const Eigen::Vector2d base : {Eigen::Vector2d(-1.0, -0.5), Eigen::Vector2d(1.2, 0.8)}) {
      for (int k = 0; k < 24; ++k) {
        const double th = 2.0 * std::numbers::pi * k / 24;
        const Eigen::Vector2d X = std::sqrt(2.0) * Eigen::Vector2d(std::cos(th), std::sin(th));
        const DirectionClass dc = classify_direction(S, base.x(), base.y(), X);
        std::vector<Eigen::Vector2d> pts;
        for (int i = 0; i <= 20; ++i) {
          const double t = 0.3 * i;
          const Eigen::Vector2d p = base + t * X;
          pts.push_back(p);
          csv.rows.push_back({base.x(), base.y(), X.x(), X.y(), double(dc.kind == DirectionKind::Vertex ? 0 : 1),
                              double(dc.index), t, p.x(), p.y()});
        }
        const bool singular = dc.kind == DirectionKind::EdgeMidpointType;
        svg.polyline(pts, singular ? "black" : colors[(dc.index - 1) % 4], singular ? 2.0 : 1.0);
      }
      svg.dot(base, "black", 4.0);
    }
    write_text((fs::path(cfg.out) / "fig1_geodesic_fan.svg").string(), svg.str());
    write_text((fs::path(cfg.out) / "fig1_geodesic_fan.csv").string(), csv.str());
  }

  // vertex horoball {h_v1 <= C}: level set of -u via marching squares
  {
    const double C = -0.5;
    GridField f;
    f.nx = f.ny = 81;
    f.x0 = f.y0 = -W;
    f.dx = f.dy = 2.0 * W / 80;
    f.values.resize(81 * 81);
    for (int j = 0; j < 81; ++j)
      for (int i = 0; i < 81; ++i) {
        const auto p = f.point(i, j);
        f.values[static_cast<std::size_t>(j) * 81 + i] = barbot_horofunction(S, {DirectionKind::Vertex, 1}, p.x(), p.y());
      }
    SvgCanvas svg(-W, W, -W, W);
    svg.polygon({{-C, -W}, {W, -W}, {W, W}, {-C, W}}, "#d5d8dc");
    CsvTable csv{{"line", "u", "v"}, {}};
    int li = 0;
    for (const auto& line : chain_segments(marching_squares(f, C))) {
      svg.polyline(line, "black", 1.5);
      for (const auto& p : line) {
        csv.rows.push_back({double(li), p.x(), p.y()});
        fsr.fig2_max_deviation = std::max(fsr.fig2_max_deviation, std::abs(p.x() + C));
      }
      ++li;
    }
    write_text((fs::path(cfg.out) / "fig2_vertex_horoball.svg").string(), svg.str());
    write_text((fs::path(cfg.out) / "fig2_vertex_horoball.csv").string(), csv.str());
  }

  // level sets of the edge horofunction log(e^-u + e^-v)
  {
    GridField f;
    f.nx = f.ny = 161;
    f.x0 = f.y0 = -W;
    f.dx = f.dy = 2.0 * W / 160;
    f.values.resize(161 * 161);
    for (int j = 0; j < 161; ++j)
      for (int i = 0; i < 161; ++i) {
        const auto p = f.point(i, j);
        f.values[static_cast<std::size_t>(j) * 161 + i] =
            barbot_horofunction(S, {DirectionKind::EdgeMidpointType, 1}, p.x(), p.y());
      }
    SvgCanvas svg(-W, W, -W, W);
    CsvTable csv{{"level", "line", "u", "v"}, {}};
    for (double C : {-2.0, -1.0, 0.0, 1.0, 2.0}) {
      int li = 0;
      for (const auto& line : chain_segments(marching_squares(f, C))) {
        svg.polyline(line, "#2471a3", 1.2);
        for (const auto& p : line) csv.rows.push_back({C, double(li), p.x(), p.y()});
        ++li;
      }
    }
    write_text((fs::path(cfg.out) / "fig3_edge_horoballs.svg").string(), svg.str());
    write_text((fs::path(cfg.out) / "fig3_edge_horoballs.csv").string(), csv.str());
  }
  return fsr;
}

double window_for(const PolynomialQuartic& p, double rmax) {
  const int N = p.degree();
  const double k = (N + 4) / 4.0;
  double rz = 0.0;
  for (const auto& z : p.zeros()) rz = std::max(rz, std::abs(z.location));
  return 1.3 * std::pow(k * rmax, 1.0 / k) + rz + 1.0;
}

}  // namespace

int main(int argc, char** argv) {
  // --tol.<name> overrides are collected before CLI11 sees the arguments.
  std::vector<std::pair<std::string, std::string>> tol_overrides;
  std::vector<std::string> rest{argv[0]};
  for (int i = 1; i < argc; ++i) {
    std::string a = argv[i];
    if (a.rfind("--tol.", 0) == 0) {
      const auto eq = a.find('=');
      if (eq != std::string::npos) {
        tol_overrides.emplace_back(a.substr(2, eq - 2), a.substr(eq + 1));
      } else if (i + 1 < argc) {
        tol_overrides.emplace_back(a.substr(2), argv[++i]);
      } else {
        std::cerr << "missing value for " << a << "\n";
        return 2;
      }
    } else {
      rest.push_back(a);
    }
  }
  std::vector<char*> av;
  for (auto& s : rest) av.push_back(s.data());

  CLI::App app{"pseudohyp: pseudo-hyperbolic geometry toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string config_path, out;
  std::uint64_t seed = 1;
  int n = 2;
  app.add_option("--config", config_path, "key=value config file");
  app.add_option("--seed", seed, "random seed");
  app.add_option("--out", out, "output directory ('-' for stdout)");
  app.add_option("--n", n, "n of H^{2,n}");

  auto* crown = app.add_subcommand("crown", "complete a crown from three vertices of a fixture polygon");
  std::string crown_fixture, crown_w;
  crown->add_flag("--standard", "use the standard hyperbolic basis (default)");
  crown->add_option("--fixture", crown_fixture, "complete the first three vertices of a polygon fixture");
  crown->add_option("--w", crown_w, "family parameter, comma separated (n-1 entries)");

  auto* polygon = app.add_subcommand("polygon", "build and validate a lightlike polygon fixture");
  int n_vertices = 6, spe = 64;
  polygon->add_option("--vertices", n_vertices, "number of vertices");
  polygon->add_option("--samples-per-edge", spe, "samples per edge stored in the fixture");

  auto* renorm = app.add_subcommand("renorm", "renormalize a polygon toward its osculating crown");
  std::string renorm_fixture = std::string(PSEUDOHYP_FIXTURE_DIR) + "/hexagon.json";
  std::string schedule = "geometric:0.5";
  int steps = 12;
  renorm->add_option("--loop,--fixture", renorm_fixture, "polygon fixture");
  renorm->add_option("--schedule", schedule, "geometric:r gives lambda = 1, mu_k = r^k");
  renorm->add_option("--steps", steps, "schedule steps");

  auto* barbot = app.add_subcommand("barbot", "sample the Barbot surface, rays and horoballs");
  std::string sample, geodesic, horoball, emit_kind = "csv";
  double tmax = 30.0, level = 0.0;
  barbot->add_option("--sample", sample, "grid:NxM over [-3,3]^2");
  barbot->add_option("--geodesic", geodesic, "u0,v0,a,b");
  barbot->add_option("--tmax", tmax, "ray length");
  barbot->add_option("--horoball", horoball, "vertex:i or edge:i");
  barbot->add_option("--level", level, "horoball level");
  barbot->add_option("--emit", emit_kind, "csv | svg")->check(CLI::IsMember({"csv", "svg"}));

  auto* cone = app.add_subcommand("cone", "cone data and perimeter growth of |phi|^{1/2}|dz|^2");
  std::string poly = "1,0,0", radii = "1,2,4,8", cone_emit = "json";
  int resolution = 801;
  cone->add_option("--poly", poly, "coefficients, highest degree first");
  cone->add_option("--perimeter", radii, "metric-ball radii");
  cone->add_option("--resolution", resolution, "grid nodes per side");
  cone->add_option("--emit", cone_emit, "json | csv")->check(CLI::IsMember({"json", "csv"}));

  auto* tits = app.add_subcommand("tits", "angle, l and Tits distances on the boundary");
  std::string surface = "barbot", tits_poly = "1,0,0";
  int pairs = 8;
  tits->add_option("--surface", surface, "barbot | cone")->check(CLI::IsMember({"barbot", "cone"}));
  tits->add_option("--poly", tits_poly, "coefficients, highest degree first");
  tits->add_option("--pairs", pairs, "number of ideal points");

  auto* verify = app.add_subcommand("verify", "run the acceptance suite");
  int verify_res = 0;
  verify->add_option("--resolution", verify_res, "grid resolution override");

  auto* figures = app.add_subcommand("figures", "SVG and CSV renderings in the (u,v) chart");

  try {
    app.parse(static_cast<int>(av.size()), av.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    Config cfg;
    if (!config_path.empty()) read_config_file(config_path, cfg);
    if (app.count("--seed")) cfg.seed = seed;
    if (app.count("--n")) cfg.n = n;
    if (app.count("--out")) cfg.out = out;
    for (const auto& [k, v] : tol_overrides) cfg.set(k, v);
    const std::string dest = app.count("--out") || !config_path.empty() ? cfg.out : "-";

    if (*crown) {
      const QuadraticSpace s(cfg.n);
      LightlikePolygon p;
      if (crown_fixture.empty()) {
        p = crown_from_basis(s, standard_hyperbolic_basis(s)).polygon;
      } else {
        p = load_fixture(crown_fixture).polygon;
      }
      const VectorE w = crown_w.empty() ? VectorE() : VectorE(Eigen::Map<VectorE>(parse_list(crown_w).data(), s.n() - 1));
      const VectorE v1 = p.lifted(0), v2 = p.lifted(1), v3 = p.lifted(2);
      const VectorE v4 = complete_crown(s, {v1}, {v2}, {v3}, w).v;
      const HyperbolicBasis b = make_hyperbolic_basis(s, v1, v2, v3, v4);
      const LightlikePolygon cp = crown_from_basis(s, b).polygon;
      json j;
      j["v4"] = vec_json(v4);
      j["basis"] = json::array();
      for (int i = 0; i < 4; ++i) j["basis"].push_back(vec_json(b[i]));
      j["residuals"] = {{"q_v4", s.q(v4)}, {"pair_v4_v1", s.pair(v4, v1)}, {"pair_v4_v3", s.pair(v4, v3)},
                        {"pair_v4_v2", s.pair(v4, v2)}, {"basis", hyperbolic_basis_residual(s, b)}};
      j["valid"] = validate_polygon(s, cp).ok;
      emit(dest, "crown.json", j.dump(2) + "\n");
    } else if (*polygon) {
      const QuadraticSpace s(cfg.n);
      PolygonFixture f;
      f.n = cfg.n;
      f.polygon = build_polygon(s, n_vertices, cfg.seed);
      f.samples_per_edge = spe;
      const PolygonReport rep = validate_polygon(s, f.polygon);
      if (!rep.ok) throw std::runtime_error("built polygon failed validation: " + rep.reason);
      emit(dest, "polygon.json", to_json(f).dump(2) + "\n");
    } else if (*renorm) {
      const PolygonFixture f = load_fixture(renorm_fixture);
      const QuadraticSpace s(f.n, f.kind);
      const BarbotCrown c = osculating_crown(s, f.polygon);
      if (schedule.rfind("geometric:", 0) != 0) throw CLI::ValidationError("--schedule", "expected geometric:r");
      const auto sched = geometric_schedule(std::stod(schedule.substr(10)), steps);
      const auto d = renormalization_experiment(s, sample_polygon(f.polygon, f.samples_per_edge),
                                                sample_polygon(c.polygon, f.samples_per_edge), c.basis, sched);
      CsvTable t{{"k", "lambda", "mu", "distance"}, {}};
      for (std::size_t k = 0; k < d.size(); ++k) t.rows.push_back({double(k), sched[k].lambda, sched[k].mu, d[k]});
      emit(dest, "renorm.csv", t.str());
    } else if (*barbot) {
      const BarbotSurface S = standard_barbot(cfg.n);
      if (!sample.empty()) {
        int nx = 41, ny = 41;
        if (std::sscanf(sample.c_str(), "grid:%dx%d", &nx, &ny) != 2 || nx < 2 || ny < 2)
          throw CLI::ValidationError("--sample", "expected grid:NxM");
        std::vector<std::string> h{"u", "v"};
        for (int i = 0; i < S.space.dim(); ++i) h.push_back("x" + std::to_string(i + 1));
        CsvTable t{h, {}};
        for (int j = 0; j < ny; ++j)
          for (int i = 0; i < nx; ++i) {
            const double u = -3.0 + 6.0 * i / (nx - 1), v = -3.0 + 6.0 * j / (ny - 1);
            const VectorE x = barbot_vector(S, u, v);
            std::vector<double> row{u, v};
            row.insert(row.end(), x.data(), x.data() + x.size());
            t.rows.push_back(row);
          }
        emit(dest, "barbot_sample.csv", t.str());
      }
      if (!geodesic.empty()) {
        const auto g = parse_list(geodesic);
        if (g.size() != 4) throw CLI::ValidationError("--geodesic", "expected u0,v0,a,b");
        Eigen::Vector2d X(g[2], g[3]);
        X *= std::sqrt(2.0) / X.norm();
        const DirectionClass dc = classify_direction(S, g[0], g[1], X);
        CsvTable t{{"t", "u", "v", "horo"}, {}};
        const HoroTarget target{dc.kind, dc.index};
        for (int i = 0; i <= 100; ++i) {
          const double tt = tmax * i / 100;
          t.rows.push_back({tt, g[0] + tt * X.x(), g[1] + tt * X.y(), barbot_horofunction(S, target, g[0] + tt * X.x(), g[1] + tt * X.y())});
        }
        std::cerr << (dc.kind == DirectionKind::Vertex ? "vertex " : "edge ") << dc.index << ", growth exponent "
                  << dc.growth_exponent << "\n";
        emit(dest, "barbot_geodesic.csv", t.str());
      }
      if (!horoball.empty()) {
        const auto colon = horoball.find(':');
        if (colon == std::string::npos) throw CLI::ValidationError("--horoball", "expected vertex:i or edge:i");
        const std::string kind = horoball.substr(0, colon);
        const HoroTarget target{kind == "vertex" ? DirectionKind::Vertex : DirectionKind::EdgeMidpointType,
                                std::stoi(horoball.substr(colon + 1))};
        GridField f;
        f.nx = f.ny = 161;
        f.x0 = f.y0 = -4.0;
        f.dx = f.dy = 8.0 / 160;
        f.values.resize(161 * 161);
        for (int j = 0; j < 161; ++j)
          for (int i = 0; i < 161; ++i) {
            const auto p = f.point(i, j);
            f.values[static_cast<std::size_t>(j) * 161 + i] = barbot_horofunction(S, target, p.x(), p.y());
          }
        const auto lines = chain_segments(marching_squares(f, level));
        if (emit_kind == "svg") {
          SvgCanvas svg(-4, 4, -4, 4);
          for (const auto& l : lines) svg.polyline(l, "black", 1.5);
          emit(dest, "horoball.svg", svg.str());
        } else {
          CsvTable t{{"line", "u", "v"}, {}};
          for (std::size_t k = 0; k < lines.size(); ++k)
            for (const auto& p : lines[k]) t.rows.push_back({double(k), p.x(), p.y()});
          emit(dest, "horoball.csv", t.str());
        }
      }
    } else if (*cone) {
      const PolynomialQuartic p = parse_poly(poly);
      const auto rs = parse_list(radii);
      if (rs.empty()) throw CLI::ValidationError("--perimeter", "no radii");
      const MetricGrid g(p, 0.0, window_for(p, *std::max_element(rs.begin(), rs.end())), resolution);
      const auto pr = perimeter_growth(g, 0.0, rs);
      if (cone_emit == "csv") {
        CsvTable t{{"r", "P_over_r"}, {}};
        for (std::size_t i = 0; i < rs.size(); ++i) t.rows.push_back({rs[i], pr[i]});
        emit(dest, "cone.csv", t.str());
      } else {
        json j;
        j["cone_points"] = json::array();
        j["deficits"] = json::array();
        for (const auto& c : cone_data(p)) {
          j["cone_points"].push_back({{"re", c.location.real()}, {"im", c.location.imag()}, {"order", c.order}, {"angle", c.angle}});
          j["deficits"].push_back(2.0 * std::numbers::pi - c.angle);
        }
        j["total_curvature"] = total_curvature(p);
        j["perimeter_table"] = json::array();
        for (std::size_t i = 0; i < rs.size(); ++i) j["perimeter_table"].push_back({{"r", rs[i]}, {"P_over_r", pr[i]}});
        j["tits_estimate"] = pr.back();
        j["tits_exact"] = (p.degree() + 4) * std::numbers::pi / 2;
        emit(dest, "cone.json", j.dump(2) + "\n");
      }
    } else if (*tits) {
      json j;
      TitsSample ts;
      CurvatureIdentity ci;
      if (surface == "barbot") {
        ts = barbot_tits_sample(pairs);
        ci = perimeter_vs_curvature_barbot();
      } else {
        const PolynomialQuartic p = parse_poly(tits_poly);
        ts = monomial_tits_sample(p.degree(), pairs);  // boundary of the asymptotic monomial cone
        ci = perimeter_vs_curvature_monomial(p.degree());
        ci.total_curvature = total_curvature(p);
        ci.residual = std::abs(ci.total_curvature - (2.0 * std::numbers::pi - ci.perimeter));
      }
      j["pairs"] = json::array();
      for (const auto& q : ts.pairs)
        j["pairs"].push_back({{"xi", q.xi}, {"eta", q.eta}, {"angle", q.angle}, {"l", q.l}, {"td", q.td}});
      j["perimeter"] = ci.perimeter;
      j["total_curvature"] = ci.total_curvature;
      j["identity_residual"] = ci.residual;
      emit(dest, "tits.json", j.dump(2) + "\n");
    } else if (*verify) {
      if (verify_res > 0) cfg.resolution = verify_res;
      const VerifyReport rep = run_verify(cfg);
      for (const auto& r : rep.criteria) {
        std::cerr << (r.pass ? "PASS " : "FAIL ") << r.id << " " << r.title;
        if (!r.error.empty()) std::cerr << " (" << r.error << ")";
        std::cerr << "\n";
        for (const auto& c : r.checks)
          if (!c.pass)
            std::cerr << "     " << c.name << ": measured " << c.measured << ", target " << c.target << ", tol "
                      << c.tolerance << " [" << c.tolerance_key << "]\n";
      }
      emit(dest, "verify.json", rep.json.dump(2) + "\n");
      return rep.pass ? 0 : 1;
    } else if (*figures) {
      if (!app.count("--out") && config_path.empty()) cfg.out = "figures";
      const FigureSet f = emit_figures(cfg);
      std::cerr << "fig2 level line max deviation from straight: " << f.fig2_max_deviation << "\n";
    }
  } catch (const CLI::Error& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
