#pragma once

#include <nlohmann/json.hpp>
#include <fstream>
#include <string>

#include "pseudohyp/einstein.hpp"
#include "pseudohyp/error.hpp"

namespace pseudohyp {

struct PolygonFixture {
  int n = 2;
  BasisKind kind = BasisKind::Hyperbolic;
  LightlikePolygon polygon;
  int samples_per_edge = 64;
};

inline nlohmann::json to_json(const PolygonFixture& f) {
  nlohmann::json j;
  j["n"] = f.n;
  j["basis"] = f.kind == BasisKind::Hyperbolic ? "hyperbolic" : "orthonormal";
  j["samples_per_edge"] = f.samples_per_edge;
  j["vertices"] = nlohmann::json::array();
  for (const auto& v : f.polygon.vertices) j["vertices"].push_back(std::vector<double>(v.data(), v.data() + v.size()));
  j["lift_signs"] = f.polygon.lift_signs;
  return j;
}

inline PolygonFixture fixture_from_json(const nlohmann::json& j) {
  PolygonFixture f;
  f.n = j.at("n").get<int>();
  f.kind = j.value("basis", std::string("hyperbolic")) == "orthonormal" ? BasisKind::Orthonormal : BasisKind::Hyperbolic;
  f.samples_per_edge = j.value("samples_per_edge", 64);
  for (const auto& row : j.at("vertices")) {
    const auto x = row.get<std::vector<double>>();
    if (static_cast<int>(x.size()) != f.n + 3) throw Error(ErrorCode::DimensionMismatch, "vertex length must be n+3");
    f.polygon.vertices.push_back(Eigen::Map<const VectorE>(x.data(), static_cast<Eigen::Index>(x.size())));
  }
  f.polygon.lift_signs = j.at("lift_signs").get<std::vector<int>>();
  if (f.polygon.lift_signs.size() != f.polygon.vertices.size())
    throw Error(ErrorCode::DimensionMismatch, "one lift sign per vertex");
  return f;
}

inline PolygonFixture load_fixture(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return fixture_from_json(nlohmann::json::parse(in));
}

inline void save_fixture(const PolygonFixture& f, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << to_json(f).dump(2) << "\n";
}

}  // namespace pseudohyp
