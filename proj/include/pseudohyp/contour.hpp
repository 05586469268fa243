#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <map>
#include <vector>

namespace pseudohyp {

// Scalar field sampled on a regular grid, row-major: value(i, j) at x0 + i dx, y0 + j dy.
struct GridField {
  int nx = 0;
  int ny = 0;
  double x0 = 0, y0 = 0, dx = 1, dy = 1;
  std::vector<double> values;

  double at(int i, int j) const { return values[static_cast<std::size_t>(j) * nx + i]; }
  Eigen::Vector2d point(int i, int j) const { return {x0 + i * dx, y0 + j * dy}; }
};

struct ContourSegment {
  Eigen::Vector2d a, b;
  std::int64_t ea = 0, eb = 0;  // ids of the grid edges carrying the endpoints
};

// Marching squares at `level`; saddle cells are split using the cell-centre average.
inline std::vector<ContourSegment> marching_squares(const GridField& f, double level) {
  std::vector<ContourSegment> out;
  auto hid = [&](int i, int j) { return 2 * (static_cast<std::int64_t>(j) * f.nx + i); };
  auto vid = [&](int i, int j) { return 2 * (static_cast<std::int64_t>(j) * f.nx + i) + 1; };
  for (int j = 0; j + 1 < f.ny; ++j)
    for (int i = 0; i + 1 < f.nx; ++i) {
      const double v[4] = {f.at(i, j), f.at(i + 1, j), f.at(i + 1, j + 1), f.at(i, j + 1)};
      if (!std::isfinite(v[0]) || !std::isfinite(v[1]) || !std::isfinite(v[2]) || !std::isfinite(v[3])) continue;
      const Eigen::Vector2d p[4] = {f.point(i, j), f.point(i + 1, j), f.point(i + 1, j + 1), f.point(i, j + 1)};
      const std::int64_t eid[4] = {hid(i, j), vid(i + 1, j), hid(i, j + 1), vid(i, j)};
      int code = 0;
      for (int k = 0; k < 4; ++k)
        if (v[k] > level) code |= 1 << k;
      if (code == 0 || code == 15) continue;
      auto cross = [&](int e) {
        const int a = e, b = (e + 1) % 4;
        const double t = (level - v[a]) / (v[b] - v[a]);
        return Eigen::Vector2d(p[a] + t * (p[b] - p[a]));
      };
      // edges k joins corner k to corner k+1
      std::vector<int> hits;
      for (int e = 0; e < 4; ++e) {
        const bool ia = (code >> e) & 1, ib = (code >> ((e + 1) % 4)) & 1;
        if (ia != ib) hits.push_back(e);
      }
      if (hits.size() == 2) {
        out.push_back({cross(hits[0]), cross(hits[1]), eid[hits[0]], eid[hits[1]]});
      } else if (hits.size() == 4) {
        const double centre = 0.25 * (v[0] + v[1] + v[2] + v[3]);
        const bool c0 = (code & 1) != 0;
        // corners 0 and 2 share a state; join around the corner the centre disagrees with
        if ((centre > level) == c0) {
          out.push_back({cross(0), cross(1), eid[0], eid[1]});
          out.push_back({cross(2), cross(3), eid[2], eid[3]});
        } else {
          out.push_back({cross(3), cross(0), eid[3], eid[0]});
          out.push_back({cross(1), cross(2), eid[1], eid[2]});
        }
      }
    }
  return out;
}

// Joins segments sharing grid edges into polylines (closed ones repeat the first point).
inline std::vector<std::vector<Eigen::Vector2d>> chain_segments(const std::vector<ContourSegment>& segs) {
  std::multimap<std::int64_t, std::size_t> by_edge;
  for (std::size_t k = 0; k < segs.size(); ++k) {
    by_edge.emplace(segs[k].ea, k);
    by_edge.emplace(segs[k].eb, k);
  }
  std::vector<bool> used(segs.size(), false);
  auto next = [&](std::int64_t edge, std::size_t from) -> long {
    auto [lo, hi] = by_edge.equal_range(edge);
    for (auto it = lo; it != hi; ++it)
      if (it->second != from && !used[it->second]) return static_cast<long>(it->second);
    return -1;
  };
  std::vector<std::vector<Eigen::Vector2d>> lines;
  for (std::size_t k = 0; k < segs.size(); ++k) {
    if (used[k]) continue;
    used[k] = true;
    std::vector<Eigen::Vector2d> fwd{segs[k].a, segs[k].b};
    std::int64_t tail = segs[k].eb;
    std::size_t cur = k;
    for (long nk; (nk = next(tail, cur)) >= 0;) {
      const auto& s = segs[static_cast<std::size_t>(nk)];
      used[static_cast<std::size_t>(nk)] = true;
      if (s.ea == tail) {
        fwd.push_back(s.b);
        tail = s.eb;
      } else {
        fwd.push_back(s.a);
        tail = s.ea;
      }
      cur = static_cast<std::size_t>(nk);
    }
    std::int64_t head = segs[k].ea;
    cur = k;
    std::vector<Eigen::Vector2d> back;
    for (long nk; (nk = next(head, cur)) >= 0;) {
      const auto& s = segs[static_cast<std::size_t>(nk)];
      used[static_cast<std::size_t>(nk)] = true;
      if (s.ea == head) {
        back.push_back(s.b);
        head = s.eb;
      } else {
        back.push_back(s.a);
        head = s.ea;
      }
      cur = static_cast<std::size_t>(nk);
    }
    std::vector<Eigen::Vector2d> line(back.rbegin(), back.rend());
    line.insert(line.end(), fwd.begin(), fwd.end());
    lines.push_back(std::move(line));
  }
  return lines;
}

}  // namespace pseudohyp
