#pragma once

// Internal helpers shared by the number-ring and curve presentations.

#include <array>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "mwcycles/chowwitt/chowwitt.hpp"

namespace mw::cwdetail {

/// Row layout over a fixed list of closed points: rank rows first, then one
/// order-2 discriminant row per odd-characteristic point (MW mode only).
struct Layout {
  std::vector<ClosedPoint> pts;
  std::map<PointId, size_t> index;
  std::vector<int> rank_row, disc_row;
  int rows = 0;
  std::vector<Int> torsion;
};

inline Layout make_layout(std::vector<ClosedPoint> pts, Mode mode) {
  Layout lay;
  lay.pts = std::move(pts);
  size_t n = lay.pts.size();
  lay.rank_row.resize(n);
  lay.disc_row.assign(n, -1);
  for (size_t i = 0; i < n; ++i) {
    lay.index[lay.pts[i].id] = i;
    lay.rank_row[i] = static_cast<int>(i);
  }
  lay.rows = static_cast<int>(n);
  if (mode == Mode::MW) {
    for (size_t i = 0; i < n; ++i) {
      if (lay.pts[i].kappa->p % 2 == 1) {
        lay.disc_row[i] = lay.rows++;
        lay.torsion.push_back(Int(2));
      }
    }
  }
  return lay;
}

/// Column vector of a dim-0 cycle in the layout, or nullopt when the cycle
/// touches a point outside it (the relation cannot be used at this stage).
inline std::optional<std::vector<Int>> extract_column(const Cycle& c, const Layout& lay) {
  std::vector<Int> col(static_cast<size_t>(lay.rows), Int(0));
  for (const auto& [pid, v] : c.entries) {
    auto it = lay.index.find(pid);
    if (it == lay.index.end()) return std::nullopt;
    size_t i = it->second;
    col[static_cast<size_t>(lay.rank_row[i])] = Int(static_cast<long>(v.gw.rank));
    if (lay.disc_row[i] >= 0) col[static_cast<size_t>(lay.disc_row[i])] = Int(v.gw.disc);
  }
  return col;
}

/// Tracks, per discriminant row, whether witness residues realized the square
/// (0) and nonsquare (1) class: only odd-rank residues pin a class.
struct SquareCover {
  std::vector<std::array<bool, 2>> hit;

  explicit SquareCover(size_t npts) : hit(npts, {false, false}) {}

  void record(const Cycle& c, const Layout& lay) {
    for (const auto& [pid, v] : c.entries) {
      auto it = lay.index.find(pid);
      if (it == lay.index.end()) continue;
      size_t i = it->second;
      if (lay.disc_row[i] >= 0 && v.gw.rank % 2 != 0)
        hit[i][static_cast<size_t>(v.gw.disc & 1)] = true;
    }
  }

  bool complete(const Layout& lay) const {
    for (size_t i = 0; i < lay.pts.size(); ++i)
      if (lay.disc_row[i] >= 0 && !(hit[i][0] && hit[i][1])) return false;
    return true;
  }
};

/// Deduplicating column accumulator; zero columns are dropped.
struct ColumnSet {
  std::set<std::vector<Int>> seen;
  std::vector<std::vector<Int>> cols;

  void add(const std::vector<Int>& col) {
    bool zero = true;
    for (const auto& e : col)
      if (e != 0) {
        zero = false;
        break;
      }
    if (zero) return;
    if (seen.insert(col).second) cols.push_back(col);
  }

  IntMatrix matrix(int rows) const {
    IntMatrix m(rows, static_cast<int>(cols.size()));
    for (int j = 0; j < m.cols; ++j)
      for (int i = 0; i < rows; ++i) m.at(i, j) = cols[static_cast<size_t>(j)][static_cast<size_t>(i)];
    return m;
  }
};

inline CwPresentation build_presentation(const Layout& lay, const ColumnSet& cs) {
  CwPresentation p;
  for (const auto& cp : lay.pts) p.points.push_back(cp.id);
  p.rank_row = lay.rank_row;
  p.disc_row = lay.disc_row;
  p.torsion = lay.torsion;
  p.full = cs.matrix(lay.rows);
  int nrank = static_cast<int>(lay.pts.size());
  p.rank_only = IntMatrix(nrank, p.full.cols);
  for (int i = 0; i < nrank; ++i)
    for (int j = 0; j < p.full.cols; ++j) p.rank_only.at(i, j) = p.full.at(i, j);
  return p;
}

/// Stage-order monotonicity: with the generator set unchanged, the relation
/// set only grows, so a finite order must not increase.
inline void check_monotone(const std::vector<CwStage>& stages, bool same_gens,
                           const AbGroup& g) {
  if (stages.empty() || !same_gens) return;
  Int prev = stages.back().group.order();
  Int cur = g.order();
  if (prev != 0)
    require(cur != 0 && cur <= prev, "InternalError",
            "stage group order increased with a fixed generator set");
}

}  // namespace mw::cwdetail
