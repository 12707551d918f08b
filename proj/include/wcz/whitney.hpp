#pragma once

#include <optional>
#include <vector>

#include "wcz/geometry.hpp"

#include "json.hpp"

namespace wcz {

struct WhitneyCube {
  Interval box;
  int component = 0;  // index of the source component of omega
  int layer = 0;      // dyadic distance layer j >= 1 (1 = central block halves)
  int side = 0;       // 0 = toward left endpoint, 1 = toward right
  int index = 0;      // 0..127 within the layer, left to right
  long parent = -1;   // index into a parent forest's cubes, when nested
};

// One truncated Whitney family of a finite union of disjoint open
// intervals. Per component of length L: layers j = 1..depth toward each
// endpoint (layer j holds points at distance [2^-j-1 L, 2^-j L] from the
// nearer endpoint), each split into 128 cubes of length 2^-j-8 L; the two
// end slivers of width 2^-depth-1 L remain as residual.
struct WhitneyForest {
  int depth = 0;
  std::vector<Interval> components;
  std::vector<WhitneyCube> cubes;     // sorted left to right
  std::vector<Interval> residual;     // two slivers per component
  Rat residual_measure() const;
  Rat cube_measure() const;

  // Exact check of diam(W) <= (1/100) dist(W, Omega^c) for every cube.
  bool sizing_ok() const;

  nlohmann::json to_json() const;
};

// Rejects overlapping components; depth >= 1.
WhitneyForest decompose(std::vector<Interval> omega, int depth);

// max over probes of (sum of |W| over cubes meeting the probe) / |probe|.
// Each probe must intersect the complement of omega.
Rat overlap_constant(const WhitneyForest& f, const std::vector<Interval>& probes);

// Fills child.parent links; true when every child cube that meets a parent
// cube is contained in it (exact check).
bool link_nested(WhitneyForest& child, const WhitneyForest& parent);

}  // namespace wcz
