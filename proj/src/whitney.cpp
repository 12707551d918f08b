#include "wcz/whitney.hpp"

#include <algorithm>
#include <stdexcept>

#include "wcz/jsonio.hpp"

namespace wcz {

Rat WhitneyForest::residual_measure() const {
  Rat m(0);
  for (const auto& r : residual) m += r.length();
  return m;
}

Rat WhitneyForest::cube_measure() const {
  Rat m(0);
  for (const auto& c : cubes) m += c.box.length();
  return m;
}

bool WhitneyForest::sizing_ok() const {
  for (const auto& c : cubes) {
    const Interval& comp = components[static_cast<size_t>(c.component)];
    // Component endpoints lie in Omega^c, so the distance to the complement
    // is attained at the nearer endpoint.
    Rat dist = rat_min(c.box.a - comp.a, comp.b - c.box.b);
    if (!(c.box.length() * 100 <= dist)) return false;
  }
  return true;
}

WhitneyForest decompose(std::vector<Interval> omega, int depth) {
  if (depth < 1) throw std::invalid_argument("decompose: depth must be >= 1");
  if (omega.empty()) throw std::invalid_argument("decompose: empty omega");
  std::sort(omega.begin(), omega.end(),
            [](const Interval& x, const Interval& y) { return x.a < y.a; });
  for (size_t i = 0; i + 1 < omega.size(); ++i)
    if (omega[i].intersects_open(omega[i + 1]))
      throw std::invalid_argument("decompose: components overlap");

  WhitneyForest f;
  f.depth = depth;
  f.components = omega;
  for (size_t ci = 0; ci < omega.size(); ++ci) {
    const Interval& comp = omega[ci];
    const Rat len = comp.length();
    f.residual.emplace_back(comp.a, comp.a + pow2(-depth - 1) * len);
    // left side: layers j = depth .. 1, then right side: j = 1 .. depth
    for (int side = 0; side <= 1; ++side) {
      for (int jj = 0; jj < depth; ++jj) {
        int j = (side == 0) ? depth - jj : jj + 1;
        Rat layer_lo = (side == 0) ? comp.a + pow2(-j - 1) * len
                                   : comp.b - pow2(-j) * len;
        Rat cube_len = pow2(-j - 8) * len;
        for (int i = 0; i < 128; ++i) {
          WhitneyCube c{Interval(layer_lo + i * cube_len, layer_lo + (i + 1) * cube_len),
                        static_cast<int>(ci), j, side, i, -1};
          f.cubes.push_back(std::move(c));
        }
      }
    }
    f.residual.emplace_back(comp.b - pow2(-depth - 1) * len, comp.b);
  }
  return f;
}

Rat overlap_constant(const WhitneyForest& f, const std::vector<Interval>& probes) {
  Rat worst(0);
  for (const auto& c : probes) {
    bool hits_complement = true;
    for (const auto& comp : f.components) {
      if (comp.a < c.a && c.b < comp.b) {  // strictly interior to a component
        hits_complement = false;
        break;
      }
    }
    if (!hits_complement)
      throw std::invalid_argument("overlap_constant: probe interior to omega");
    Rat sum(0);
    for (const auto& w : f.cubes)
      if (w.box.intersects_open(c)) sum += w.box.length();
    worst = rat_max(worst, Rat(sum / c.length()));
  }
  return worst;
}

bool link_nested(WhitneyForest& child, const WhitneyForest& parent) {
  bool ok = true;
  for (auto& c : child.cubes) {
    c.parent = -1;
    for (size_t pi = 0; pi < parent.cubes.size(); ++pi) {
      const Interval& p = parent.cubes[pi].box;
      if (c.box.intersects_open(p)) {
        if (p.a <= c.box.a && c.box.b <= p.b) {
          c.parent = static_cast<long>(pi);
        } else {
          ok = false;  // meets the parent cube but crosses its boundary
        }
      }
    }
  }
  return ok;
}

nlohmann::json WhitneyForest::to_json() const {
  nlohmann::json j;
  j["schema_version"] = 1;
  j["kind"] = "whitney_forest";
  j["depth"] = depth;
  auto arr = nlohmann::json::array();
  for (const auto& c : components)
    arr.push_back({rat_to_json(c.a), rat_to_json(c.b)});
  j["components"] = arr;
  auto cubes = nlohmann::json::array();
  for (const auto& c : this->cubes) {
    cubes.push_back({{"a", rat_to_json(c.box.a)},
                     {"b", rat_to_json(c.box.b)},
                     {"component", c.component},
                     {"layer", c.layer},
                     {"side", c.side},
                     {"index", c.index},
                     {"parent", c.parent}});
  }
  j["cubes"] = cubes;
  auto res = nlohmann::json::array();
  for (const auto& r : residual) res.push_back({rat_to_json(r.a), rat_to_json(r.b)});
  j["residual"] = res;
  return j;
}

}  // namespace wcz
