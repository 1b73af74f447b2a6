// Copyright 2026 The tilesamp Authors
// SPDX-License-Identifier: Apache-2.0

#include "tilesamp/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>

#include "tilesamp/set_expr.hpp"

namespace tilesamp {

double Box::diagonal() const {
  double s = 0.0;
  for (std::size_t a = 0; a < lo.size(); ++a) s += (hi[a] - lo[a]) * (hi[a] - lo[a]);
  return std::sqrt(s);
}

struct SetSpec::Node {
  Kind kind;
  int dim = 0;
  std::vector<double> center;  // primitives
  double size = 0.0;           // side or radius
  std::vector<double> offset;  // translate
  std::vector<SetSpec> children;
};

namespace {

int common_dim(const std::vector<SetSpec>& parts) {
  if (parts.empty()) throw InvalidArgument("set combinator needs at least one operand");
  const int d = parts.front().dim();
  for (const auto& s : parts)
    if (s.dim() != d) throw InvalidArgument("set operands have different dimensions");
  return d;
}

double unit_ball_volume(int n) {
  return std::pow(kPi, 0.5 * n) / std::tgamma(0.5 * n + 1.0);
}

}  // namespace

SetSpec SetSpec::cube(std::vector<double> center, double side) {
  if (center.empty()) throw InvalidArgument("cube: empty center");
  if (!(side > 0.0) || !std::isfinite(side)) throw InvalidArgument("cube: side must be positive");
  auto n = std::make_shared<Node>();
  n->kind = Kind::cube;
  n->dim = static_cast<int>(center.size());
  n->center = std::move(center);
  n->size = side;
  return SetSpec(std::move(n));
}

SetSpec SetSpec::ball(std::vector<double> center, double radius) {
  if (center.empty()) throw InvalidArgument("ball: empty center");
  if (!(radius > 0.0) || !std::isfinite(radius))
    throw InvalidArgument("ball: radius must be positive");
  auto n = std::make_shared<Node>();
  n->kind = Kind::ball;
  n->dim = static_cast<int>(center.size());
  n->center = std::move(center);
  n->size = radius;
  return SetSpec(std::move(n));
}

SetSpec SetSpec::translate(SetSpec inner, std::vector<double> offset) {
  if (static_cast<int>(offset.size()) != inner.dim())
    throw InvalidArgument("translate: offset dimension does not match the set");
  auto n = std::make_shared<Node>();
  n->kind = Kind::translate;
  n->dim = inner.dim();
  n->offset = std::move(offset);
  n->children.push_back(std::move(inner));
  return SetSpec(std::move(n));
}

SetSpec SetSpec::unite(std::vector<SetSpec> parts) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::set_union;
  n->dim = common_dim(parts);
  n->children = std::move(parts);
  return SetSpec(std::move(n));
}

SetSpec SetSpec::intersect(std::vector<SetSpec> parts) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::set_intersection;
  n->dim = common_dim(parts);
  n->children = std::move(parts);
  return SetSpec(std::move(n));
}

SetSpec SetSpec::difference(SetSpec minuend, SetSpec subtrahend) {
  std::vector<SetSpec> parts{std::move(minuend), std::move(subtrahend)};
  auto n = std::make_shared<Node>();
  n->kind = Kind::set_difference;
  n->dim = common_dim(parts);
  n->children = std::move(parts);
  return SetSpec(std::move(n));
}

SetSpec SetSpec::counterexample_k() {
  auto q = cube({kPi, kPi}, kTwoPi);
  auto d1 = ball({kPi, 0.0}, kPi);
  auto d2 = ball({kPi, kTwoPi}, kPi);
  return difference(unite({std::move(q), std::move(d1)}), std::move(d2));
}

SetSpec::Kind SetSpec::kind() const { return node_->kind; }
int SetSpec::dim() const { return node_->dim; }
const std::vector<double>& SetSpec::center() const { return node_->center; }
double SetSpec::size() const { return node_->size; }
const std::vector<double>& SetSpec::offset() const { return node_->offset; }
const std::vector<SetSpec>& SetSpec::children() const { return node_->children; }

bool SetSpec::contains(std::span<const double> x) const {
  const Node& n = *node_;
  switch (n.kind) {
    case Kind::cube: {
      const double h = 0.5 * n.size;
      for (int a = 0; a < n.dim; ++a)
        if (std::abs(x[a] - n.center[a]) > h) return false;
      return true;
    }
    case Kind::ball: {
      double r2 = 0.0;
      for (int a = 0; a < n.dim; ++a) r2 += (x[a] - n.center[a]) * (x[a] - n.center[a]);
      return r2 <= n.size * n.size;
    }
    case Kind::translate: {
      std::vector<double> y(x.begin(), x.end());
      for (int a = 0; a < n.dim; ++a) y[a] -= n.offset[a];
      return n.children[0].contains(y);
    }
    case Kind::set_union:
      return std::any_of(n.children.begin(), n.children.end(),
                         [&](const SetSpec& c) { return c.contains(x); });
    case Kind::set_intersection:
      return std::all_of(n.children.begin(), n.children.end(),
                         [&](const SetSpec& c) { return c.contains(x); });
    case Kind::set_difference:
      return n.children[0].contains(x) && !n.children[1].contains_interior(x);
  }
  return false;
}

bool SetSpec::contains_interior(std::span<const double> x) const {
  const Node& n = *node_;
  switch (n.kind) {
    case Kind::cube: {
      const double h = 0.5 * n.size;
      for (int a = 0; a < n.dim; ++a)
        if (!(std::abs(x[a] - n.center[a]) < h)) return false;
      return true;
    }
    case Kind::ball: {
      double r2 = 0.0;
      for (int a = 0; a < n.dim; ++a) r2 += (x[a] - n.center[a]) * (x[a] - n.center[a]);
      return r2 < n.size * n.size;
    }
    case Kind::translate: {
      std::vector<double> y(x.begin(), x.end());
      for (int a = 0; a < n.dim; ++a) y[a] -= n.offset[a];
      return n.children[0].contains_interior(y);
    }
    case Kind::set_union:
      return std::any_of(n.children.begin(), n.children.end(),
                         [&](const SetSpec& c) { return c.contains_interior(x); });
    case Kind::set_intersection:
      return std::all_of(n.children.begin(), n.children.end(),
                         [&](const SetSpec& c) { return c.contains_interior(x); });
    case Kind::set_difference:
      return n.children[0].contains_interior(x) && !n.children[1].contains(x);
  }
  return false;
}

Box SetSpec::bounding_box() const {
  const Node& n = *node_;
  Box b{std::vector<double>(n.dim), std::vector<double>(n.dim)};
  switch (n.kind) {
    case Kind::cube:
    case Kind::ball: {
      const double h = n.kind == Kind::cube ? 0.5 * n.size : n.size;
      for (int a = 0; a < n.dim; ++a) {
        b.lo[a] = n.center[a] - h;
        b.hi[a] = n.center[a] + h;
      }
      return b;
    }
    case Kind::translate: {
      b = n.children[0].bounding_box();
      for (int a = 0; a < n.dim; ++a) {
        b.lo[a] += n.offset[a];
        b.hi[a] += n.offset[a];
      }
      return b;
    }
    case Kind::set_union: {
      b = n.children[0].bounding_box();
      for (std::size_t i = 1; i < n.children.size(); ++i) {
        const Box c = n.children[i].bounding_box();
        for (int a = 0; a < n.dim; ++a) {
          b.lo[a] = std::min(b.lo[a], c.lo[a]);
          b.hi[a] = std::max(b.hi[a], c.hi[a]);
        }
      }
      return b;
    }
    case Kind::set_intersection: {
      b = n.children[0].bounding_box();
      for (std::size_t i = 1; i < n.children.size(); ++i) {
        const Box c = n.children[i].bounding_box();
        for (int a = 0; a < n.dim; ++a) {
          b.lo[a] = std::max(b.lo[a], c.lo[a]);
          b.hi[a] = std::min(b.hi[a], c.hi[a]);
        }
      }
      // An empty intersection collapses to a degenerate box.
      for (int a = 0; a < n.dim; ++a) b.hi[a] = std::max(b.hi[a], b.lo[a]);
      return b;
    }
    case Kind::set_difference:
      return n.children[0].bounding_box();
  }
  return b;
}

double SetSpec::diameter_bound() const {
  const Node& n = *node_;
  switch (n.kind) {
    case Kind::cube:
      return n.size * std::sqrt(static_cast<double>(n.dim));
    case Kind::ball:
      return 2.0 * n.size;
    case Kind::translate:
      return n.children[0].diameter_bound();
    case Kind::set_union:
      if (n.children.size() == 1) return n.children[0].diameter_bound();
      return bounding_box().diagonal();
    case Kind::set_intersection: {
      double d = bounding_box().diagonal();
      for (const auto& c : n.children) d = std::min(d, c.diameter_bound());
      return d;
    }
    case Kind::set_difference:
      return n.children[0].diameter_bound();
  }
  return 0.0;
}

double SetSpec::boundary_measure_bound() const {
  double total = 0.0;
  for_each_primitive([&](const SetSpec& prim, std::span<const double>) {
    const int d = prim.dim();
    if (prim.kind() == Kind::cube)
      total += 2.0 * d * std::pow(prim.size(), d - 1);
    else
      total += d * unit_ball_volume(d) * std::pow(prim.size(), d - 1);
  });
  return total;
}

void SetSpec::for_each_primitive(
    const std::function<void(const SetSpec&, std::span<const double>)>& fn) const {
  std::function<void(const SetSpec&, std::vector<double>)> walk =
      [&](const SetSpec& s, std::vector<double> shift) {
        switch (s.kind()) {
          case Kind::cube:
          case Kind::ball:
            fn(s, shift);
            return;
          case Kind::translate:
            for (int a = 0; a < s.dim(); ++a) shift[a] += s.offset()[a];
            walk(s.children()[0], std::move(shift));
            return;
          default:
            for (const auto& c : s.children()) walk(c, shift);
        }
      };
  walk(*this, std::vector<double>(dim(), 0.0));
}

bool operator==(const SetSpec& a, const SetSpec& b) {
  if (a.node_ == b.node_) return true;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  return x.kind == y.kind && x.dim == y.dim && x.center == y.center && x.size == y.size &&
         x.offset == y.offset && x.children == y.children;
}

// ---------------------------------------------------------------------------
// GridSpec

std::vector<int> GridSpec::node_extent() const {
  std::vector<int> e(cell_lo.size());
  for (std::size_t a = 0; a < e.size(); ++a) e[a] = (cell_hi[a] - cell_lo[a]) * resolution;
  return e;
}

std::vector<int> GridSpec::node_origin() const {
  std::vector<int> o(cell_lo.size());
  for (std::size_t a = 0; a < o.size(); ++a) o[a] = cell_lo[a] * resolution;
  return o;
}

std::size_t GridSpec::node_count() const {
  std::size_t n = 1;
  for (int e : node_extent()) n *= static_cast<std::size_t>(e);
  return n;
}

int GridSpec::max_cells() const {
  int w = 0;
  for (std::size_t a = 0; a < cell_lo.size(); ++a) w = std::max(w, cell_hi[a] - cell_lo[a]);
  return w;
}

void GridSpec::validate() const {
  if (resolution < 2) throw InvalidArgument("grid resolution M must be >= 2");
  if (cell_lo.empty() || cell_lo.size() != cell_hi.size())
    throw InvalidArgument("grid box has inconsistent dimensions");
  for (std::size_t a = 0; a < cell_lo.size(); ++a)
    if (cell_hi[a] <= cell_lo[a]) throw InvalidArgument("grid box is empty along an axis");
}

GridSpec grid_for(const SetSpec& spec, int resolution, int pad) {
  const Box b = spec.bounding_box();
  GridSpec g;
  g.resolution = resolution;
  for (int a = 0; a < spec.dim(); ++a) {
    int lo = static_cast<int>(std::floor(b.lo[a] / kTwoPi)) - pad;
    int hi = static_cast<int>(std::ceil(b.hi[a] / kTwoPi)) + pad;
    if (hi <= lo) hi = lo + 1;
    g.cell_lo.push_back(lo);
    g.cell_hi.push_back(hi);
  }
  g.validate();
  return g;
}

std::int64_t flat_node_index(const GridSpec& grid, std::span<const int> j) {
  const auto ext = grid.node_extent();
  const auto org = grid.node_origin();
  std::int64_t flat = 0;
  for (std::size_t a = 0; a < ext.size(); ++a) {
    const int local = j[a] - org[a];
    if (local < 0 || local >= ext[a]) return -1;
    flat = flat * ext[a] + local;
  }
  return flat;
}

std::vector<int> node_of_flat(const GridSpec& grid, std::size_t flat) {
  const auto ext = grid.node_extent();
  const auto org = grid.node_origin();
  std::vector<int> j(ext.size());
  for (std::size_t a = ext.size(); a-- > 0;) {
    j[a] = static_cast<int>(flat % static_cast<std::size_t>(ext[a])) + org[a];
    flat /= static_cast<std::size_t>(ext[a]);
  }
  return j;
}

std::vector<std::size_t> node_residues(const GridSpec& grid) {
  const std::size_t n = grid.node_count();
  const int M = grid.resolution;
  std::vector<std::size_t> res(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto j = node_of_flat(grid, i);
    std::size_t r = 0;
    for (int v : j) r = r * M + static_cast<std::size_t>(((v % M) + M) % M);
    res[i] = r;
  }
  return res;
}

// ---------------------------------------------------------------------------
// RasterizedSet

RasterizedSet::RasterizedSet(GridSpec grid, std::vector<std::uint8_t> mask, double diameter,
                             double boundary_length, std::string name)
    : grid_(std::move(grid)),
      mask_(std::move(mask)),
      diameter_(diameter),
      boundary_length_(boundary_length),
      name_(std::move(name)) {
  grid_.validate();
  if (mask_.size() != grid_.node_count())
    throw InvalidArgument("mask size does not match the grid");
  count_ = static_cast<std::size_t>(std::count_if(mask_.begin(), mask_.end(),
                                                  [](std::uint8_t v) { return v != 0; }));
}

bool RasterizedSet::at(std::span<const int> j) const {
  const auto flat = flat_node_index(grid_, j);
  return flat >= 0 && mask_[static_cast<std::size_t>(flat)] != 0;
}

double RasterizedSet::measure() const {
  return static_cast<double>(count_) * std::pow(grid_.spacing(), grid_.dim());
}

RasterizedSet rasterize(const SetSpec& spec, const GridSpec& grid) {
  grid.validate();
  if (grid.dim() != spec.dim())
    throw InvalidArgument("grid dimension does not match the set dimension");
  const int n = grid.dim();
  const Box box = spec.bounding_box();
  for (int a = 0; a < n; ++a) {
    if (box.lo[a] >= grid.cell_lo[a] * kTwoPi && box.hi[a] <= grid.cell_hi[a] * kTwoPi) continue;
    // Name the first primitive that adds points outside the box; subtracted
    // parts never do.
    std::string culprit = format_set(spec);
    std::function<bool(const SetSpec&, std::vector<double>)> find =
        [&](const SetSpec& s, std::vector<double> shift) {
          switch (s.kind()) {
            case SetSpec::Kind::cube:
            case SetSpec::Kind::ball: {
              const Box b = s.bounding_box();
              if (b.lo[a] + shift[a] < grid.cell_lo[a] * kTwoPi ||
                  b.hi[a] + shift[a] > grid.cell_hi[a] * kTwoPi) {
                culprit = format_set(SetSpec::translate(s, shift));
                return true;
              }
              return false;
            }
            case SetSpec::Kind::translate:
              for (int d = 0; d < n; ++d) shift[d] += s.offset()[d];
              return find(s.children()[0], std::move(shift));
            case SetSpec::Kind::set_difference:
              return find(s.children()[0], std::move(shift));
            default:
              for (const auto& c : s.children())
                if (find(c, shift)) return true;
              return false;
          }
        };
    find(spec, std::vector<double>(static_cast<std::size_t>(n), 0.0));
    throw InvalidArgument("grid box too small: " + culprit + " extends outside the box along axis " +
                          std::to_string(a));
  }

  const auto ext = grid.node_extent();
  const auto org = grid.node_origin();
  const double delta = grid.spacing();
  std::vector<std::uint8_t> mask(grid.node_count());
  kernels::fill_mask(mask, [&](std::size_t flat) {
    double centre[8];
    std::vector<double> heap;
    double* x = centre;
    if (n > 8) {
      heap.resize(static_cast<std::size_t>(n));
      x = heap.data();
    }
    std::size_t rest = flat;
    for (int a = n; a-- > 0;) {
      const int local = static_cast<int>(rest % static_cast<std::size_t>(ext[a]));
      rest /= static_cast<std::size_t>(ext[a]);
      x[a] = (org[a] + local + 0.5) * delta;
    }
    return spec.contains(std::span<const double>(x, static_cast<std::size_t>(n)));
  });
  return RasterizedSet(grid, std::move(mask), spec.diameter_bound(),
                       spec.boundary_measure_bound(), format_set(spec));
}

RasterizedSet rasterize(const SetSpec& spec, int resolution, int pad) {
  return rasterize(spec, grid_for(spec, resolution, pad));
}

RasterizedSet raster_from_mask(GridSpec grid, std::vector<std::uint8_t> mask, std::string name) {
  grid.validate();
  if (mask.size() != grid.node_count()) throw InvalidArgument("mask size does not match the grid");
  const int n = grid.dim();
  std::vector<int> lo(n, std::numeric_limits<int>::max());
  std::vector<int> hi(n, std::numeric_limits<int>::min());
  bool any = false;
  for (std::size_t i = 0; i < mask.size(); ++i) {
    if (!mask[i]) continue;
    any = true;
    const auto j = node_of_flat(grid, i);
    for (int a = 0; a < n; ++a) {
      lo[a] = std::min(lo[a], j[a]);
      hi[a] = std::max(hi[a], j[a]);
    }
  }
  double diameter = 0.0;
  double boundary = 0.0;
  if (any) {
    const double delta = grid.spacing();
    double s = 0.0;
    for (int a = 0; a < n; ++a) {
      const double w = (hi[a] - lo[a] + 1) * delta;
      s += w * w;
      boundary += 2.0 * std::pow(w, n - 1);
    }
    diameter = std::sqrt(s);
  }
  return RasterizedSet(std::move(grid), std::move(mask), diameter, boundary, std::move(name));
}

// ---------------------------------------------------------------------------
// Tiling

ResidueTable residue_table(const RasterizedSet& set) {
  const GridSpec& g = set.grid();
  const auto residues = node_residues(g);
  std::size_t classes = 1;
  for (int a = 0; a < g.dim(); ++a) classes *= static_cast<std::size_t>(g.resolution);

  ResidueTable t;
  t.multiplicity.assign(classes, 0);
  for (std::size_t i = 0; i < residues.size(); ++i)
    if (set.at_flat(i)) ++t.multiplicity[residues[i]];
  t.lists.offset.assign(classes + 1, 0);
  for (std::size_t r = 0; r < classes; ++r)
    t.lists.offset[r + 1] = t.lists.offset[r] + t.multiplicity[r];
  t.lists.node.resize(t.lists.offset.back());
  std::vector<std::size_t> fill(t.lists.offset.begin(), t.lists.offset.end() - 1);
  for (std::size_t i = 0; i < residues.size(); ++i)
    if (set.at_flat(i)) t.lists.node[fill[residues[i]]++] = i;
  for (std::size_t m : t.multiplicity) {
    if (m == 0) ++t.empty_classes;
    t.max_multiplicity = std::max(t.max_multiplicity, m);
  }
  return t;
}

double overlap_measure(const RasterizedSet& set, std::span<const int> k) {
  const GridSpec& g = set.grid();
  if (static_cast<int>(k.size()) != g.dim()) throw InvalidArgument("shift dimension mismatch");
  if (std::all_of(k.begin(), k.end(), [](int v) { return v == 0; }))
    throw InvalidArgument("overlap_measure requires k != 0");
  std::size_t hits = 0;
  std::vector<int> shifted(k.size());
  for (std::size_t i = 0; i < g.node_count(); ++i) {
    if (!set.at_flat(i)) continue;
    const auto j = node_of_flat(g, i);
    for (std::size_t a = 0; a < k.size(); ++a) shifted[a] = j[a] - g.resolution * k[a];
    if (set.at(shifted)) ++hits;
  }
  return static_cast<double>(hits) * std::pow(g.spacing(), g.dim());
}

double coverage_gap(const RasterizedSet& set) {
  const auto t = residue_table(set);
  return static_cast<double>(t.empty_classes) * std::pow(set.grid().spacing(), set.dim());
}

std::vector<std::vector<int>> candidate_shifts(int dim, double diameter) {
  const int reach = static_cast<int>(std::floor(diameter / kTwoPi));
  std::vector<std::vector<int>> out;
  std::vector<int> k(dim, -reach);
  if (reach == 0) return out;
  while (true) {
    double norm2 = 0.0;
    bool zero = true;
    for (int v : k) {
      norm2 += static_cast<double>(v) * v;
      zero = zero && v == 0;
    }
    if (!zero && kTwoPi * std::sqrt(norm2) <= diameter) out.push_back(k);
    int a = dim - 1;
    while (a >= 0 && k[a] == reach) k[a--] = -reach;
    if (a < 0) break;
    ++k[a];
  }
  return out;
}

const char* to_string(TilingVerdict v) {
  switch (v) {
    case TilingVerdict::fundamental: return "fundamental";
    case TilingVerdict::overlap_violation: return "overlap_violation";
    case TilingVerdict::coverage_violation: return "coverage_violation";
    case TilingVerdict::both: return "both";
    case TilingVerdict::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

namespace {

enum class Trend { zero, positive, unclear };

// A defect is zero when m(M) <= bound / M at every level and it either sits
// well inside one boundary layer or actually decays with M. A defect that
// fits under the bound without decaying is not certified.
Trend classify_trend(const std::vector<double>& m, const std::vector<int>& res, double bound) {
  double worst = 0.0;
  for (std::size_t i = 0; i < m.size(); ++i) worst = std::max(worst, m[i] * res[i]);
  const double last = m.back() * res.back();
  if (worst <= bound) {
    if (last <= 0.1 * bound) return Trend::zero;
    if (m.back() <= m.front() * std::sqrt(static_cast<double>(res.front()) / res.back()))
      return Trend::zero;
    return Trend::unclear;
  }
  if (last > bound) return Trend::positive;
  return Trend::unclear;
}

double fit_rate(const std::vector<double>& m, const std::vector<int>& res) {
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < m.size(); ++i) {
    num += m[i] / res[i];
    den += 1.0 / (static_cast<double>(res[i]) * res[i]);
  }
  return num / den;
}

}  // namespace

TilingReport classify_tiling(const SetSpec& spec, const std::vector<int>& resolutions,
                             const ToleranceRule& rule) {
  if (resolutions.size() < 2) throw InvalidArgument("classify_tiling needs at least two resolutions");
  for (std::size_t i = 1; i < resolutions.size(); ++i)
    if (resolutions[i] <= resolutions[i - 1])
      throw InvalidArgument("classify_tiling resolutions must be increasing");

  TilingReport report;
  report.boundary_length = spec.boundary_measure_bound();
  const auto shifts = candidate_shifts(spec.dim(), spec.diameter_bound());

  std::vector<double> overlaps;
  std::vector<double> gaps;
  for (int M : resolutions) {
    const auto set = rasterize(spec, M);
    TilingLevel level;
    level.resolution = M;
    level.measure = set.measure();
    for (const auto& k : shifts) {
      const double m = overlap_measure(set, k);
      level.overlaps.push_back({k, m});
      level.overlap_total += m;
      level.max_overlap = std::max(level.max_overlap, m);
    }
    level.coverage_gap = coverage_gap(set);
    overlaps.push_back(level.overlap_total);
    gaps.push_back(level.coverage_gap);
    report.levels.push_back(std::move(level));
  }
  report.overlap_rate = fit_rate(overlaps, resolutions);
  report.gap_rate = fit_rate(gaps, resolutions);

  const double bound = rule.boundary_factor * report.boundary_length;
  const Trend ov = classify_trend(overlaps, resolutions, bound);
  const Trend gp = classify_trend(gaps, resolutions, bound);
  if (ov == Trend::unclear || gp == Trend::unclear) {
    report.verdict = TilingVerdict::inconclusive;
    report.inconclusive = true;
  } else if (ov == Trend::zero && gp == Trend::zero) {
    report.verdict = TilingVerdict::fundamental;
  } else if (ov == Trend::positive && gp == Trend::positive) {
    report.verdict = TilingVerdict::both;
  } else if (ov == Trend::positive) {
    report.verdict = TilingVerdict::overlap_violation;
  } else {
    report.verdict = TilingVerdict::coverage_violation;
  }
  return report;
}

}  // namespace tilesamp
