// Copyright 2026 The tilesamp Authors
// SPDX-License-Identifier: Apache-2.0

/// \file geometry.hpp
/// \brief Compact spectra K, their rasterization on the spectral grid, and
/// the lattice-tiling tests for 2 pi Z^n.
///
/// Grid convention. At resolution M the spectral grid has spacing
/// delta = 2 pi / M. Node j (a multi-index in Z^n) carries the frequency
/// j * delta and stands for the cell [j delta, (j+1) delta). The cell belongs
/// to K when its centre (j + 1/2) delta does. A shift by 2 pi k is exactly
/// M k nodes, so the translates K + 2 pi k are compared node by node.

#ifndef TILESAMP_GEOMETRY_HPP
#define TILESAMP_GEOMETRY_HPP

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "tilesamp/kernels.hpp"
#include "tilesamp/types.hpp"

namespace tilesamp {

/// Axis-aligned box [lo, hi].
struct Box {
  std::vector<double> lo;
  std::vector<double> hi;
  double diagonal() const;
};

/// A compact subset of R^n built from closed cubes and balls with
/// translation, union, intersection and difference.
///
/// Boundary conventions: primitives are closed; a difference A \ B removes
/// only the open interior of B. The union of interiors stands in for the
/// interior of a union (the two differ by a null set).
class SetSpec {
 public:
  enum class Kind { cube, ball, translate, set_union, set_difference, set_intersection };

  static SetSpec cube(std::vector<double> center, double side);
  static SetSpec ball(std::vector<double> center, double radius);
  static SetSpec translate(SetSpec inner, std::vector<double> offset);
  static SetSpec unite(std::vector<SetSpec> parts);
  static SetSpec intersect(std::vector<SetSpec> parts);
  static SetSpec difference(SetSpec minuend, SetSpec subtrahend);

  /// ([0,2pi]^2 u B((pi,0),pi)) \ B((pi,2pi),pi), a fundamental domain of
  /// 2 pi Z^2 whose boundary contains circular arcs.
  static SetSpec counterexample_k();

  Kind kind() const;
  int dim() const;

  // Primitive parameters (cube: center + side, ball: center + radius).
  const std::vector<double>& center() const;
  double size() const;
  // Translate offset.
  const std::vector<double>& offset() const;
  const std::vector<SetSpec>& children() const;

  bool contains(std::span<const double> x) const;
  bool contains_interior(std::span<const double> x) const;

  Box bounding_box() const;
  /// Upper bound on the diameter (exact for primitives).
  double diameter_bound() const;
  /// Sum of the surface measures of all primitives; an upper bound on the
  /// (n-1)-dimensional measure of the boundary.
  double boundary_measure_bound() const;

  /// Calls fn(primitive, accumulated translation) for every leaf.
  void for_each_primitive(
      const std::function<void(const SetSpec&, std::span<const double>)>& fn) const;

  friend bool operator==(const SetSpec& a, const SetSpec& b);

 private:
  struct Node;
  explicit SetSpec(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

/// Spectral grid: resolution M and a box made of whole 2 pi cells,
/// [cell_lo * 2pi, cell_hi * 2pi) per axis.
struct GridSpec {
  int resolution = 0;
  std::vector<int> cell_lo;
  std::vector<int> cell_hi;

  int dim() const { return static_cast<int>(cell_lo.size()); }
  double spacing() const { return kTwoPi / resolution; }
  /// Number of nodes per axis, (cell_hi - cell_lo) * M.
  std::vector<int> node_extent() const;
  /// Absolute index of the first node per axis, cell_lo * M.
  std::vector<int> node_origin() const;
  std::size_t node_count() const;
  /// Widest axis of the box in 2 pi cells.
  int max_cells() const;
  void validate() const;

  friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

/// Smallest cell-aligned box containing the analytic bounding box of `spec`,
/// widened by `pad` cells on every side.
GridSpec grid_for(const SetSpec& spec, int resolution, int pad = 0);

/// Flat row-major index of absolute node `j`, or -1 if outside the box.
std::int64_t flat_node_index(const GridSpec& grid, std::span<const int> j);
/// Absolute node index of flat index `flat`.
std::vector<int> node_of_flat(const GridSpec& grid, std::size_t flat);
/// Residue class (j mod M per axis, row-major over [0,M)^n) of every node.
std::vector<std::size_t> node_residues(const GridSpec& grid);

/// Indicator of K on a GridSpec.
class RasterizedSet {
 public:
  RasterizedSet(GridSpec grid, std::vector<std::uint8_t> mask, double diameter,
                double boundary_length, std::string name);

  const GridSpec& grid() const { return grid_; }
  std::span<const std::uint8_t> mask() const { return mask_; }
  bool at_flat(std::size_t i) const { return mask_[i] != 0; }
  /// Membership of absolute node j (false outside the box).
  bool at(std::span<const int> j) const;

  std::size_t count() const { return count_; }
  /// count * delta^n
  double measure() const;
  double diameter() const { return diameter_; }
  double boundary_length() const { return boundary_length_; }
  const std::string& name() const { return name_; }
  int dim() const { return grid_.dim(); }
  int resolution() const { return grid_.resolution; }

 private:
  GridSpec grid_;
  std::vector<std::uint8_t> mask_;
  std::size_t count_ = 0;
  double diameter_ = 0.0;
  double boundary_length_ = 0.0;
  std::string name_;
};

/// Evaluates point membership of every cell centre. Throws InvalidArgument
/// naming the offending primitive if the grid box does not contain it.
RasterizedSet rasterize(const SetSpec& spec, const GridSpec& grid);
RasterizedSet rasterize(const SetSpec& spec, int resolution, int pad = 0);

/// Builds a RasterizedSet from an explicit node mask (no analytic set).
/// The diameter is bounded by the box spanned by the marked cells.
RasterizedSet raster_from_mask(GridSpec grid, std::vector<std::uint8_t> mask,
                               std::string name);

/// Mask nodes grouped by residue class modulo M.
struct ResidueTable {
  kernels::ResidueLists lists;
  std::vector<std::size_t> multiplicity;
  std::size_t empty_classes = 0;
  std::size_t max_multiplicity = 0;
  /// Exactly one mask node per residue class.
  bool exact_tiling() const { return empty_classes == 0 && max_multiplicity == 1; }
};
ResidueTable residue_table(const RasterizedSet& set);

/// Measure of K n (K + 2 pi k); requires k != 0.
double overlap_measure(const RasterizedSet& set, std::span<const int> k);
/// Measure of the part of one period cell not covered by the translates.
double coverage_gap(const RasterizedSet& set);
/// Shifts k != 0 with |2 pi k| <= diameter.
std::vector<std::vector<int>> candidate_shifts(int dim, double diameter);

enum class TilingVerdict { fundamental, overlap_violation, coverage_violation, both, inconclusive };
const char* to_string(TilingVerdict v);

struct ShiftOverlap {
  std::vector<int> k;
  double measure = 0.0;
};

struct TilingLevel {
  int resolution = 0;
  double measure = 0.0;
  double overlap_total = 0.0;
  double max_overlap = 0.0;
  double coverage_gap = 0.0;
  std::vector<ShiftOverlap> overlaps;
};

/// A measure sequence m(M) "is zero" when every m(M) * M stays below
/// `boundary_factor` times the boundary length.
struct ToleranceRule {
  double boundary_factor = 10.0;
};

struct TilingReport {
  std::vector<TilingLevel> levels;
  double boundary_length = 0.0;
  /// Least-squares c in m(M) ~ c / M.
  double overlap_rate = 0.0;
  double gap_rate = 0.0;
  TilingVerdict verdict = TilingVerdict::inconclusive;
  bool inconclusive = false;
};

/// Decides whether K is a fundamental domain of 2 pi Z^n from the
/// convergence of the overlap and gap measures over increasing resolutions.
TilingReport classify_tiling(const SetSpec& spec, const std::vector<int>& resolutions,
                             const ToleranceRule& rule = {});

}  // namespace tilesamp

#endif  // TILESAMP_GEOMETRY_HPP
