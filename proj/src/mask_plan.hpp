// Copyright 2026 The tilesamp Authors
// SPDX-License-Identifier: Apache-2.0

// Index tables shared by the operator builders.

#ifndef TILESAMP_SRC_MASK_PLAN_HPP
#define TILESAMP_SRC_MASK_PLAN_HPP

#include <cmath>

#include "tilesamp/geometry.hpp"
#include "tilesamp/spectral.hpp"

namespace tilesamp::detail {

struct MaskPlan {
  TorusModel model;
  std::vector<std::size_t> node;     // flat grid index of each mask node
  std::vector<std::size_t> fine;     // fine frequency index of each mask node
  std::vector<std::size_t> residue;  // residue class of each mask node
  std::vector<std::size_t> multiplicity;
  std::size_t empty_classes = 0;
  std::size_t max_multiplicity = 0;
  double lattice_scale = 1.0;  // M^{-n}
};

inline MaskPlan make_plan(const RasterizedSet& mask, const TorusModel& model) {
  MaskPlan plan;
  plan.model = model;
  const auto fine = fine_positions(model, mask.grid());
  const auto res = node_residues(mask.grid());
  plan.multiplicity.assign(model.lattice_count(), 0);
  for (std::size_t i = 0; i < fine.size(); ++i) {
    if (!mask.at_flat(i)) continue;
    plan.node.push_back(i);
    plan.fine.push_back(fine[i]);
    plan.residue.push_back(res[i]);
    ++plan.multiplicity[res[i]];
  }
  for (std::size_t m : plan.multiplicity) {
    if (m == 0) ++plan.empty_classes;
    plan.max_multiplicity = std::max(plan.max_multiplicity, m);
  }
  plan.lattice_scale = std::pow(static_cast<double>(model.resolution), -model.dim);
  return plan;
}

}  // namespace tilesamp::detail

#endif  // TILESAMP_SRC_MASK_PLAN_HPP
