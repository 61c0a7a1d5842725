#pragma once

// Evaluation of a bandlimited field on a uniform tensor grid over the torus
// fundamental domain. Used by the comparison-principle integrals, where the
// sublevel-set indicator needs pointwise values at every cell center.
//
// The transform runs axis by axis over the dense frequency bounding box and
// streams the final axis, so memory stays at the penultimate intermediate
// even for fine grids.

#include <functional>

#include "hermet/fields.hpp"

namespace hermet {

/// Calls fn(flat_index, value) for every point of the N^{2n} grid with
/// coordinates x_a = (t_a + offset)/N, in lexicographic (row-major) order of
/// (t_1, ..., t_{2n}).
void for_each_grid_value(const FourierField& f, int grid_per_axis,
                         const std::function<void(std::size_t, cplx)>& fn,
                         double offset = 0.5);

} // namespace hermet
