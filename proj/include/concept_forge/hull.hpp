#pragma once

#include <Eigen/Core>
#include <vector>

namespace concept_forge {

// Convex hull of 2-D points (Andrew's monotone chain). Returns indices into
// the input in counter-clockwise order, collinear points dropped. Degenerate
// inputs (one or two distinct points) return the distinct points.
std::vector<Eigen::Index> convex_hull_indices(const Eigen::MatrixX2d& points);

}  // namespace concept_forge
