#include "concept_forge/hull.hpp"

#include <algorithm>
#include <numeric>

namespace concept_forge {

namespace {

double cross(const Eigen::MatrixX2d& p, Eigen::Index o, Eigen::Index a, Eigen::Index b) {
  return (p(a, 0) - p(o, 0)) * (p(b, 1) - p(o, 1)) -
         (p(a, 1) - p(o, 1)) * (p(b, 0) - p(o, 0));
}

}  // namespace

std::vector<Eigen::Index> convex_hull_indices(const Eigen::MatrixX2d& points) {
  std::vector<Eigen::Index> order(static_cast<std::size_t>(points.rows()));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&points](Eigen::Index a, Eigen::Index b) {
    return points(a, 0) < points(b, 0) ||
           (points(a, 0) == points(b, 0) && points(a, 1) < points(b, 1));
  });
  order.erase(std::unique(order.begin(), order.end(),
                          [&points](Eigen::Index a, Eigen::Index b) {
                            return points(a, 0) == points(b, 0) &&
                                   points(a, 1) == points(b, 1);
                          }),
              order.end());
  const auto n = order.size();
  if (n <= 2) return order;

  std::vector<Eigen::Index> hull(2 * n);
  std::size_t h = 0;
  for (std::size_t i = 0; i < n; ++i) {  // lower chain
    while (h >= 2 && cross(points, hull[h - 2], hull[h - 1], order[i]) <= 0.0) --h;
    hull[h++] = order[i];
  }
  const std::size_t lower = h + 1;
  for (std::size_t i = n - 1; i-- > 0;) {  // upper chain
    while (h >= lower && cross(points, hull[h - 2], hull[h - 1], order[i]) <= 0.0) --h;
    hull[h++] = order[i];
  }
  hull.resize(h - 1);  // last point repeats the first
  return hull;
}

}  // namespace concept_forge
