#pragma once

#include <span>
#include <vector>

#include "koenigs/common.hpp"

namespace koenigs::quadrature {

// Nodes and weights on [-1, 1].
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

// Gauss-Legendre rule by Newton iteration on the Legendre recurrence.
GaussRule gauss_legendre(int n);

// Composite rule over [a, b]: fixed 16-point panels, at least total_points
// nodes overall.  Node order is by panel, left to right.
struct PanelRule {
    std::vector<double> x;
    std::vector<double> w;
};

PanelRule composite_gauss(double a, double b, int total_points);

// Fixed-tree pairwise sum; result is independent of threading because the
// reduction order never changes.
double pairwise_sum(std::span<const double> v);

} // namespace koenigs::quadrature
