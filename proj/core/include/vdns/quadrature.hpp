#pragma once

#include <array>
#include <vector>

namespace vdns {

/// Symmetric quadrature rule on the reference triangle, stored in barycentric
/// coordinates. Weights are strictly positive and sum to 1; an integral over a
/// physical triangle T is |T| * sum_q w_q f(x_q).
struct QuadratureRule {
    std::vector<std::array<double, 3>> points;
    std::vector<double> weights;
    int exact_degree = 0;

    int size() const { return static_cast<int>(weights.size()); }
};

/// Returns the smallest available symmetric positive-weight rule whose
/// exactness degree is >= min_degree. Supported requests: 1 <= min_degree <= 8
/// (rules of degrees 1, 2, 4, 5, 6 and 8 are provided). Throws
/// std::invalid_argument otherwise.
QuadratureRule triangle_quadrature(int min_degree);

}  // namespace vdns
