#pragma once

#include <Eigen/Dense>

namespace vdns {

using Vec2 = Eigen::Vector2d;
using Mat2 = Eigen::Matrix2d;

/// Signed area of the triangle (a, b, c); positive for counter-clockwise order.
inline double signed_area(const Vec2& a, const Vec2& b, const Vec2& c) {
    return 0.5 * ((b.x() - a.x()) * (c.y() - a.y()) - (c.x() - a.x()) * (b.y() - a.y()));
}

}  // namespace vdns
