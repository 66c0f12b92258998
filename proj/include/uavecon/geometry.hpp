#pragma once

#include <array>
#include <cmath>
#include <stdexcept>

namespace uavecon {

struct Point3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    friend bool operator==(const Point3& a, const Point3& b) {
        return a.x == b.x && a.y == b.y && a.z == b.z;
    }
};

inline bool is_finite(const Point3& p) {
    return std::isfinite(p.x) && std::isfinite(p.y) && std::isfinite(p.z);
}

inline double squared_distance(const Point3& a, const Point3& b) {
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    const double dz = a.z - b.z;
    return dx * dx + dy * dy + dz * dz;
}

/// Axis-aligned service domain [0,2A] x [0,2B] x [0,2C].
struct Cuboid {
    double half_x = 1.0;  // A
    double half_y = 1.0;  // B
    double half_z = 1.0;  // C

    Cuboid() = default;
    Cuboid(double a, double b, double c) : half_x(a), half_y(b), half_z(c) {
        if (!(a > 0.0 && b > 0.0 && c > 0.0)) {
            throw std::invalid_argument("Cuboid: half-extents must be positive");
        }
    }

    bool contains(const Point3& p) const {
        return p.x >= 0.0 && p.x <= 2.0 * half_x && p.y >= 0.0 &&
               p.y <= 2.0 * half_y && p.z >= 0.0 && p.z <= 2.0 * half_z;
    }

    Point3 center() const { return {half_x, half_y, half_z}; }

    /// The eight corners, in lexicographic (x, y, z) order.
    std::array<Point3, 8> vertices() const {
        std::array<Point3, 8> out{};
        int k = 0;
        for (double vx : {0.0, 2.0 * half_x}) {
            for (double vy : {0.0, 2.0 * half_y}) {
                for (double vz : {0.0, 2.0 * half_z}) {
                    out[k++] = Point3{vx, vy, vz};
                }
            }
        }
        return out;
    }
};

}  // namespace uavecon
