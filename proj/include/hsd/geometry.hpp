#pragma once

#include <cmath>

namespace hsd {

struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }

    double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
    double norm() const { return std::sqrt(dot(*this)); }

    Vec3 normalized() const {
        const double n = norm();
        return n > 0.0 ? Vec3{x / n, y / n, z / n} : Vec3{};
    }
};

inline double distance(const Vec3& a, const Vec3& b) { return (a - b).norm(); }

struct Vec2 {
    double u = 0.0;
    double v = 0.0;

    Vec2 operator-(const Vec2& o) const { return {u - o.u, v - o.v}; }
    double norm() const { return std::hypot(u, v); }
};

inline double distance(const Vec2& a, const Vec2& b) { return (a - b).norm(); }

} // namespace hsd
