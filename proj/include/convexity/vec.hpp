#pragma once

#include <array>
#include <cmath>
#include <cstddef>

namespace convexity {

// Fixed-dimension point/direction in R^N. Only N = 2 and N = 3 are used for
// discrete geometry; the kinematic constants accept any dimension separately.
template <std::size_t N>
struct Vec {
    std::array<double, N> c{};

    constexpr Vec() = default;
    constexpr Vec(double x, double y) requires (N == 2) : c{x, y} {}
    constexpr Vec(double x, double y, double z) requires (N == 3) : c{x, y, z} {}

    constexpr double& operator[](std::size_t i) { return c[i]; }
    constexpr double operator[](std::size_t i) const { return c[i]; }

    constexpr double x() const { return c[0]; }
    constexpr double y() const { return c[1]; }
    constexpr double z() const requires (N == 3) { return c[2]; }

    friend constexpr Vec operator+(Vec a, const Vec& b) {
        for (std::size_t i = 0; i < N; ++i) a.c[i] += b.c[i];
        return a;
    }
    friend constexpr Vec operator-(Vec a, const Vec& b) {
        for (std::size_t i = 0; i < N; ++i) a.c[i] -= b.c[i];
        return a;
    }
    friend constexpr Vec operator*(double s, Vec a) {
        for (std::size_t i = 0; i < N; ++i) a.c[i] *= s;
        return a;
    }
    friend constexpr Vec operator*(Vec a, double s) { return s * a; }
    friend constexpr Vec operator/(Vec a, double s) { return (1.0 / s) * a; }
    constexpr Vec operator-() const { return -1.0 * *this; }
    constexpr Vec& operator+=(const Vec& b) { return *this = *this + b; }
    constexpr Vec& operator-=(const Vec& b) { return *this = *this - b; }
    friend constexpr bool operator==(const Vec& a, const Vec& b) { return a.c == b.c; }
};

using Vec2 = Vec<2>;
using Vec3 = Vec<3>;

template <std::size_t N>
constexpr double dot(const Vec<N>& a, const Vec<N>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < N; ++i) s += a.c[i] * b.c[i];
    return s;
}

template <std::size_t N>
inline double norm(const Vec<N>& a) {
    return std::sqrt(dot(a, a));
}

template <std::size_t N>
inline Vec<N> normalized(const Vec<N>& a) {
    return a / norm(a);
}

// z-component of the 2D cross product a x b.
constexpr double cross(const Vec2& a, const Vec2& b) {
    return a.c[0] * b.c[1] - a.c[1] * b.c[0];
}

constexpr Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a.c[1] * b.c[2] - a.c[2] * b.c[1],
            a.c[2] * b.c[0] - a.c[0] * b.c[2],
            a.c[0] * b.c[1] - a.c[1] * b.c[0]};
}

// Tangent rotated -90 degrees: the outward normal of a CCW polygon edge.
constexpr Vec2 rotate_cw(const Vec2& t) {
    return {t.c[1], -t.c[0]};
}

} // namespace convexity
