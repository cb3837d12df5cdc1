#pragma once

// Homogeneous lines and points in the rational projective plane, and the
// determinant test for concurrency. Points are (x : y : w), lines are
// coefficient triples (a, b, c) of ax + by + cw = 0; finite points have
// w = 1 after dehomogenization.

#include "fewxc/linalg.hpp"
#include "fewxc/rational.hpp"

#include <array>
#include <optional>
#include <stdexcept>

namespace fewxc {

struct HomPoint {
    Rational x, y, w;

    bool at_infinity() const { return w == 0; }

    // Canonical form up to nonzero scaling.
    HomPoint normalized() const {
        RVector v = primitive_signed({x, y, w});
        return {v[0], v[1], v[2]};
    }

    friend bool operator==(const HomPoint& p, const HomPoint& q) {
        // Equality as projective points.
        return p.x * q.y == q.x * p.y && p.x * q.w == q.x * p.w && p.y * q.w == q.y * p.w;
    }
};

struct HomLine {
    Rational a, b, c;

    HomLine(Rational a_, Rational b_, Rational c_) : a(a_), b(b_), c(c_) {
        if (a == 0 && b == 0 && c == 0)
            throw std::invalid_argument("degenerate line");
    }

    Rational eval(const HomPoint& p) const { return a * p.x + b * p.y + c * p.w; }

    bool same_line(const HomLine& other) const {
        return a * other.b == b * other.a && a * other.c == c * other.a &&
               b * other.c == c * other.b;
    }
};

// Line through two distinct affine points.
inline HomLine line_through(const RVector& p, const RVector& q) {
    if (p.size() != 2 || q.size() != 2) throw std::invalid_argument("line_through: need 2D points");
    if (p == q) throw std::invalid_argument("degenerate line");
    // Cross product of (px, py, 1) and (qx, qy, 1).
    return HomLine(p[1] - q[1], q[0] - p[0], p[0] * q[1] - p[1] * q[0]);
}

// Projective concurrency: engaged result carries the common point, which may
// lie at infinity (three parallel lines are concurrent there).
inline std::optional<HomPoint> concurrent(const HomLine& l1, const HomLine& l2,
                                          const HomLine& l3) {
    if (l1.same_line(l2) || l1.same_line(l3) || l2.same_line(l3))
        throw std::invalid_argument("degenerate pencil");
    RMatrix m(3, 3);
    const std::array<const HomLine*, 3> ls{&l1, &l2, &l3};
    for (std::size_t i = 0; i < 3; ++i) {
        m(i, 0) = ls[i]->a;
        m(i, 1) = ls[i]->b;
        m(i, 2) = ls[i]->c;
    }
    if (det(m) != 0) return std::nullopt;
    // Intersection of l1 and l2; nonzero because the lines are distinct.
    HomPoint p{l1.b * l2.c - l1.c * l2.b,
               l1.c * l2.a - l1.a * l2.c,
               l1.a * l2.b - l1.b * l2.a};
    return p.normalized();
}

} // namespace fewxc
