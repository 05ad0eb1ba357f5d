#pragma once

#include <array>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "isoschatten/errors.hpp"

namespace isoschatten {

// Points live in R^3 with unused trailing coordinates fixed to zero; the
// active dimension travels with the domain.
using Point = std::array<double, 3>;
using PlanePoint = std::array<double, 2>;

double distance(const Point& a, const Point& b, int d);

struct Ball {
    Point center{0.0, 0.0, 0.0};
    double radius = 0.0;
    int dimension = 0;
};

struct Triangle {
    std::array<PlanePoint, 3> v{};
};

struct Polygon {
    std::vector<PlanePoint> v;
};

struct Box {
    Point lo{0.0, 0.0, 0.0};
    Point hi{0.0, 0.0, 0.0};
    int dimension = 0;
};

// Bounded open domain in R^d. Construction validates non-degeneracy (positive
// measure, simple polygon, lo < hi componentwise).
class Domain {
public:
    using Shape = std::variant<Ball, Triangle, Polygon, Box>;

    explicit Domain(Ball b);
    explicit Domain(Triangle t);
    explicit Domain(Polygon p);
    explicit Domain(Box b);

    const Shape& shape() const noexcept { return shape_; }
    bool is_ball() const noexcept { return std::holds_alternative<Ball>(shape_); }
    bool is_triangle() const noexcept { return std::holds_alternative<Triangle>(shape_); }

    int dimension() const;
    double measure() const;
    std::pair<Point, Point> bounding_box() const;
    bool contains(const Point& p) const;  // open-set membership
    Point centroid() const;

    // Homothety about the centroid taking the measure to `target`.
    Domain scaled_to_measure(double target) const;

    // Shape kind: "ball", "triangle", "polygon" or "box".
    std::string kind() const;

private:
    Shape shape_;
};

// Ball centered at the origin with the same dimension and measure as `domain`.
Ball equimeasure_ball(const Domain& domain);

double triangle_area(const Triangle& t);
std::array<double, 3> triangle_side_lengths(const Triangle& t);
double triangle_perimeter(const Triangle& t);

// Equilateral triangle centered at the origin with the given area.
Triangle equilateral_triangle(double area);

// Steiner symmetrization with respect to the perpendicular bisector of side
// `side` (the edge v[side] -> v[(side+1)%3]): the base segment is kept and
// the apex moves onto the mediator at height 2*area/base.
Triangle steiner_symmetrize_triangle(const Triangle& t, int side);

struct SymmetrizationSequence {
    std::vector<Triangle> steps;  // includes the input triangle
    bool converged = false;
    int iterations = 0;
};

// Applies steiner_symmetrize_triangle cycling sides 0,1,2 until the spread
// max side - min side falls below `tol`. Hitting max_iter is reported via
// converged=false, not an exception.
SymmetrizationSequence symmetrization_sequence(const Triangle& t, double tol, int max_iter);

// Parses the domain grammar:
//   ball:d=2,r=1 | box:d=2,lo=0,0,hi=2,1 | triangle:0,0;2,0;0,2 |
//   polygon:x1,y1;x2,y2;...
// Throws ConfigParseError.
Domain parse_domain(std::string_view text);

}  // namespace isoschatten
