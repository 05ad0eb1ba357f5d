#include "isoschatten/geometry.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <numbers>

#include "isoschatten/kernel.hpp"

namespace isoschatten {

namespace {

double sq(double x) { return x * x; }

double shoelace_signed(const std::vector<PlanePoint>& v) {
    double acc = 0.0;
    const size_t n = v.size();
    for (size_t i = 0; i < n; ++i) {
        const auto& a = v[i];
        const auto& b = v[(i + 1) % n];
        acc += a[0] * b[1] - b[0] * a[1];
    }
    return 0.5 * acc;
}

double cross(const PlanePoint& o, const PlanePoint& a, const PlanePoint& b) {
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

// Proper segment intersection test used by the polygon simplicity check.
bool segments_intersect(const PlanePoint& p1, const PlanePoint& p2, const PlanePoint& q1,
                        const PlanePoint& q2) {
    const double d1 = cross(q1, q2, p1);
    const double d2 = cross(q1, q2, p2);
    const double d3 = cross(p1, p2, q1);
    const double d4 = cross(p1, p2, q2);
    return ((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) &&
           ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0));
}

bool point_in_polygon(const std::vector<PlanePoint>& poly, double x, double y) {
    bool inside = false;
    const size_t n = poly.size();
    for (size_t i = 0, j = n - 1; i < n; j = i++) {
        const double xi = poly[i][0], yi = poly[i][1];
        const double xj = poly[j][0], yj = poly[j][1];
        if ((yi > y) != (yj > y)) {
            const double x_cross = xj + (y - yj) / (yi - yj) * (xi - xj);
            if (x < x_cross) inside = !inside;
        }
    }
    return inside;
}

}  // namespace

double distance(const Point& a, const Point& b, int d) {
    double acc = 0.0;
    for (int k = 0; k < d; ++k) acc += sq(a[k] - b[k]);
    return std::sqrt(acc);
}

Domain::Domain(Ball b) : shape_(std::move(b)) {
    const auto& ball = std::get<Ball>(shape_);
    if (ball.dimension < 1 || ball.dimension > 3)
        fail(ErrorCode::DegenerateDomain, "ball dimension must be 1, 2 or 3");
    if (!(ball.radius > 0.0)) fail(ErrorCode::DegenerateDomain, "ball radius must be > 0");
}

Domain::Domain(Triangle t) : shape_(std::move(t)) {
    if (!(triangle_area(std::get<Triangle>(shape_)) > 0.0))
        fail(ErrorCode::DegenerateDomain, "triangle has zero area");
}

Domain::Domain(Polygon p) : shape_(std::move(p)) {
    const auto& poly = std::get<Polygon>(shape_);
    const size_t n = poly.v.size();
    if (n < 3) fail(ErrorCode::DegenerateDomain, "polygon needs >= 3 vertices");
    if (!(std::abs(shoelace_signed(poly.v)) > 0.0))
        fail(ErrorCode::DegenerateDomain, "polygon has zero area");
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = i + 1; j < n; ++j) {
            if (j == i || (j + 1) % n == i || (i + 1) % n == j) continue;  // adjacent edges
            if (segments_intersect(poly.v[i], poly.v[(i + 1) % n], poly.v[j],
                                   poly.v[(j + 1) % n]))
                fail(ErrorCode::DegenerateDomain, "polygon is not simple");
        }
    }
}

Domain::Domain(Box b) : shape_(std::move(b)) {
    const auto& box = std::get<Box>(shape_);
    if (box.dimension < 1 || box.dimension > 3)
        fail(ErrorCode::DegenerateDomain, "box dimension must be 1, 2 or 3");
    for (int k = 0; k < box.dimension; ++k)
        if (!(box.lo[k] < box.hi[k]))
            fail(ErrorCode::DegenerateDomain, "box requires lo < hi componentwise");
}

int Domain::dimension() const {
    return std::visit(
        [](const auto& s) -> int {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, Ball>) return s.dimension;
            else if constexpr (std::is_same_v<T, Box>) return s.dimension;
            else return 2;
        },
        shape_);
}

double Domain::measure() const {
    return std::visit(
        [](const auto& s) -> double {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, Ball>) {
                return unit_ball_volume(s.dimension) * std::pow(s.radius, s.dimension);
            } else if constexpr (std::is_same_v<T, Triangle>) {
                return triangle_area(s);
            } else if constexpr (std::is_same_v<T, Polygon>) {
                return std::abs(shoelace_signed(s.v));
            } else {
                double m = 1.0;
                for (int k = 0; k < s.dimension; ++k) m *= s.hi[k] - s.lo[k];
                return m;
            }
        },
        shape_);
}

std::pair<Point, Point> Domain::bounding_box() const {
    Point lo{0, 0, 0}, hi{0, 0, 0};
    std::visit(
        [&](const auto& s) {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, Ball>) {
                for (int k = 0; k < s.dimension; ++k) {
                    lo[k] = s.center[k] - s.radius;
                    hi[k] = s.center[k] + s.radius;
                }
            } else if constexpr (std::is_same_v<T, Triangle>) {
                for (int k = 0; k < 2; ++k) {
                    lo[k] = std::min({s.v[0][k], s.v[1][k], s.v[2][k]});
                    hi[k] = std::max({s.v[0][k], s.v[1][k], s.v[2][k]});
                }
            } else if constexpr (std::is_same_v<T, Polygon>) {
                lo[0] = lo[1] = std::numeric_limits<double>::infinity();
                hi[0] = hi[1] = -std::numeric_limits<double>::infinity();
                for (const auto& p : s.v) {
                    for (int k = 0; k < 2; ++k) {
                        lo[k] = std::min(lo[k], p[k]);
                        hi[k] = std::max(hi[k], p[k]);
                    }
                }
            } else {
                lo = s.lo;
                hi = s.hi;
            }
        },
        shape_);
    return {lo, hi};
}

bool Domain::contains(const Point& p) const {
    return std::visit(
        [&](const auto& s) -> bool {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, Ball>) {
                double acc = 0.0;
                for (int k = 0; k < s.dimension; ++k) acc += sq(p[k] - s.center[k]);
                return acc < sq(s.radius);
            } else if constexpr (std::is_same_v<T, Triangle>) {
                const double s1 = cross(s.v[0], s.v[1], {p[0], p[1]});
                const double s2 = cross(s.v[1], s.v[2], {p[0], p[1]});
                const double s3 = cross(s.v[2], s.v[0], {p[0], p[1]});
                return (s1 > 0 && s2 > 0 && s3 > 0) || (s1 < 0 && s2 < 0 && s3 < 0);
            } else if constexpr (std::is_same_v<T, Polygon>) {
                return point_in_polygon(s.v, p[0], p[1]);
            } else {
                for (int k = 0; k < s.dimension; ++k)
                    if (!(s.lo[k] < p[k] && p[k] < s.hi[k])) return false;
                return true;
            }
        },
        shape_);
}

Point Domain::centroid() const {
    return std::visit(
        [](const auto& s) -> Point {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, Ball>) {
                return s.center;
            } else if constexpr (std::is_same_v<T, Triangle>) {
                return Point{(s.v[0][0] + s.v[1][0] + s.v[2][0]) / 3.0,
                             (s.v[0][1] + s.v[1][1] + s.v[2][1]) / 3.0, 0.0};
            } else if constexpr (std::is_same_v<T, Polygon>) {
                const double a = shoelace_signed(s.v);
                double cx = 0.0, cy = 0.0;
                const size_t n = s.v.size();
                for (size_t i = 0; i < n; ++i) {
                    const auto& p = s.v[i];
                    const auto& q = s.v[(i + 1) % n];
                    const double w = p[0] * q[1] - q[0] * p[1];
                    cx += (p[0] + q[0]) * w;
                    cy += (p[1] + q[1]) * w;
                }
                return Point{cx / (6.0 * a), cy / (6.0 * a), 0.0};
            } else {
                Point c{0, 0, 0};
                for (int k = 0; k < s.dimension; ++k) c[k] = 0.5 * (s.lo[k] + s.hi[k]);
                return c;
            }
        },
        shape_);
}

Domain Domain::scaled_to_measure(double target) const {
    if (!(target > 0.0)) fail(ErrorCode::DegenerateDomain, "target measure must be > 0");
    const int d = dimension();
    const double factor = std::pow(target / measure(), 1.0 / d);
    const Point c = centroid();
    auto map1 = [&](double x, int k) { return c[k] + factor * (x - c[k]); };
    return std::visit(
        [&](const auto& s) -> Domain {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, Ball>) {
                Ball out = s;
                out.radius *= factor;
                return Domain(out);
            } else if constexpr (std::is_same_v<T, Triangle>) {
                Triangle out = s;
                for (auto& v : out.v) {
                    v[0] = map1(v[0], 0);
                    v[1] = map1(v[1], 1);
                }
                return Domain(out);
            } else if constexpr (std::is_same_v<T, Polygon>) {
                Polygon out = s;
                for (auto& v : out.v) {
                    v[0] = map1(v[0], 0);
                    v[1] = map1(v[1], 1);
                }
                return Domain(out);
            } else {
                Box out = s;
                for (int k = 0; k < s.dimension; ++k) {
                    out.lo[k] = map1(s.lo[k], k);
                    out.hi[k] = map1(s.hi[k], k);
                }
                return Domain(out);
            }
        },
        shape_);
}

std::string Domain::kind() const {
    return std::visit(
        [](const auto& s) -> std::string {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, Ball>) return "ball";
            else if constexpr (std::is_same_v<T, Triangle>) return "triangle";
            else if constexpr (std::is_same_v<T, Polygon>) return "polygon";
            else return "box";
        },
        shape_);
}

Ball equimeasure_ball(const Domain& domain) {
    const int d = domain.dimension();
    const double r = std::pow(domain.measure() / unit_ball_volume(d), 1.0 / d);
    return Ball{Point{0, 0, 0}, r, d};
}

double triangle_area(const Triangle& t) {
    return 0.5 * std::abs(cross(t.v[0], t.v[1], t.v[2]));
}

std::array<double, 3> triangle_side_lengths(const Triangle& t) {
    std::array<double, 3> out{};
    for (int i = 0; i < 3; ++i) {
        const auto& a = t.v[i];
        const auto& b = t.v[(i + 1) % 3];
        out[i] = std::hypot(b[0] - a[0], b[1] - a[1]);
    }
    return out;
}

double triangle_perimeter(const Triangle& t) {
    const auto s = triangle_side_lengths(t);
    return s[0] + s[1] + s[2];
}

Triangle equilateral_triangle(double area) {
    if (!(area > 0.0)) fail(ErrorCode::DegenerateDomain, "area must be > 0");
    const double side = std::sqrt(4.0 * area / std::sqrt(3.0));
    const double circumradius = side / std::sqrt(3.0);
    Triangle t;
    for (int i = 0; i < 3; ++i) {
        const double angle = std::numbers::pi / 2.0 + 2.0 * std::numbers::pi * i / 3.0;
        t.v[i] = {circumradius * std::cos(angle), circumradius * std::sin(angle)};
    }
    return t;
}

Triangle steiner_symmetrize_triangle(const Triangle& t, int side) {
    if (side < 0 || side > 2) fail(ErrorCode::InvalidArgument, "side index must be 0, 1 or 2");
    const double area = triangle_area(t);
    if (!(area > 0.0)) fail(ErrorCode::DegenerateDomain, "triangle has zero area");
    const PlanePoint a = t.v[side];
    const PlanePoint b = t.v[(side + 1) % 3];
    const PlanePoint apex = t.v[(side + 2) % 3];
    const double base_len = std::hypot(b[0] - a[0], b[1] - a[1]);
    const double height = 2.0 * area / base_len;
    // Unit normal to the base, oriented toward the original apex.
    double nx = -(b[1] - a[1]) / base_len;
    double ny = (b[0] - a[0]) / base_len;
    const double apex_side = nx * (apex[0] - a[0]) + ny * (apex[1] - a[1]);
    if (apex_side < 0.0) {
        nx = -nx;
        ny = -ny;
    }
    const PlanePoint mid{0.5 * (a[0] + b[0]), 0.5 * (a[1] + b[1])};
    Triangle out = t;
    out.v[(side + 2) % 3] = {mid[0] + height * nx, mid[1] + height * ny};
    return out;
}

SymmetrizationSequence symmetrization_sequence(const Triangle& t, double tol, int max_iter) {
    if (!(tol > 0.0)) fail(ErrorCode::InvalidArgument, "tol must be > 0");
    if (max_iter < 0) fail(ErrorCode::InvalidArgument, "max_iter must be >= 0");
    SymmetrizationSequence seq;
    seq.steps.push_back(t);
    auto spread = [](const Triangle& tri) {
        const auto s = triangle_side_lengths(tri);
        return *std::max_element(s.begin(), s.end()) - *std::min_element(s.begin(), s.end());
    };
    Triangle cur = t;
    for (int i = 0; i < max_iter; ++i) {
        if (spread(cur) < tol) {
            seq.converged = true;
            return seq;
        }
        cur = steiner_symmetrize_triangle(cur, i % 3);
        seq.steps.push_back(cur);
        seq.iterations = i + 1;
    }
    seq.converged = spread(cur) < tol;
    return seq;
}

namespace {

std::vector<double> parse_number_list(std::string_view text, const std::string& ctx) {
    std::vector<double> out;
    size_t pos = 0;
    while (pos <= text.size()) {
        const size_t comma = std::min(text.find(',', pos), text.size());
        const std::string_view tok = text.substr(pos, comma - pos);
        double v = 0.0;
        auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (ec != std::errc() || ptr != tok.data() + tok.size())
            fail(ErrorCode::ConfigParseError, ctx + ": bad number '" + std::string(tok) + "'");
        out.push_back(v);
        if (comma == text.size()) break;
        pos = comma + 1;
    }
    return out;
}

std::vector<PlanePoint> parse_vertices(std::string_view text, const std::string& ctx) {
    std::vector<PlanePoint> out;
    size_t pos = 0;
    while (pos <= text.size()) {
        const size_t semi = std::min(text.find(';', pos), text.size());
        const auto coords = parse_number_list(text.substr(pos, semi - pos), ctx);
        if (coords.size() != 2) fail(ErrorCode::ConfigParseError, ctx + ": vertex needs x,y");
        out.push_back({coords[0], coords[1]});
        if (semi == text.size()) break;
        pos = semi + 1;
    }
    return out;
}

}  // namespace

Domain parse_domain(std::string_view text) {
    const std::string ctx = "domain spec '" + std::string(text) + "'";
    const auto colon = text.find(':');
    if (colon == std::string_view::npos) fail(ErrorCode::ConfigParseError, ctx + ": missing ':'");
    std::string name(text.substr(0, colon));
    std::transform(name.begin(), name.end(), name.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    const std::string_view rest = text.substr(colon + 1);

    try {
        if (name == "triangle") {
            const auto verts = parse_vertices(rest, ctx);
            if (verts.size() != 3) fail(ErrorCode::ConfigParseError, ctx + ": need 3 vertices");
            return Domain(Triangle{{verts[0], verts[1], verts[2]}});
        }
        if (name == "polygon") {
            return Domain(Polygon{parse_vertices(rest, ctx)});
        }
        if (name == "ball") {
            int d = 0;
            double r = 0.0;
            bool have_d = false, have_r = false;
            size_t pos = 0;
            const std::string body(rest);
            while (pos < body.size()) {
                const size_t comma = std::min(body.find(',', pos), body.size());
                const std::string tok = body.substr(pos, comma - pos);
                const auto eq = tok.find('=');
                if (eq == std::string::npos)
                    fail(ErrorCode::ConfigParseError, ctx + ": expected key=value");
                const std::string key = tok.substr(0, eq);
                const double v = parse_number_list(tok.substr(eq + 1), ctx).at(0);
                if (key == "d") { d = int(v); have_d = true; }
                else if (key == "r") { r = v; have_r = true; }
                else fail(ErrorCode::ConfigParseError, ctx + ": unknown key '" + key + "'");
                pos = comma == body.size() ? body.size() : comma + 1;
            }
            if (!have_d || !have_r) fail(ErrorCode::ConfigParseError, ctx + ": need d and r");
            return Domain(Ball{Point{0, 0, 0}, r, d});
        }
        if (name == "box") {
            // box:d=2,lo=0,0,hi=2,1  (lo/hi take `d` comma-separated coordinates)
            const std::string body(rest);
            const auto dpos = body.find("d=");
            const auto lpos = body.find("lo=");
            const auto hpos = body.find("hi=");
            if (dpos == std::string::npos || lpos == std::string::npos || hpos == std::string::npos)
                fail(ErrorCode::ConfigParseError, ctx + ": need d=, lo=, hi=");
            const int d = int(parse_number_list(body.substr(dpos + 2, body.find(',', dpos) - dpos - 2), ctx).at(0));
            if (d < 1 || d > 3) fail(ErrorCode::ConfigParseError, ctx + ": d must be 1..3");
            const size_t lo_end = hpos > lpos ? body.rfind(',', hpos) : body.size();
            const auto lo_list = parse_number_list(body.substr(lpos + 3, lo_end - lpos - 3), ctx);
            const auto hi_list = parse_number_list(body.substr(hpos + 3), ctx);
            if (int(lo_list.size()) != d || int(hi_list.size()) != d)
                fail(ErrorCode::ConfigParseError, ctx + ": lo/hi need " + std::to_string(d) + " coordinates");
            Box box;
            box.dimension = d;
            for (int k = 0; k < d; ++k) {
                box.lo[k] = lo_list[k];
                box.hi[k] = hi_list[k];
            }
            return Domain(box);
        }
    } catch (const Error& e) {
        if (e.code() == ErrorCode::DegenerateDomain)
            fail(ErrorCode::ConfigParseError, ctx + ": " + e.what());
        throw;
    }
    fail(ErrorCode::ConfigParseError, ctx + ": unknown domain kind '" + name + "'");
}

}  // namespace isoschatten
