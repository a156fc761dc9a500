#include "delpack/geom.hpp"

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>

namespace delpack {

namespace {

using Rational = boost::multiprecision::cpp_rational;

Rational exact(double v) { return Rational(v); }

int sign_of(const Rational& v) { return v > 0 ? 1 : (v < 0 ? -1 : 0); }

double vertex_angle(Point2 apex, Point2 p, Point2 q)
{
    const Point2 u = p - apex;
    const Point2 v = q - apex;
    return std::atan2(std::abs(cross(u, v)), dot(u, v));
}

}  // namespace

const char* to_string(ShapeClass s)
{
    switch (s) {
    case ShapeClass::Acute: return "acute";
    case ShapeClass::Right: return "right";
    case ShapeClass::Obtuse: return "obtuse";
    }
    return "?";
}

const char* to_string(CircleSide s)
{
    switch (s) {
    case CircleSide::Inside: return "inside";
    case CircleSide::OnCircle: return "on_circle";
    case CircleSide::Outside: return "outside";
    }
    return "?";
}

TriangleMetrics triangle_metrics(Point2 a, Point2 b, Point2 c)
{
    TriangleMetrics m;
    m.vertices = {a, b, c};

    const double xmin = std::min({a.x, b.x, c.x});
    const double xmax = std::max({a.x, b.x, c.x});
    const double ymin = std::min({a.y, b.y, c.y});
    const double ymax = std::max({a.y, b.y, c.y});
    const double diam2 = (xmax - xmin) * (xmax - xmin) + (ymax - ymin) * (ymax - ymin);
    const double signed_area = 0.5 * cross(b - a, c - a);
    if (!(std::abs(signed_area) >= 1e-12 * diam2) || diam2 == 0.0)
        throw DegenerateTriangle("degenerate triangle: area below relative threshold");

    m.sides = {dist(b, c), dist(c, a), dist(a, b)};
    m.angles = {vertex_angle(a, b, c), vertex_angle(b, c, a), vertex_angle(c, a, b)};
    m.area = std::abs(signed_area);

    const Point2 ab = b - a;
    const Point2 ac = c - a;
    const double d = 2.0 * cross(ab, ac);
    const double ab2 = dot(ab, ab);
    const double ac2 = dot(ac, ac);
    const Point2 offset{(ac.y * ab2 - ab.y * ac2) / d, (ab.x * ac2 - ac.x * ab2) / d};
    m.circumcenter = a + offset;
    m.circumradius = m.sides[0] * m.sides[1] * m.sides[2] / (4.0 * m.area);

    int imax = 0;
    for (int i = 1; i < 3; ++i)
        if (m.angles[i] > m.angles[imax])
            imax = i;
    m.longest_side = imax;
    const double top = m.angles[imax];
    if (std::abs(top - M_PI / 2) <= kRightAngleTolerance)
        m.shape = ShapeClass::Right;
    else if (top > M_PI / 2)
        m.shape = ShapeClass::Obtuse;
    else
        m.shape = ShapeClass::Acute;
    return m;
}

double area_from_sides(double a, double b, double c)
{
    if (!(a >= 0 && b >= 0 && c >= 0))
        throw TriangleInequalityViolated("negative or NaN side length");
    std::array<double, 3> s{a, b, c};
    std::sort(s.begin(), s.end(), std::greater<>());
    const double x = s[0], y = s[1], z = s[2];
    if (x > y + z)
        throw TriangleInequalityViolated("side lengths violate the triangle inequality");
    const double t = (x + (y + z)) * (z - (x - y)) * (z + (x - y)) * (x + (y - z));
    return 0.25 * std::sqrt(std::max(0.0, t));
}

double circumradius_from_sides(double a, double b, double c)
{
    return a * b * c / (4.0 * area_from_sides(a, b, c));
}

int orientation(Point2 a, Point2 b, Point2 c)
{
    const double l = (b.x - a.x) * (c.y - a.y);
    const double r = (b.y - a.y) * (c.x - a.x);
    const double det = l - r;
    const double bound = 3.3306690738754716e-16 * (std::abs(l) + std::abs(r));
    if (det > bound)
        return 1;
    if (-det > bound)
        return -1;
    const Rational e = (exact(b.x) - exact(a.x)) * (exact(c.y) - exact(a.y)) -
                       (exact(b.y) - exact(a.y)) * (exact(c.x) - exact(a.x));
    return sign_of(e);
}

int incircle_exact_sign(Point2 a, Point2 b, Point2 c, Point2 d)
{
    const Rational adx = exact(a.x) - exact(d.x), ady = exact(a.y) - exact(d.y);
    const Rational bdx = exact(b.x) - exact(d.x), bdy = exact(b.y) - exact(d.y);
    const Rational cdx = exact(c.x) - exact(d.x), cdy = exact(c.y) - exact(d.y);
    const Rational alift = adx * adx + ady * ady;
    const Rational blift = bdx * bdx + bdy * bdy;
    const Rational clift = cdx * cdx + cdy * cdy;
    const Rational det = alift * (bdx * cdy - cdx * bdy) + blift * (cdx * ady - adx * cdy) +
                         clift * (adx * bdy - bdx * ady);
    return sign_of(det);
}

CircleSide incircle(Point2 a, Point2 b, Point2 c, Point2 d)
{
    const int orient = orientation(a, b, c);
    if (orient == 0)
        throw DegenerateTriangle("in-circle test against collinear points");

    const double adx = a.x - d.x, ady = a.y - d.y;
    const double bdx = b.x - d.x, bdy = b.y - d.y;
    const double cdx = c.x - d.x, cdy = c.y - d.y;
    const double alift = adx * adx + ady * ady;
    const double blift = bdx * bdx + bdy * bdy;
    const double clift = cdx * cdx + cdy * cdy;
    const double bc = bdx * cdy - cdx * bdy;
    const double ca = cdx * ady - adx * cdy;
    const double ab = adx * bdy - bdx * ady;
    const double det = alift * bc + blift * ca + clift * ab;
    const double permanent = alift * (std::abs(bdx * cdy) + std::abs(cdx * bdy)) +
                             blift * (std::abs(cdx * ady) + std::abs(adx * cdy)) +
                             clift * (std::abs(adx * bdy) + std::abs(bdx * ady));

    int s;
    if (std::abs(det) <= kCocircularTolerance * permanent) {
        s = 0;
    } else {
        s = det > 0 ? 1 : -1;
    }
    s *= orient;
    if (s > 0)
        return CircleSide::Inside;
    if (s < 0)
        return CircleSide::Outside;
    return CircleSide::OnCircle;
}

}  // namespace delpack
