#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

namespace delpack {

struct Point2
{
    double x = 0.0;
    double y = 0.0;
};

inline Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
inline Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
inline Point2 operator*(double s, Point2 a) { return {s * a.x, s * a.y}; }
inline Point2 operator*(Point2 a, double s) { return {s * a.x, s * a.y}; }
inline bool operator==(Point2 a, Point2 b) { return a.x == b.x && a.y == b.y; }

inline double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point2 a, Point2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point2 a) { return std::hypot(a.x, a.y); }
inline double dist(Point2 a, Point2 b) { return norm(a - b); }
inline double dist2(Point2 a, Point2 b) { return dot(a - b, a - b); }

// Lexicographic order (x first, then y).
inline bool lex_less(Point2 a, Point2 b) { return a.x < b.x || (a.x == b.x && a.y < b.y); }

class GeometryError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

class DegenerateTriangle : public GeometryError
{
public:
    using GeometryError::GeometryError;
};

class TriangleInequalityViolated : public GeometryError
{
public:
    using GeometryError::GeometryError;
};

enum class ShapeClass { Acute, Right, Obtuse };

const char* to_string(ShapeClass s);

// Tolerance on |angle - pi/2| used to call a triangle right-angled.
inline constexpr double kRightAngleTolerance = 1e-9;

/// Metrics of a planar triangle. Side i is opposite vertex i and angle i sits at vertex i.
struct TriangleMetrics
{
    std::array<Point2, 3> vertices{};
    std::array<double, 3> sides{};
    std::array<double, 3> angles{};
    double area = 0.0;
    Point2 circumcenter{};
    double circumradius = 0.0;
    ShapeClass shape = ShapeClass::Acute;
    // Index of the longest side, i.e. of the vertex carrying the largest angle.
    int longest_side = 0;

    bool obtuse() const { return shape == ShapeClass::Obtuse; }
    double longest() const { return sides[longest_side]; }
};

TriangleMetrics triangle_metrics(Point2 a, Point2 b, Point2 c);

/// Area from side lengths by a cancellation-safe form of Heron's formula.
double area_from_sides(double a, double b, double c);

/// Sign of the orientation determinant of (a, b, c): +1 counter-clockwise, -1 clockwise, 0 collinear.
int orientation(Point2 a, Point2 b, Point2 c);

enum class CircleSide { Inside, OnCircle, Outside };

const char* to_string(CircleSide s);

// Relative tolerance, against the magnitude of the in-circle determinant terms,
// below which four points are treated as cocircular.
inline constexpr double kCocircularTolerance = 1e-12;

/// Position of d relative to the circle through a, b, c (any orientation).
/// Throws DegenerateTriangle if a, b, c are collinear.
CircleSide incircle(Point2 a, Point2 b, Point2 c, Point2 d);

/// Exact sign of the in-circle determinant for counter-clockwise a, b, c (positive when d is inside).
int incircle_exact_sign(Point2 a, Point2 b, Point2 c, Point2 d);

double circumradius_from_sides(double a, double b, double c);

}  // namespace delpack
