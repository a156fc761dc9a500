#pragma once

#include "delpack/geom.hpp"

#include <array>
#include <cstddef>
#include <string>
#include <vector>

namespace delpack {

class DeloneError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

class TooFewPoints : public DeloneError
{
public:
    using DeloneError::DeloneError;
};

class DuplicatePoints : public DeloneError
{
public:
    using DeloneError::DeloneError;
};

struct BBox
{
    double xmin = 0.0;
    double ymin = 0.0;
    double xmax = 0.0;
    double ymax = 0.0;

    bool contains(Point2 p) const { return p.x >= xmin && p.x <= xmax && p.y >= ymin && p.y <= ymax; }
};

struct Domain
{
    enum class Kind { Torus, Window };

    Kind kind = Kind::Window;
    double period_x = 0.0;
    double period_y = 0.0;
    BBox bbox{};
    double margin = 0.0;

    static Domain torus(double px, double py);
    static Domain window(BBox box, double margin = 0.0);

    bool is_torus() const { return kind == Kind::Torus; }
};

struct MeshTriangle
{
    // Indices into DeloneTriangulation::points, counter-clockwise.
    std::array<int, 3> v{};
    // Coordinates used for the vertices; on a torus these are unwrapped lifts.
    std::array<Point2, 3> pos{};
    // Neighbour across the side opposite v[i], or kBoundary.
    std::array<int, 3> neighbor{};
    TriangleMetrics metrics{};
    // Window mode: the circumdisk lies inside the window. Always true on a torus.
    bool interior = true;
};

inline constexpr int kBoundary = -1;

struct DeloneTriangulation
{
    Domain domain{};
    std::vector<Point2> points;
    std::vector<MeshTriangle> triangles;
};

/// Delaunay triangulation. Cocircular cells are triangulated as a fan from their
/// lexicographically smallest vertex, so the result depends only on the point set.
DeloneTriangulation build_delone(const std::vector<Point2>& points, const Domain& domain);

struct EmptyCircleViolation
{
    int triangle = 0;
    int point = 0;
};

struct AngleViolation
{
    int triangle = 0;
    int other = 0;
    double angle_sum = 0.0;
};

struct DeloneReport
{
    std::vector<EmptyCircleViolation> empty_circle;
    std::vector<AngleViolation> angular;
    std::vector<std::string> structural;

    bool ok() const { return empty_circle.empty() && angular.empty() && structural.empty(); }
};

/// Brute-force audit: every point against every circumcircle, the opposite-angle
/// condition across every interior edge, and adjacency consistency.
DeloneReport validate_delone(const DeloneTriangulation& t);

/// Smallest distance between two distinct points (torus metric on a torus).
double min_pair_distance(const DeloneTriangulation& t);

/// Reduce p into [0, px) x [0, py).
Point2 wrap_torus(Point2 p, double px, double py);

std::vector<Point2> read_points_csv(const std::string& path);
std::vector<Point2> read_points_json(const std::string& path);
/// Dispatches on the file extension (.json or anything else as CSV).
std::vector<Point2> read_points(const std::string& path);

}  // namespace delpack
