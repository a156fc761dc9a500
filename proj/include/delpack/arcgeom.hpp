#pragma once

#include "delpack/geom.hpp"

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

namespace delpack {

class CertificationFailed : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// A boundary piece: a segment, or a circular arc from angle0 through a signed sweep.
struct BoundaryPiece
{
    enum class Kind { Segment, Arc };
    Kind kind = Kind::Segment;
    Point2 start{};
    Point2 end{};
    Point2 center{};
    double radius = 0.0;
    double angle0 = 0.0;
    double sweep = 0.0;

    static BoundaryPiece segment(Point2 a, Point2 b);
    static BoundaryPiece arc(Point2 center, double radius, double angle0, double sweep);

    /// Point at parameter t in [0, 1].
    Point2 at(double t) const;
};

/// Closed region bounded by a simple counter-clockwise cycle of pieces. When
/// inequality_form is set the region is a translate of the arc triangle K(d) by
/// offset, and membership uses its defining inequalities.
struct ArcRegion
{
    double d = 0.0;
    std::vector<BoundaryPiece> boundary;
    bool inequality_form = false;
    Point2 offset{};
};

/// Key points of the arc triangle: string centres A0, A1 and vertices B0, C0, C1.
struct ArcTriangleVertices
{
    double d = 0.0;
    Point2 A0{}, A1{}, B0{}, C0{}, C1{};
    // Height of the top side, i.e. the y-coordinate of C0 and C1.
    double top = 0.0;
};

ArcTriangleVertices arc_triangle_vertices(double d);

/// The region {0 <= x <= 2d, 0 <= y <= top, |p| >= 2, |p - (2d,0)| >= 2} for sqrt(3) < d < 2.
ArcRegion build_K(double d);
/// Outer boundary of (K+K)/2: two half top sides and four radius-1 arcs.
ArcRegion build_J(double d);
ArcRegion translate(const ArcRegion& r, Point2 t);
ArcRegion scale(const ArcRegion& r, double s);

bool contains(const ArcRegion& r, Point2 p, double tolerance = 0.0);
/// Signed clearance of p inside K(d): the distance to the complement when positive.
double k_slack(double d, Point2 p);

struct Box
{
    double x0 = 0.0, y0 = 0.0, x1 = 0.0, y1 = 0.0;

    double width() const { return x1 - x0; }
    Point2 center() const { return {(x0 + x1) / 2, (y0 + y1) / 2}; }
    double distance_to(Point2 p) const;
};

/// Conservative test: false only if the box misses K(d) with every defining inequality relaxed by slack.
bool box_may_meet_K(double d, const Box& b, double slack = 0.0);

enum class Membership { Member, NonMember, Inconclusive };

const char* to_string(Membership m);

struct SumsetResult
{
    Membership status = Membership::Inconclusive;
    // Member: clearance of the witness pair. NonMember: size of the boxes that ruled it out.
    double margin = 0.0;
    Point2 u{}, v{};
    int depth = 0;
};

/// Decides whether w is in K+K by refining boxes of candidate summands u.
SumsetResult sumset_member(const ArcRegion& K, Point2 w, int depth = 12);

struct CertifyOptions
{
    int depth = 12;
    // Extra refinement levels of the summand boxes relative to the w boxes.
    int pair_extra = 4;
    // Relaxation of the second summand's inequalities; nonzero only for negative controls.
    double inflate = 0.0;
    double isolation = 1e-3;
};

struct ScanResult
{
    Point2 target{};
    std::vector<Box> survivors;
    double max_distance = 0.0;
    double max_y_deviation = 0.0;
    bool contains_target = false;
    std::optional<Point2> counterexample;
};

struct CertificateReport
{
    double d = 0.0;
    CertifyOptions options;
    ScanResult in_K;
    ScanResult in_shifted;
    bool symmetric = false;
    Point2 witness_u{}, witness_v{};
    bool witness_ok = false;
    std::size_t boxes_examined = 0;
    bool pass = false;
};

/// Scans K and K+(2d,0) for points of K+K. Passes when the survivors collapse onto C1
/// and its mirror image about x = 2d.
CertificateReport certify_planar_theorem(double d, const CertifyOptions& options = {});
/// Throws CertificationFailed carrying a counterexample when the report did not pass.
void require_pass(const CertificateReport& report);

nlohmann::json to_json(const CertificateReport& r);
std::string to_svg(const CertificateReport& r);

}  // namespace delpack
