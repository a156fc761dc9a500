#include "delpack/arcgeom.hpp"

#include "delpack/packings.hpp"
#include "delpack/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>

namespace delpack {

namespace {

constexpr double kSqrt3 = 1.7320508075688772;
// Clearance accepted for vertex witnesses that touch the boundary exactly.
constexpr double kTouchTolerance = 1e-12;

double angle_of(Point2 v) { return std::atan2(v.y, v.x); }

// Arc around c from a to b turning in the direction of sign (+1 counter-clockwise).
BoundaryPiece arc_between(Point2 c, Point2 a, Point2 b, int sign)
{
    const double a0 = angle_of(a - c);
    double sweep = angle_of(b - c) - a0;
    if (sign < 0) {
        while (sweep >= 0)
            sweep -= 2 * M_PI;
    } else {
        while (sweep <= 0)
            sweep += 2 * M_PI;
    }
    BoundaryPiece p = BoundaryPiece::arc(c, norm(a - c), a0, sweep);
    p.start = a;
    p.end = b;
    return p;
}

double distance_to_piece(const BoundaryPiece& piece, Point2 p)
{
    if (piece.kind == BoundaryPiece::Kind::Segment) {
        const Point2 ab = piece.end - piece.start;
        const double len2 = dot(ab, ab);
        const double t = len2 > 0 ? std::clamp(dot(p - piece.start, ab) / len2, 0.0, 1.0) : 0.0;
        return dist(p, piece.start + t * ab);
    }
    double rel = (angle_of(p - piece.center) - piece.angle0) / piece.sweep;
    // Bring the angular offset into the sweep's period before testing the span.
    const double period = 2 * M_PI / std::abs(piece.sweep);
    rel -= period * std::floor(rel / period);
    if (rel <= 1.0)
        return std::abs(norm(p - piece.center) - piece.radius);
    return std::min(dist(p, piece.start), dist(p, piece.end));
}

// Number of crossings of the ray from p towards +x with a y-monotone piece of arc.
int arc_crossings(const BoundaryPiece& piece, Point2 p)
{
    std::vector<double> cuts{0.0, 1.0};
    // Split where the arc turns vertically so that each part is monotone in y.
    for (int k = -4; k <= 4; ++k) {
        const double t = (M_PI / 2 + k * M_PI - piece.angle0) / piece.sweep;
        if (t > 0 && t < 1)
            cuts.push_back(t);
    }
    std::sort(cuts.begin(), cuts.end());
    int count = 0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const Point2 a = piece.at(cuts[i]);
        const Point2 b = piece.at(cuts[i + 1]);
        if ((a.y > p.y) == (b.y > p.y))
            continue;
        const double mid = piece.angle0 + piece.sweep * (cuts[i] + cuts[i + 1]) / 2;
        const double dy = p.y - piece.center.y;
        const double dx = std::sqrt(std::max(0.0, piece.radius * piece.radius - dy * dy));
        const double x = piece.center.x + (std::cos(mid) >= 0 ? dx : -dx);
        if (x > p.x)
            ++count;
    }
    return count;
}

Box shifted(const Box& b, Point2 t) { return {b.x0 + t.x, b.y0 + t.y, b.x1 + t.x, b.y1 + t.y}; }

// Box of all differences p - u for p in P and u in U.
Box difference(const Box& P, const Box& U) { return {P.x0 - U.x1, P.y0 - U.y1, P.x1 - U.x0, P.y1 - U.y0}; }

std::array<Box, 4> split(const Box& b)
{
    const double xm = b.x0 + (b.x1 - b.x0) / 2;
    const double ym = b.y0 + (b.y1 - b.y0) / 2;
    return {Box{b.x0, b.y0, xm, ym}, Box{xm, b.y0, b.x1, ym}, Box{b.x0, ym, xm, b.y1}, Box{xm, ym, b.x1, b.y1}};
}

double farthest_from(const Box& b, Point2 c)
{
    const double dx = std::max(std::abs(b.x0 - c.x), std::abs(b.x1 - c.x));
    const double dy = std::max(std::abs(b.y0 - c.y), std::abs(b.y1 - c.y));
    return std::hypot(dx, dy);
}

Box summand_root(const ArcTriangleVertices& v) { return {0.0, v.B0.y, 2 * v.d, v.top}; }

struct PairOutcome
{
    bool may_meet = false;
    bool certified = false;
    // A certified point of P in K + shift and in K+K (second summand relaxed by slack).
    Point2 w{};
};

// Whether some w in P lies in K + shift and equals u + v with u in K and v in K relaxed
// by slack. Summand boxes U are split first; once they are no larger than P both are split.
PairOutcome pair_search(double d, const Box& P, const Box& U, Point2 shift, int depth, double slack)
{
    if (!box_may_meet_K(d, shifted(P, -1.0 * shift)) || !box_may_meet_K(d, U) ||
        !box_may_meet_K(d, difference(P, U), slack))
        return {};
    const Point2 w = P.center();
    const Point2 u = U.center();
    if (k_slack(d, w - shift) >= 0 && k_slack(d, u) >= 0 && k_slack(d, w - u) >= -slack)
        return {true, true, w};
    if (depth == 0)
        return {true, false, {}};
    PairOutcome found;
    const bool split_P = U.width() <= P.width();
    for (const Box& uc : split(U)) {
        const std::array<Box, 4> ps = split_P ? split(P) : std::array<Box, 4>{P, P, P, P};
        for (int k = 0; k < (split_P ? 4 : 1); ++k) {
            const PairOutcome r = pair_search(d, ps[k], uc, shift, depth - 1, slack);
            if (r.certified)
                return r;
            found.may_meet = found.may_meet || r.may_meet;
        }
    }
    return found;
}

struct ScanSetup
{
    Point2 shift{};
    Point2 target{};
};

ScanResult scan(double d, const ScanSetup& setup, const CertifyOptions& o, std::size_t& examined)
{
    const ArcTriangleVertices v = arc_triangle_vertices(d);
    const Box summands = summand_root(v);
    ScanResult out;
    out.target = setup.target;
    std::vector<Box> level{Box{setup.shift.x, v.B0.y, setup.shift.x + 2 * d, v.B0.y + 2 * d}};
    for (int depth = 0; depth <= o.depth && !level.empty(); ++depth) {
        std::vector<int> keep(level.size(), 0);
        std::vector<std::optional<Point2>> far(level.size());
        parallel_for(level.size(), [&](std::size_t i) {
            const Box& P = level[i];
            // Points of P outside the strip or above the top side cannot lie in K, so drop them.
            const Box Pk{std::max(P.x0, setup.shift.x), P.y0, std::min(P.x1, setup.shift.x + 2 * d),
                         std::min(P.y1, v.top)};
            if (Pk.x0 > Pk.x1 || Pk.y0 > Pk.y1)
                return;
            const PairOutcome r = pair_search(d, Pk, summands, setup.shift, depth + o.pair_extra, o.inflate);
            if (!r.may_meet)
                return;
            keep[i] = 1;
            if (r.certified && dist(r.w, setup.target) > o.isolation)
                far[i] = r.w;
        });
        examined += level.size();
        for (const auto& f : far) {
            if (f) {
                out.counterexample = f;
                break;
            }
        }
        if (out.counterexample)
            break;
        std::vector<Box> next;
        for (std::size_t i = 0; i < level.size(); ++i) {
            if (!keep[i])
                continue;
            if (depth == o.depth) {
                out.survivors.push_back(level[i]);
            } else {
                for (const Box& child : split(level[i]))
                    next.push_back(child);
            }
        }
        level = std::move(next);
    }
    for (const Box& b : out.survivors) {
        out.max_distance = std::max(out.max_distance, b.distance_to(setup.target));
        const double dy = std::max({0.0, b.y0 - v.top, v.top - b.y1});
        out.max_y_deviation = std::max(out.max_y_deviation, dy);
        if (b.distance_to(setup.target) <= 1e-12)
            out.contains_target = true;
    }
    if (!out.counterexample) {
        for (const Box& b : out.survivors) {
            if (b.distance_to(setup.target) > o.isolation) {
                out.counterexample = b.center();
                break;
            }
        }
    }
    return out;
}

double box_gap(const Box& a, const Box& b)
{
    const double dx = std::max({0.0, a.x0 - b.x1, b.x0 - a.x1});
    const double dy = std::max({0.0, a.y0 - b.y1, b.y0 - a.y1});
    return std::hypot(dx, dy);
}

// Every box of a, reflected about x = axis, lies within one cell of some box of b. Rounding
// can flip decisions on boxes that touch the boundary, so exact equality is not required.
bool mirrored_within(const std::vector<Box>& a, const std::vector<Box>& b, double axis)
{
    if (a.empty() || b.empty())
        return a.empty() && b.empty();
    for (const Box& x : a) {
        const Box m{2 * axis - x.x1, x.y0, 2 * axis - x.x0, x.y1};
        const bool hit = std::any_of(b.begin(), b.end(), [&](const Box& y) { return box_gap(m, y) <= x.width(); });
        if (!hit)
            return false;
    }
    return true;
}

nlohmann::json point_json(Point2 p) { return nlohmann::json::array({p.x, p.y}); }

nlohmann::json scan_json(const ScanResult& s)
{
    nlohmann::json boxes = nlohmann::json::array();
    for (const Box& b : s.survivors)
        boxes.push_back({b.x0, b.y0, b.x1, b.y1});
    return {{"target", point_json(s.target)},
            {"survivor_count", s.survivors.size()},
            {"survivors", boxes},
            {"max_distance", s.max_distance},
            {"max_y_deviation", s.max_y_deviation},
            {"contains_target", s.contains_target},
            {"counterexample", s.counterexample ? point_json(*s.counterexample) : nlohmann::json(nullptr)}};
}

void svg_path(std::ostream& os, const ArcRegion& r, const char* style)
{
    os << "<path style=\"" << style << "\" d=\"M " << r.boundary.front().start.x << ' ' << r.boundary.front().start.y;
    for (const BoundaryPiece& p : r.boundary) {
        if (p.kind == BoundaryPiece::Kind::Segment) {
            os << " L " << p.end.x << ' ' << p.end.y;
        } else {
            os << " A " << p.radius << ' ' << p.radius << " 0 " << (std::abs(p.sweep) > M_PI ? 1 : 0) << ' '
               << (p.sweep > 0 ? 1 : 0) << ' ' << p.end.x << ' ' << p.end.y;
        }
    }
    os << " Z\"/>\n";
}

}  // namespace

BoundaryPiece BoundaryPiece::segment(Point2 a, Point2 b)
{
    BoundaryPiece p;
    p.kind = Kind::Segment;
    p.start = a;
    p.end = b;
    return p;
}

BoundaryPiece BoundaryPiece::arc(Point2 center, double radius, double angle0, double sweep)
{
    BoundaryPiece p;
    p.kind = Kind::Arc;
    p.center = center;
    p.radius = radius;
    p.angle0 = angle0;
    p.sweep = sweep;
    p.start = p.at(0.0);
    p.end = p.at(1.0);
    return p;
}

Point2 BoundaryPiece::at(double t) const
{
    if (kind == Kind::Segment)
        return start + t * (end - start);
    const double a = angle0 + t * sweep;
    return center + radius * Point2{std::cos(a), std::sin(a)};
}

double Box::distance_to(Point2 p) const
{
    const double dx = std::max({0.0, x0 - p.x, p.x - x1});
    const double dy = std::max({0.0, y0 - p.y, p.y - y1});
    return std::hypot(dx, dy);
}

const char* to_string(Membership m)
{
    switch (m) {
    case Membership::Member:
        return "member";
    case Membership::NonMember:
        return "non_member";
    case Membership::Inconclusive:
        return "inconclusive";
    }
    return "?";
}

ArcTriangleVertices arc_triangle_vertices(double d)
{
    if (!(d > kSqrt3 && d < 2.0))
        throw OutOfRange("d must lie in (sqrt(3), 2)");
    const double s = std::sqrt(4.0 - d * d);
    ArcTriangleVertices v;
    v.d = d;
    v.A1 = {2 * d, 0.0};
    v.B0 = {d, s};
    v.C1 = {(3 * d + kSqrt3 * s) / 2, (kSqrt3 * d + s) / 2};
    v.C0 = {2 * d - v.C1.x, v.C1.y};
    v.top = v.C1.y;
    return v;
}

ArcRegion build_K(double d)
{
    const ArcTriangleVertices v = arc_triangle_vertices(d);
    ArcRegion r;
    r.d = d;
    r.inequality_form = true;
    r.boundary.push_back(arc_between(v.A1, v.B0, v.C1, -1));
    r.boundary.push_back(BoundaryPiece::segment(v.C1, v.C0));
    r.boundary.push_back(arc_between(v.A0, v.C0, v.B0, -1));
    return r;
}

ArcRegion build_J(double d)
{
    const ArcTriangleVertices v = arc_triangle_vertices(d);
    const Point2 mb1 = 0.5 * (v.B0 + v.C1);
    const Point2 mb0 = 0.5 * (v.B0 + v.C0);
    const Point2 mc = 0.5 * (v.C0 + v.C1);
    ArcRegion r;
    r.d = d;
    r.boundary.push_back(arc_between(0.5 * (v.B0 + v.A1), v.B0, mb1, -1));
    r.boundary.push_back(arc_between(0.5 * (v.C1 + v.A1), mb1, v.C1, -1));
    r.boundary.push_back(BoundaryPiece::segment(v.C1, mc));
    r.boundary.push_back(BoundaryPiece::segment(mc, v.C0));
    r.boundary.push_back(arc_between(0.5 * (v.C0 + v.A0), v.C0, mb0, -1));
    r.boundary.push_back(arc_between(0.5 * (v.B0 + v.A0), mb0, v.B0, -1));
    return r;
}

ArcRegion translate(const ArcRegion& r, Point2 t)
{
    ArcRegion out = r;
    out.offset = r.offset + t;
    for (BoundaryPiece& p : out.boundary) {
        p.start = p.start + t;
        p.end = p.end + t;
        p.center = p.center + t;
    }
    return out;
}

ArcRegion scale(const ArcRegion& r, double s)
{
    ArcRegion out = r;
    out.inequality_form = false;
    out.offset = s * r.offset;
    for (BoundaryPiece& p : out.boundary) {
        p.start = s * p.start;
        p.end = s * p.end;
        p.center = s * p.center;
        p.radius *= s;
    }
    return out;
}

double k_slack(double d, Point2 p)
{
    const double s = std::sqrt(4.0 - d * d);
    const double top = (kSqrt3 * d + s) / 2;
    return std::min({p.x, 2 * d - p.x, p.y, top - p.y, norm(p) - 2.0, norm(p - Point2{2 * d, 0.0}) - 2.0});
}

bool contains(const ArcRegion& r, Point2 p, double tolerance)
{
    if (r.inequality_form)
        return k_slack(r.d, p - r.offset) >= -tolerance;
    for (const BoundaryPiece& piece : r.boundary) {
        if (distance_to_piece(piece, p) <= std::max(tolerance, 1e-12))
            return true;
    }
    int crossings = 0;
    for (const BoundaryPiece& piece : r.boundary) {
        if (piece.kind == BoundaryPiece::Kind::Segment) {
            const Point2 a = piece.start, b = piece.end;
            if ((a.y > p.y) != (b.y > p.y)) {
                const double x = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
                if (x > p.x)
                    ++crossings;
            }
        } else {
            crossings += arc_crossings(piece, p);
        }
    }
    return crossings % 2 == 1;
}

bool box_may_meet_K(double d, const Box& b, double slack)
{
    const double s = std::sqrt(4.0 - d * d);
    const double top = (kSqrt3 * d + s) / 2;
    if (b.x1 < -slack || b.x0 > 2 * d + slack || b.y1 < -slack || b.y0 > top + slack)
        return false;
    // Only the part inside the strip and the height range can meet K, so the disc tests use it.
    const Box c{std::max(b.x0, -slack), std::max(b.y0, -slack), std::min(b.x1, 2 * d + slack),
                std::min(b.y1, top + slack)};
    if (farthest_from(c, {0.0, 0.0}) < 2.0 - slack)
        return false;
    if (farthest_from(c, {2 * d, 0.0}) < 2.0 - slack)
        return false;
    return true;
}

SumsetResult sumset_member(const ArcRegion& K, Point2 w, int depth)
{
    if (!K.inequality_form)
        throw std::invalid_argument("sumset_member needs a translate of the arc triangle");
    const double d = K.d;
    const ArcTriangleVertices v = arc_triangle_vertices(d);
    const Point2 w0 = w - 2.0 * K.offset;
    SumsetResult out;

    // Depth-first search for an exact witness, tracking whether any box survives.
    bool survived = false;
    const Box root = summand_root(v);
    std::vector<std::pair<Box, int>> stack{{root, 0}};
    while (!stack.empty()) {
        const auto [U, level] = stack.back();
        stack.pop_back();
        const Box V{w0.x - U.x1, w0.y - U.y1, w0.x - U.x0, w0.y - U.y0};
        if (!box_may_meet_K(d, U) || !box_may_meet_K(d, V))
            continue;
        const Point2 u = U.center();
        const double margin = std::min(k_slack(d, u), k_slack(d, w0 - u));
        if (margin >= 0) {
            out.status = Membership::Member;
            out.margin = margin;
            out.u = u + K.offset;
            out.v = w0 - u + K.offset;
            out.depth = level;
            return out;
        }
        if (level == depth) {
            survived = true;
            continue;
        }
        const auto children = split(U);
        for (auto it = children.rbegin(); it != children.rend(); ++it)
            stack.push_back({*it, level + 1});
    }
    // Boundary points of K+K are typically sums involving a vertex of K.
    for (Point2 corner : {v.B0, v.C0, v.C1}) {
        const double margin = k_slack(d, w0 - corner);
        if (margin >= -kTouchTolerance) {
            out.status = Membership::Member;
            out.margin = std::min(0.0, margin);
            out.u = corner + K.offset;
            out.v = w0 - corner + K.offset;
            out.depth = 0;
            return out;
        }
    }
    out.status = survived ? Membership::Inconclusive : Membership::NonMember;
    out.margin = root.width() / std::ldexp(1.0, depth);
    out.depth = depth;
    return out;
}

CertificateReport certify_planar_theorem(double d, const CertifyOptions& options)
{
    const ArcTriangleVertices v = arc_triangle_vertices(d);
    CertificateReport r;
    r.d = d;
    r.options = options;
    const Point2 mirror{4 * d - v.C1.x, v.C1.y};
    r.in_K = scan(d, {{0.0, 0.0}, v.C1}, options, r.boxes_examined);
    r.in_shifted = scan(d, {{2 * d, 0.0}, mirror}, options, r.boxes_examined);
    r.symmetric = mirrored_within(r.in_K.survivors, r.in_shifted.survivors, 2 * d) &&
                  mirrored_within(r.in_shifted.survivors, r.in_K.survivors, 2 * d);
    r.witness_u = v.B0;
    r.witness_v = v.C1 - v.B0;
    r.witness_ok = k_slack(d, r.witness_u) >= -kTouchTolerance && k_slack(d, r.witness_v) >= -kTouchTolerance;
    const auto good = [&](const ScanResult& s) {
        return !s.survivors.empty() && !s.counterexample && s.contains_target && s.max_distance <= options.isolation &&
               s.max_y_deviation <= options.isolation;
    };
    r.pass = good(r.in_K) && good(r.in_shifted) && r.symmetric && r.witness_ok;
    return r;
}

void require_pass(const CertificateReport& report)
{
    if (report.pass)
        return;
    std::ostringstream msg;
    msg << "planar certificate failed for d=" << report.d;
    for (const ScanResult* s : {&report.in_K, &report.in_shifted}) {
        if (s->counterexample) {
            msg << ", counterexample (" << s->counterexample->x << ", " << s->counterexample->y << ")";
            break;
        }
    }
    throw CertificationFailed(msg.str());
}

nlohmann::json to_json(const CertificateReport& r)
{
    return {{"d", r.d},
            {"depth", r.options.depth},
            {"pair_extra", r.options.pair_extra},
            {"inflate", r.options.inflate},
            {"isolation", r.options.isolation},
            {"in_K", scan_json(r.in_K)},
            {"in_shifted_K", scan_json(r.in_shifted)},
            {"symmetric", r.symmetric},
            {"witness", {{"u", point_json(r.witness_u)}, {"v", point_json(r.witness_v)}, {"ok", r.witness_ok}}},
            {"boxes_examined", r.boxes_examined},
            {"pass", r.pass}};
}

std::string to_svg(const CertificateReport& r)
{
    const double d = r.d;
    const ArcRegion K = build_K(d);
    const ArcRegion J = build_J(d);
    const ArcTriangleVertices v = arc_triangle_vertices(d);
    const double w = 4 * d + 1.0;
    const double h = 2 * v.top + 1.0;
    std::ostringstream os;
    os << std::setprecision(10);
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << 160 * w << "\" height=\"" << 160 * h
       << "\" viewBox=\"-0.5 " << -(h - 0.5) << ' ' << w << ' ' << h << "\">\n";
    os << "<g transform=\"scale(1,-1)\">\n";
    svg_path(os, K, "fill:#9ecae1;fill-opacity:0.6;stroke:#08519c;stroke-width:0.01");
    svg_path(os, translate(K, {2 * d, 0.0}), "fill:#9ecae1;fill-opacity:0.6;stroke:#08519c;stroke-width:0.01");
    svg_path(os, J, "fill:none;stroke:#31a354;stroke-width:0.01");
    svg_path(os, scale(J, 2.0), "fill:#fdae6b;fill-opacity:0.3;stroke:#e6550d;stroke-width:0.01");
    for (const ScanResult* s : {&r.in_K, &r.in_shifted}) {
        for (const Box& b : s->survivors)
            os << "<rect x=\"" << b.x0 << "\" y=\"" << b.y0 << "\" width=\"" << b.width() << "\" height=\""
               << b.y1 - b.y0 << "\" style=\"fill:#de2d26\"/>\n";
        os << "<circle cx=\"" << s->target.x << "\" cy=\"" << s->target.y
           << "\" r=\"0.03\" style=\"fill:none;stroke:#de2d26;stroke-width:0.01\"/>\n";
    }
    os << "</g>\n</svg>\n";
    return os.str();
}

}  // namespace delpack
