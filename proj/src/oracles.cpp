#include "delpack/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <numbers>

#include "delpack/geom.hpp"
#include "delpack/minimize.hpp"
#include "delpack/parallel.hpp"

namespace delpack {

namespace {

using Vec = std::vector<double>;

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
const double kRoot2 = std::sqrt(2.0);
const double kRootFiveHalves = std::sqrt(2.5);
// Area of the regular pentagon of side 1, (5/4) cot(pi/5).
const double kPentagonArea = 1.25 / std::tan(kPi / 5);
// Coordinates rebuilt at an argmin must reproduce the parameters to this accuracy.
constexpr double kRebuildTolerance = 1e-9;
// Distance of an argmin from a stated equality configuration.
constexpr double kCharacterizationTolerance = 5e-3;
// Step of the concavity second differences; scaled by 1/h^2 before comparing with the margin.
constexpr double kConcavityStep = 1e-3;

bool ge(double value, double bound) { return value >= bound - kFeasibilityTolerance; }
bool le(double value, double bound) { return value <= bound + kFeasibilityTolerance; }

std::optional<TriangleMetrics> metrics(Point2 a, Point2 b, Point2 c)
{
    try {
        return triangle_metrics(a, b, c);
    } catch (const GeometryError&) {
        return std::nullopt;
    }
}

Point2 polar(double r, double t) { return {r * std::cos(t), r * std::sin(t)}; }

Point2 unit(Point2 v) { return (1.0 / norm(v)) * v; }

Point2 rotate(Point2 v, double t)
{
    const double c = std::cos(t), s = std::sin(t);
    return {c * v.x - s * v.y, s * v.x + c * v.y};
}

// Apex of the isosceles triangle with unit legs on base xy, on the side away from w.
std::optional<Point2> unit_isosceles_apex(Point2 x, Point2 y, Point2 w)
{
    const double base = dist(x, y);
    if (base > 2.0)
        return std::nullopt;
    const Point2 mid = 0.5 * (x + y);
    Point2 n = rotate(unit(y - x), kPi / 2);
    if (dot(n, w - mid) > 0)
        n = -1.0 * n;
    return mid + std::sqrt(std::max(0.0, 1.0 - base * base / 4)) * n;
}

// Third vertex z with |zx| = rx, |zy| = ry on the side of line xy away from w.
std::optional<Point2> apex_from_sides(Point2 x, Point2 y, double rx, double ry, Point2 w)
{
    const double d = dist(x, y);
    if (d >= rx + ry || d <= std::abs(rx - ry))
        return std::nullopt;
    const double along = (rx * rx - ry * ry + d * d) / (2 * d);
    const double h = std::sqrt(std::max(0.0, rx * rx - along * along));
    const Point2 e = unit(y - x);
    Point2 n = rotate(e, kPi / 2);
    if (cross(y - x, w - x) > 0)
        n = -1.0 * n;
    return x + along * e + h * n;
}


struct Context
{
    ResolutionPreset preset;
    OracleOptions options;

    GridOptions outer(bool nested = false) const
    {
        GridOptions g;
        g.points = preset.points;
        g.budget = nested ? preset.nested_budget : preset.budget;
        g.refine_points = preset.refine_points;
        g.rounds = preset.rounds;
        g.zoom = preset.zoom;
        g.top_k = 4;
        return g;
    }

    GridOptions inner() const
    {
        GridOptions g;
        g.points = preset.inner_points;
        g.budget = std::size_t{1} << 20;
        g.refine_points = 17;
        g.rounds = preset.inner_rounds;
        g.zoom = preset.zoom;
        g.top_k = 2;
        return g;
    }
};

MinResult minimize_params(const std::string& id, const BoxObjective& f, const std::vector<ParamSpec>& params,
                          const GridOptions& g)
{
    Vec lo, hi;
    for (const ParamSpec& p : params) {
        lo.push_back(p.lo);
        hi.push_back(p.hi);
    }
    MinResult m = grid_minimize(f, lo, hi, g);
    if (!m.found())
        throw InfeasibleCase("case " + id + ": no feasible grid point");
    return m;
}

ClaimResult minimum_claim(const ClaimSpec& spec, const MinResult& m, double zoom)
{
    ClaimResult r;
    r.spec = spec;
    r.found_min = m.value;
    r.argmin = m.x;
    // The remaining improvement is extrapolated as a geometric tail of the last round's gain.
    const double gain = std::isfinite(m.previous) ? m.previous - m.value : 0.0;
    r.lower_estimate = m.value - gain / (zoom - 1);
    r.evaluations = m.evaluations;
    r.rederived = kNaN;
    r.witness_value = kNaN;
    return r;
}

void set_witness(ClaimResult& r, double value, double tol)
{
    r.witness_value = value;
    r.witness_ok = std::isfinite(value) && std::abs(value - r.spec.value) < tol;
}

void finalize(ClaimResult& r, double tol)
{
    switch (r.spec.kind) {
    case ClaimKind::Minimum:
        if (std::isnan(r.spec.value)) {
            r.claim_delta = kNaN;
            r.pass = false;
        } else if (r.spec.lower_bound_only) {
            r.claim_delta = std::abs(r.rederived - r.spec.value);
            r.pass = r.found_min >= r.spec.value - tol && r.claim_delta < tol && r.consistent;
        } else {
            r.claim_delta = std::abs(r.found_min - r.spec.value);
            r.pass = r.claim_delta < tol && r.witness_ok && r.consistent && r.characterized;
        }
        break;
    case ClaimKind::Monotonicity:
    case ClaimKind::Concavity:
        r.claim_delta = 0.0;
        r.pass = r.checks > 0 && r.violations == 0 && r.consistent;
        break;
    case ClaimKind::ActiveConstraints:
        r.claim_delta = 0.0;
        r.pass = r.checks > 0 && r.violations == 0;
        break;
    }
}

using Quantities = std::map<std::string, double>;

bool characterize(const Quantities& q, const std::vector<std::pair<std::string, double>>& targets, std::string& note)
{
    bool ok = true;
    for (const auto& [name, target] : targets) {
        const double v = q.at(name);
        if (!(std::abs(v - target) <= kCharacterizationTolerance)) {
            ok = false;
            note += name + "=" + std::to_string(v) + " differs from " + std::to_string(target) + "; ";
        }
    }
    return ok;
}

// ---------------------------------------------------------------------------
// Central triangle with ears. The central triangle has C at the origin, B on the
// positive x-axis and A = b (cos gamma, sin gamma). An ear sits on the side
// opposite central vertex k (0: BC, 1: CA, 2: AB) with apex angle psi and base
// angle t (pi - psi) at the first base vertex.

struct LayoutSpec
{
    bool obtuse_central = false;
    std::optional<double> central_radius_bound;
    double c_min = 1.0;
    std::vector<int> ears;
    // When false the ears only have to exist; their area is not counted.
    bool ear_area = true;
    std::optional<double> ear_radius_bound;
};

// Ear legs: u from the first base vertex, v from the second.
struct EarChoice
{
    double value = kInf;
    double u = 0.0;
    double v = 0.0;
};

double ear_value(const LayoutSpec& s, double base, double apex_max, double u, double v)
{
    if (!ge(u, 1.0) || !ge(v, 1.0))
        return kInf;
    const double cos_apex = (u * u + v * v - base * base) / (2 * u * v);
    if (!(cos_apex > -1.0 && cos_apex < 1.0))
        return kInf;
    const double apex = std::acos(cos_apex);
    if (!ge(apex, kPi / 2) || !le(apex, apex_max))
        return kInf;
    const double sin_apex = std::sin(apex);
    if (s.ear_radius_bound && !le(base / (2 * sin_apex), *s.ear_radius_bound))
        return kInf;
    return s.ear_area ? 0.5 * u * v * sin_apex : 0.0;
}

EarChoice best_ear(const LayoutSpec& s, double base, double apex_max, const GridOptions& g)
{
    // Legs of at least 1 around an angle of at least pi/2 force a base of at least sqrt 2.
    if (base < kRoot2 - kFeasibilityTolerance || apex_max < kPi / 2 - kFeasibilityTolerance)
        return {};
    // Legs start at the side bound so that the unit-leg corner is a grid point; an obtuse
    // apex makes the base the longest side.
    const MinResult m = grid_minimize([&](const Vec& x) { return ear_value(s, base, apex_max, x[0], x[1]); },
                                      {1.0, 1.0}, {base, base}, g);
    if (!m.found())
        return {};
    return {m.value, m.x[0], m.x[1]};
}

std::array<Point2, 3> central_vertices(double a, double b, double gamma)
{
    return {polar(b, gamma), Point2{a, 0.0}, Point2{0.0, 0.0}};
}

// Triangle with legs a = |BC|, b = |CA| on a circle of radius r, C on the minor arc AB.
std::optional<std::array<Point2, 3>> circle_vertices(double a, double b, double r)
{
    if (!(a <= 2 * r && b <= 2 * r))
        return std::nullopt;
    return central_vertices(a, b, kPi - std::asin(a / (2 * r)) - std::asin(b / (2 * r)));
}

// Triangle with sides a = |BC|, b = |CA|, c = |AB|.
std::optional<std::array<Point2, 3>> side_vertices(double a, double b, double c)
{
    const double cos_gamma = (a * a + b * b - c * c) / (2 * a * b);
    if (!(cos_gamma > -1.0 && cos_gamma < 1.0))
        return std::nullopt;
    return central_vertices(a, b, std::acos(cos_gamma));
}

bool central_feasible(const LayoutSpec& s, const TriangleMetrics& m)
{
    for (double side : m.sides)
        if (!ge(side, 1.0))
            return false;
    if (!ge(m.sides[2], s.c_min))
        return false;
    if (s.obtuse_central) {
        if (!ge(m.angles[2], kPi / 2))
            return false;
    } else {
        for (double angle : m.angles)
            if (!le(angle, kPi / 2))
                return false;
    }
    if (s.central_radius_bound && !le(m.circumradius, *s.central_radius_bound))
        return false;
    return true;
}

struct LayoutEval
{
    double value = kInf;
    std::optional<TriangleMetrics> central;
    std::vector<EarChoice> ears;
};

LayoutEval evaluate_layout(const LayoutSpec& s, const Vec& x, const GridOptions& inner)
{
    LayoutEval out;
    const auto v = s.obtuse_central ? circle_vertices(x[0], x[1], x[2]) : side_vertices(x[0], x[1], x[2]);
    if (!v)
        return out;
    out.central = metrics((*v)[0], (*v)[1], (*v)[2]);
    if (!out.central || !central_feasible(s, *out.central))
        return out;
    double total = out.central->area;
    for (int k : s.ears) {
        const EarChoice e = best_ear(s, out.central->sides[k], kPi - out.central->angles[k], inner);
        if (!std::isfinite(e.value))
            return out;
        out.ears.push_back(e);
        total += e.value;
    }
    out.value = total;
    return out;
}

const char* const kEarApex[3] = {"A1", "B2", "C3"};

// Rebuilds every triangle from coordinates and checks the layout against its parameters.
bool rebuild_layout(const LayoutSpec& s, const LayoutEval& e, double expected, Quantities& q, std::string& note)
{
    if (!e.central || e.ears.size() != s.ears.size()) {
        note += "layout could not be rebuilt; ";
        return false;
    }
    const TriangleMetrics& m = *e.central;
    const auto& v = m.vertices;
    q["a"] = m.sides[0];
    q["b"] = m.sides[1];
    q["c"] = m.sides[2];
    q["alpha"] = m.angles[0];
    q["beta"] = m.angles[1];
    q["gamma"] = m.angles[2];
    q["R"] = m.circumradius;
    bool ok = central_feasible(s, m);
    double total = m.area;
    for (std::size_t i = 0; i < s.ears.size(); ++i) {
        const int k = s.ears[i];
        const Point2 x = v[(k + 1) % 3], y = v[(k + 2) % 3], w = v[k];
        const auto apex = apex_from_sides(x, y, e.ears[i].u, e.ears[i].v, w);
        if (!apex) {
            note += "ear apex could not be rebuilt; ";
            return false;
        }
        const Point2 z = *apex;
        std::array<Point2, 3> tv = v;
        tv[k] = z;
        const auto em = metrics(tv[0], tv[1], tv[2]);
        if (!em) {
            note += "degenerate ear; ";
            return false;
        }
        const std::string idx = std::to_string(k + 1);
        q[std::string("a") + idx] = em->sides[0];
        q[std::string("b") + idx] = em->sides[1];
        q[std::string("c") + idx] = em->sides[2];
        q[std::string("apex") + idx] = em->angles[k];
        ok = ok && std::abs(em->sides[k] - m.sides[k]) <= kRebuildTolerance;
        ok = ok && em->angles[k] >= kPi / 2 - kRebuildTolerance;
        ok = ok && m.angles[k] + em->angles[k] <= kPi + kRebuildTolerance;
        ok = ok && orientation(x, y, z) * orientation(x, y, w) < 0;
        for (int j = 0; j < 3; ++j)
            if (j != k)
                ok = ok && em->sides[j] >= 1.0 - kRebuildTolerance;
        if (s.ear_radius_bound)
            ok = ok && em->circumradius <= *s.ear_radius_bound + kRebuildTolerance;
        if (s.ear_area)
            total += em->area;
        if (!ok)
            note += std::string("ear ") + kEarApex[k] + " fails its constraints when rebuilt; ";
    }
    if (std::abs(total - expected) > kRebuildTolerance) {
        ok = false;
        note += "rebuilt area " + std::to_string(total) + " differs from the objective; ";
    }
    return ok;
}

// Obtuse central triangles use circumcircle coordinates, the others their side lengths.
std::vector<ParamSpec> central_params(bool obtuse)
{
    if (obtuse)
        return {{"a", 0.9, 3.0}, {"b", 0.9, 3.0}, {"R", 0.6, 2.0}};
    return {{"a", 0.9, 3.0}, {"b", 0.9, 3.0}, {"c", 0.9, 3.0}};
}

struct LayoutOutcome
{
    ClaimResult claim;
    LayoutEval eval;
    Quantities quantities;
};

LayoutOutcome run_layout(const Context& ctx, const std::string& id, const LayoutSpec& spec, const ClaimSpec& claim,
                         const std::optional<Vec>& witness,
                         const std::vector<std::pair<std::string, double>>& characterization)
{
    const GridOptions inner = ctx.inner();
    const auto f = [&](const Vec& x) { return evaluate_layout(spec, x, inner).value; };
    const MinResult m = minimize_params(id, f, central_params(spec.obtuse_central), ctx.outer(true));
    LayoutOutcome out;
    out.claim = minimum_claim(claim, m, ctx.preset.zoom);
    out.eval = evaluate_layout(spec, m.x, inner);
    out.claim.consistent = rebuild_layout(spec, out.eval, m.value, out.quantities, out.claim.note);
    if (witness)
        set_witness(out.claim, f(*witness), ctx.options.tolerance);
    if (!characterization.empty())
        out.claim.characterized = characterize(out.quantities, characterization, out.claim.note);
    return out;
}

// ---------------------------------------------------------------------------
// Obtuse triangle with legs a, b >= lower bounds and circumradius <= r0, in circumcircle coordinates.

std::vector<ParamSpec> obtuse_params(double a0, double b0, double r0)
{
    return {{"a", a0 - 0.2, a0 + 1.5}, {"b", b0 - 0.2, b0 + 1.5}, {"R", 0.5, r0 + 0.3}};
}

double obtuse_area(const Vec& x, double a0, double b0, double r0)
{
    const auto v = circle_vertices(x[0], x[1], x[2]);
    if (!v)
        return kInf;
    const auto m = metrics((*v)[0], (*v)[1], (*v)[2]);
    if (!m || !ge(m->angles[2], kPi / 2) || !ge(m->sides[0], a0) || !ge(m->sides[1], b0) ||
        !le(m->circumradius, r0))
        return kInf;
    return m->area;
}

MinResult obtuse_minimum(const Context& ctx, double a0, double b0, double r0)
{
    return minimize_params("3.2", [&](const Vec& x) { return obtuse_area(x, a0, b0, r0); }, obtuse_params(a0, b0, r0),
                           ctx.outer());
}

// ---------------------------------------------------------------------------
// Cyclic pentagons with gaps g1..g4 (g5 closes the circle); the circumradius is
// the smallest one keeping every side at least 1.

struct Pentagon
{
    double radius = 0.0;
    std::array<Point2, 5> vertices{};
    std::array<double, 5> gaps{};
};

std::optional<Pentagon> pentagon(const Vec& g)
{
    Pentagon p;
    double sum = 0.0;
    for (int i = 0; i < 4; ++i) {
        p.gaps[i] = g[i];
        sum += g[i];
    }
    p.gaps[4] = 2 * kPi - sum;
    if (!(p.gaps[4] > 0))
        return std::nullopt;
    double smallest = kInf;
    for (double gap : p.gaps)
        smallest = std::min(smallest, std::sin(std::min(gap, kPi) / 2));
    p.radius = 1.0 / (2 * smallest);
    double angle = 0.0;
    for (int i = 0; i < 5; ++i) {
        p.vertices[i] = polar(p.radius, angle);
        angle += p.gaps[i];
    }
    return p;
}

// Fan triangulation area; NaN if some fan triangle is degenerate.
double pentagon_area(const Pentagon& p)
{
    double total = 0.0;
    for (int i = 1; i < 4; ++i) {
        const auto m = metrics(p.vertices[0], p.vertices[i], p.vertices[i + 1]);
        if (!m)
            return kNaN;
        total += m->area;
    }
    return total;
}

bool pentagon_sides_ok(const Pentagon& p)
{
    for (int i = 0; i < 5; ++i)
        if (!ge(dist(p.vertices[i], p.vertices[(i + 1) % 5]), 1.0))
            return false;
    return true;
}

// Signed clearance of the centre to the line of edge i (positive inside the polygon).
double centre_clearance(const Pentagon& p, int i)
{
    const Point2 u = p.vertices[i], w = p.vertices[(i + 1) % 5];
    return cross(w - u, Point2{} - u) / dist(u, w);
}

double pentagon_containing_centre(const Vec& g)
{
    const auto p = pentagon(g);
    if (!p || !pentagon_sides_ok(*p))
        return kInf;
    for (int i = 0; i < 5; ++i)
        if (!ge(centre_clearance(*p, i), 0.0))
            return kInf;
    const double area = pentagon_area(*p);
    return std::isnan(area) ? kInf : area;
}

double pentagon_excluding_centre(const Vec& g)
{
    const auto p = pentagon(g);
    if (!p || !pentagon_sides_ok(*p) || !le(p->radius, kRoot2))
        return kInf;
    // The closing side separates, not strictly, the polygon from the centre.
    if (!le(centre_clearance(*p, 4), 0.0))
        return kInf;
    for (double gap : p->gaps)
        if (!(gap > 0))
            return kInf;
    const double area = pentagon_area(*p);
    return std::isnan(area) ? kInf : area;
}

std::vector<ParamSpec> gap_params(double lo, double hi)
{
    return {{"g1", lo, hi}, {"g2", lo, hi}, {"g3", lo, hi}, {"g4", lo, hi}};
}

// Sides of at least 1 on a circle of radius at most sqrt 2 need gaps of at least
// 2 asin(1/(2 sqrt2)) ~ 0.7227; four of them summing to at most pi keeps each below 0.975.
std::vector<ParamSpec> excluding_gap_params() { return gap_params(0.7, 1.0); }

MinResult pentagon_containing_minimum(const Context& ctx)
{
    return minimize_params("3.6", pentagon_containing_centre, gap_params(0.05, kPi), ctx.outer());
}

// ---------------------------------------------------------------------------
// Quadrangle A B A1 C on a circle with diameter AB (angles measured from B).

std::vector<ParamSpec> quadrangle_params()
{
    return {{"R", 0.9, kRoot2}, {"theta_A1", 0.0, kPi}, {"theta_C", 0.0, kPi}};
}

double quadrangle_area(const Vec& x)
{
    const double r = x[0];
    if (!le(r, kRoot2))
        return kInf;
    const Point2 a{-r, 0.0}, b{r, 0.0}, a1 = polar(r, x[1]), c = polar(r, x[2]);
    if (!(orientation(a, b, a1) > 0 && orientation(b, a1, c) > 0 && orientation(a1, c, a) > 0 &&
          orientation(c, a, b) > 0))
        return kInf;
    if (!ge(dist(b, a1), 1.0) || !ge(dist(a1, c), 1.0) || !ge(dist(c, a), kRoot2))
        return kInf;
    const auto t1 = metrics(a, b, c);
    const auto t2 = metrics(b, a1, c);
    if (!t1 || !t2)
        return kInf;
    return t1->area + t2->area;
}

// Right triangle over the diameter with both legs at least sqrt 2.
double diameter_triangle_minimum(const Context& ctx, double r)
{
    const Point2 a{-r, 0.0}, b{r, 0.0};
    const auto f = [&](const Vec& x) {
        const Point2 c = polar(r, x[0]);
        if (!ge(dist(b, c), kRoot2) || !ge(dist(c, a), kRoot2))
            return kInf;
        const auto m = metrics(a, b, c);
        return m ? m->area : kInf;
    };
    GridOptions g = ctx.outer();
    g.points = std::max(g.points, 257);
    return minimize_params("3.7", f, {{"theta_C", 0.0, kPi}}, g).value;
}

struct SchemeValue
{
    double bound = kInf;
    std::vector<double> pieces;
};

// Sub-interval scheme: increasing part at the left endpoint plus decreasing part at the right endpoint.
SchemeValue quadrangle_scheme(const Context& ctx)
{
    SchemeValue s;
    for (int i = 1; i <= 5; ++i) {
        const double left = 1.0 + 0.1 * (i - 1), right = 1.0 + 0.1 * i;
        const double piece = diameter_triangle_minimum(ctx, left) + obtuse_minimum(ctx, 1.0, 1.0, right).value;
        s.pieces.push_back(piece);
        s.bound = std::min(s.bound, piece);
    }
    return s;
}

// ---------------------------------------------------------------------------
// Triangle ABC on a circle of radius R with unit-leg isosceles ears on BC and CA.
// The smaller central angles of BC and CA are phi_A and phi_B.

struct EaredCircle
{
    TriangleMetrics abc;
    TriangleMetrics ear_a;
    TriangleMetrics ear_b;
    double total = 0.0;
};

std::optional<EaredCircle> eared_circle(double r, double phi_a, double phi_b)
{
    const Point2 c = polar(r, 0.0), b = polar(r, phi_a), a = polar(r, -phi_b);
    const auto abc = metrics(a, b, c);
    if (!abc)
        return std::nullopt;
    const auto a1 = unit_isosceles_apex(b, c, Point2{});
    const auto b2 = unit_isosceles_apex(c, a, Point2{});
    if (!a1 || !b2)
        return std::nullopt;
    const auto ear_a = metrics(*a1, b, c);
    const auto ear_b = metrics(a, *b2, c);
    if (!ear_a || !ear_b)
        return std::nullopt;
    return EaredCircle{*abc, *ear_a, *ear_b, abc->area + ear_a->area + ear_b->area};
}

double phi_min(double r) { return 2 * std::asin(kRoot2 / (2 * r)); }
double phi_max(double r) { return 4 * std::asin(1.0 / (2 * r)); }

// Hypotheses of the eared-circle configuration recomputed from coordinates.
bool eared_circle_hypotheses(const EaredCircle& e)
{
    const double tol = kRebuildTolerance;
    return e.abc.sides[0] >= 1 - tol && e.abc.sides[1] >= 1 - tol && e.abc.sides[2] >= 1 - tol &&
           e.ear_a.angles[0] >= kPi / 2 - tol && e.ear_b.angles[1] >= kPi / 2 - tol &&
           e.abc.angles[0] + e.ear_a.angles[0] <= kPi + tol && e.abc.angles[1] + e.ear_b.angles[1] <= kPi + tol &&
           std::abs(e.ear_a.sides[0] - e.abc.sides[0]) <= tol && std::abs(e.ear_b.sides[1] - e.abc.sides[1]) <= tol;
}

double eared_circle_extreme(double r)
{
    const auto e = eared_circle(r, phi_min(r), phi_max(r));
    return e ? e->total : kInf;
}

SchemeValue eared_circle_scheme()
{
    SchemeValue s;
    const double edges[6] = {1.0, 1.1, 1.2, 1.3, 1.4, kRoot2};
    double constant = kInf;
    for (int i = 0; i < 5; ++i) {
        const double left = edges[i], right = edges[i + 1];
        const auto e = eared_circle(right, phi_min(right), phi_max(right));
        if (!e)
            return {};
        // Increasing factor R^2/2 at the left endpoint times the decreasing factor at the right endpoint.
        const double factor = 2 * (e->abc.area + e->ear_b.area) / (right * right);
        s.pieces.push_back(left * left / 2 * factor);
        for (double r : {left, right}) {
            const auto f = eared_circle(r, phi_min(r), phi_max(r));
            if (f)
                constant = std::min(constant, f->ear_a.area);
        }
    }
    s.bound = *std::min_element(s.pieces.begin(), s.pieces.end()) + constant;
    return s;
}

// ---------------------------------------------------------------------------
// Cases.

struct CaseEntry
{
    LemmaCase meta;
    std::function<void(const Context&, OracleReport&)> run;
};

const std::string kNonObtuseConstraints = "all sides >= 1; alpha, beta, gamma <= pi/2";
const std::string kObtuseConstraints = "a, b >= 1; gamma >= pi/2";
const std::string kEarConstraints = "ear legs >= 1; ear apex angle >= pi/2; central angle + ear apex angle <= pi";

ClaimSpec minimum_spec(std::string label, double value, std::string minimizer, bool lower_bound_only = false)
{
    return {std::move(label), ClaimKind::Minimum, value, lower_bound_only, std::move(minimizer)};
}

ClaimSpec sign_spec(std::string label, ClaimKind kind, std::string description)
{
    return {std::move(label), kind, kNaN, false, std::move(description)};
}

// 3.1: minimal triangles over a fixed side have two active constraints.
void run_3_1(const Context& ctx, OracleReport& rep)
{
    struct Instance
    {
        double c, gamma0;
        bool obtuse;
    };
    const Instance instances[] = {{1.0, 2 * kPi / 3, false}, {2.0, kPi / 2, false}, {1.5, 1.2, false},
                                  {3.0, 1.0, false},         {2.0, 2.0, true},      {1.8, 1.9, true}};
    ClaimResult parts[2];
    parts[0].spec = sign_spec("alpha, beta <= pi/2", ClaimKind::ActiveConstraints,
                              "two of alpha<=pi/2, beta<=pi/2, a>=1, b>=1, gamma<=gamma0 are equalities");
    parts[1].spec = sign_spec("gamma >= pi/2", ClaimKind::ActiveConstraints,
                              "two of a>=1, b>=1, gamma<=gamma0 are equalities");
    bool first[2] = {true, true};
    for (const Instance& in : instances) {
        // Parametrized by the free sides a = |BC| and b = |CA|, so the side bounds are box faces.
        const auto evaluate = [&](const Vec& x) -> std::optional<TriangleMetrics> {
            const double a = x[0], b = x[1];
            const double cx = (b * b - a * a + in.c * in.c) / (2 * in.c);
            if (!(b * b - cx * cx > 0))
                return std::nullopt;
            const auto m = metrics({0.0, 0.0}, {in.c, 0.0}, {cx, std::sqrt(b * b - cx * cx)});
            if (!m || !le(m->angles[0], kPi / 2) || !le(m->angles[1], kPi / 2) || !ge(m->sides[0], 1.0) ||
                !ge(m->sides[1], 1.0) || !le(m->angles[2], in.gamma0))
                return std::nullopt;
            if (in.obtuse && !ge(m->angles[2], kPi / 2))
                return std::nullopt;
            return m;
        };
        const auto f = [&](const Vec& x) {
            const auto m = evaluate(x);
            return m ? m->area : kInf;
        };
        const MinResult m = minimize_params(rep.id, f, {{"a", 0.9, 4.0}, {"b", 0.9, 4.0}}, ctx.outer());
        const TriangleMetrics t = *evaluate(m.x);
        std::vector<std::pair<std::string, double>> slacks = {
            {"a>=1", t.sides[0] - 1.0}, {"b>=1", t.sides[1] - 1.0}, {"gamma<=gamma0", in.gamma0 - t.angles[2]}};
        if (!in.obtuse) {
            slacks.insert(slacks.begin(), {{"alpha<=pi/2", kPi / 2 - t.angles[0]}, {"beta<=pi/2", kPi / 2 - t.angles[1]}});
        }
        std::string active;
        int count = 0;
        for (const auto& [name, slack] : slacks)
            if (slack <= kActiveTolerance) {
                ++count;
                active += (active.empty() ? "" : ",") + name;
            }
        ClaimResult& part = parts[in.obtuse ? 1 : 0];
        part.active.push_back("c=" + std::to_string(in.c) + " gamma0=" + std::to_string(in.gamma0) + ": " + active);
        ++part.checks;
        if (count < 2)
            ++part.violations;
        part.evaluations += m.evaluations;
        if (first[in.obtuse ? 1 : 0]) {
            part.found_min = m.value;
            part.argmin = m.x;
            part.lower_estimate = m.value;
            first[in.obtuse ? 1 : 0] = false;
        }
    }
    for (ClaimResult& part : parts) {
        part.rederived = kNaN;
        part.witness_value = kNaN;
        rep.claims.push_back(part);
    }
}

// 3.2: minimal obtuse triangles under a circumradius bound.
void run_3_2(const Context& ctx, OracleReport& rep)
{
    struct Sub
    {
        std::string label;
        double a0, b0, r0, value;
    };
    const Sub subs[] = {{"(1) a>=sqrt2, b>=1, R<=sqrt2", kRoot2, 1.0, kRoot2, (std::sqrt(7.0) + std::sqrt(3.0)) / 8},
                        {"(2) a>=sqrt2, b>=1, R<=sqrt(5/2)", kRoot2, 1.0, kRootFiveHalves, 0.5},
                        {"(3) a>=1, b>=1, R<=sqrt2", 1.0, 1.0, kRoot2, std::sqrt(7.0) / 8}};
    for (const Sub& s : subs) {
        const MinResult m = obtuse_minimum(ctx, s.a0, s.b0, s.r0);
        ClaimResult r = minimum_claim(minimum_spec(s.label, s.value, "a=a0, b=b0, R=R0"), m, ctx.preset.zoom);
        set_witness(r, obtuse_area({s.a0, s.b0, s.r0}, s.a0, s.b0, s.r0), ctx.options.tolerance);
        const auto v = circle_vertices(m.x[0], m.x[1], m.x[2]);
        const auto t = v ? metrics((*v)[0], (*v)[1], (*v)[2]) : std::nullopt;
        r.consistent = t && std::abs(t->area - m.value) <= kRebuildTolerance;
        if (t)
            r.characterized = characterize({{"a", t->sides[0]}, {"b", t->sides[1]}, {"R", t->circumradius}},
                                           {{"a", s.a0}, {"b", s.b0}, {"R", s.r0}}, r.note);
        rep.claims.push_back(r);
    }
}

// 3.3: with b, c, b1, c1 fixed, decreasing alpha decreases the two areas.
void run_3_3(const Context& ctx, OracleReport& rep)
{
    ClaimResult r;
    r.spec = sign_spec("area decreases with alpha", ClaimKind::Monotonicity,
                       "V(ABC)+V(A1BC) strictly increasing in alpha while alpha+alpha1 < pi");
    r.rederived = r.witness_value = kNaN;
    r.worst_margin = kInf;
    const double lengths[] = {1.0, 1.35, 1.8, 2.4};
    const int n = std::max(32, ctx.preset.check_points * 4);
    const double h = kMonotoneStep;
    struct State
    {
        double total, alpha1, sum;
    };
    const auto state = [](double b, double c, double b1, double c1, double alpha) -> std::optional<State> {
        const Point2 a{0.0, 0.0}, bv{c, 0.0}, cv = polar(b, alpha);
        const auto abc = metrics(a, bv, cv);
        const auto a1 = apex_from_sides(bv, cv, c1, b1, a);
        if (!abc || !a1)
            return std::nullopt;
        const auto ear = metrics(*a1, bv, cv);
        if (!ear || abc->angles[0] + ear->angles[0] > kPi)
            return std::nullopt;
        return State{abc->area + ear->area, ear->angles[0], abc->angles[0] + ear->angles[0]};
    };
    for (double b : lengths)
        for (double c : lengths)
            for (double b1 : lengths)
                for (double c1 : lengths)
                    for (int i = 1; i < n; ++i) {
                        const double alpha = kPi * i / n;
                        const auto hi = state(b, c, b1, c1, alpha);
                        const auto lo = state(b, c, b1, c1, alpha - h);
                        if (!hi || !lo)
                            continue;
                        ++r.checks;
                        const double drop = hi->total - lo->total;
                        // Near alpha + alpha1 = pi the derivative vanishes; only weak monotonicity is required there.
                        const bool strict = hi->sum < kPi - 1e-2;
                        const double margin = strict ? drop - kMonotoneMargin : drop + 1e-12;
                        if (strict)
                            r.worst_margin = std::min(r.worst_margin, drop);
                        if (margin <= 0 || !(lo->alpha1 < hi->alpha1))
                            ++r.violations;
                    }
    rep.claims.push_back(r);
}

// 3.4: from alpha = alpha1 = pi/2, a small decrease of alpha followed by rotating A1B about B.
void run_3_4(const Context& ctx, OracleReport& rep)
{
    ClaimResult r;
    r.spec = sign_spec("two-step motion decreases area", ClaimKind::Monotonicity,
                       "each motion strictly decreases V(ABC)+V(A1BC)");
    r.rederived = r.witness_value = kNaN;
    r.worst_margin = kInf;
    const int n = std::max(4, ctx.preset.check_points / 4);
    for (int ib = 0; ib < n; ++ib)
        for (int ic = 0; ic < n; ++ic)
            for (int i1 = 0; i1 < n; ++i1) {
                const double b = 1.0 + 1.5 * ib / (n - 1), c = 1.0 + 1.5 * ic / (n - 1);
                const double a = std::hypot(b, c);
                const double b1 = 1.0 + (a - 1.05) * i1 / (n - 1);
                const double c1 = std::sqrt(a * a - b1 * b1);
                const Point2 av{0.0, 0.0}, bv{c, 0.0};
                const Point2 c0 = polar(b, kPi / 2);
                const auto ear0 = apex_from_sides(bv, c0, c1, b1, av);
                const Point2 c1v = polar(b, kPi / 2 - kMonotoneStep);
                const auto ear1 = apex_from_sides(bv, c1v, c1, b1, av);
                const double a_after = dist(bv, c1v);
                const auto ear2 = apex_from_sides(bv, c1v, c1, std::sqrt(std::max(0.0, a_after * a_after - c1 * c1)), av);
                if (!ear0 || !ear1 || !ear2 || !(c1 < a_after))
                    continue;
                const auto t0 = metrics(av, bv, c0), e0 = metrics(*ear0, bv, c0);
                const auto t1 = metrics(av, bv, c1v), e1 = metrics(*ear1, bv, c1v), e2 = metrics(*ear2, bv, c1v);
                if (!t0 || !e0 || !t1 || !e1 || !e2)
                    continue;
                ++r.checks;
                const double s0 = t0->area + e0->area, s1 = t1->area + e1->area, s2 = t1->area + e2->area;
                const bool right_again = std::abs(e2->angles[0] - kPi / 2) <= kRebuildTolerance;
                const bool angular = t1->angles[0] + e2->angles[0] <= kPi + kRebuildTolerance;
                const bool beta_down = e2->angles[1] < e1->angles[1];
                r.worst_margin = std::min(r.worst_margin, s0 - s2);
                // The first motion starts where the derivative vanishes, so its gain is only
                // second order in the step; it must be positive, the total gain must clear the margin.
                if (!(s0 - s1 > 1e-13) || !(s1 - s2 > 0) || !(s0 - s2 > kMonotoneMargin) || !right_again ||
                    !angular || !beta_down)
                    ++r.violations;
            }
    rep.claims.push_back(r);
}

// 3.5: circumradius sqrt 2, unit-leg ear; the minimum has alpha1 = pi/2 or alpha + alpha1 = pi.
void run_3_5(const Context& ctx, OracleReport& rep)
{
    struct Eval
    {
        double total = kInf;
        double right_slack = 0.0, angular_slack = 0.0;
    };
    const auto eval = [](const Vec& x) {
        Eval out;
        const double alpha = x[0], gamma = x[1], beta = kPi - alpha - gamma;
        if (!(beta > 0))
            return out;
        const double a = 2 * kRoot2 * std::sin(alpha), b = 2 * kRoot2 * std::sin(beta);
        const auto v = central_vertices(a, b, gamma);
        const auto abc = metrics(v[0], v[1], v[2]);
        const auto a1 = unit_isosceles_apex(v[1], v[2], v[0]);
        if (!abc || !a1)
            return out;
        const auto ear = metrics(*a1, v[1], v[2]);
        if (!ear || !ge(abc->angles[2], kPi / 2) || !ge(abc->sides[1], 1.0) || !le(abc->sides[1], std::sqrt(3.5)) ||
            !ge(ear->angles[0], kPi / 2) || !le(abc->angles[0] + ear->angles[0], kPi) ||
            std::abs(abc->circumradius - kRoot2) > kRebuildTolerance)
            return out;
        out.total = abc->area + ear->area;
        out.right_slack = ear->angles[0] - kPi / 2;
        out.angular_slack = kPi - abc->angles[0] - ear->angles[0];
        return out;
    };
    const std::vector<ParamSpec> params = {{"alpha", 0.01, kPi / 2}, {"gamma", kPi / 2 - 0.05, kPi - 0.01}};
    rep.params = params;
    const MinResult m = minimize_params(rep.id, [&](const Vec& x) { return eval(x).total; }, params, ctx.outer());
    ClaimResult r = minimum_claim(sign_spec("alpha1 = pi/2 or alpha + alpha1 = pi", ClaimKind::ActiveConstraints,
                                            "minimum only where alpha1 = pi/2 or alpha + alpha1 = pi"),
                                  m, ctx.preset.zoom);
    const Eval at = eval(m.x);
    r.checks = 1;
    if (at.right_slack <= kActiveTolerance)
        r.active.push_back("alpha1=pi/2");
    if (at.angular_slack <= kActiveTolerance)
        r.active.push_back("alpha+alpha1=pi");
    r.violations = r.active.empty() ? 1 : 0;
    rep.claims.push_back(r);
}

void run_3_6(const Context& ctx, OracleReport& rep)
{
    const MinResult m = pentagon_containing_minimum(ctx);
    ClaimResult r = minimum_claim(
        minimum_spec("cyclic pentagon containing its centre", kPentagonArea, "regular pentagon of side 1"),
        m, ctx.preset.zoom);
    set_witness(r, pentagon_containing_centre(Vec(4, 2 * kPi / 5)), ctx.options.tolerance);
    const auto p = pentagon(m.x);
    r.consistent = p && std::abs(pentagon_area(*p) - m.value) <= kRebuildTolerance;
    if (p) {
        Quantities q;
        std::vector<std::pair<std::string, double>> targets;
        for (int i = 0; i < 5; ++i) {
            const std::string name = "side" + std::to_string(i + 1);
            q[name] = dist(p->vertices[i], p->vertices[(i + 1) % 5]);
            targets.push_back({name, 1.0});
        }
        r.characterized = characterize(q, targets, r.note);
    }
    rep.claims.push_back(r);
}

void run_3_7(const Context& ctx, OracleReport& rep)
{
    const MinResult m = minimize_params(rep.id, quadrangle_area, quadrangle_params(), ctx.outer());
    ClaimResult r = minimum_claim(minimum_spec("quadrangle over a diameter", 1.4048, "lower bound", true), m,
                                  ctx.preset.zoom);
    const SchemeValue s = quadrangle_scheme(ctx);
    r.rederived = s.bound;
    for (std::size_t i = 0; i < s.pieces.size(); ++i)
        rep.informational.push_back({"subinterval " + std::to_string(i + 1) + " estimate", s.pieces[i]});
    r.consistent = std::isfinite(quadrangle_area(m.x));
    rep.claims.push_back(r);
}

void run_3_8(const Context& ctx, OracleReport& rep)
{
    const MinResult m = minimize_params(rep.id, pentagon_excluding_centre, excluding_gap_params(), ctx.outer());
    ClaimResult r = minimum_claim(minimum_spec("cyclic pentagon not containing its centre", 2.3977,
                                               "R = sqrt2 and four sides of length 1"),
                                  m, ctx.preset.zoom);
    const double g = 2 * std::asin(1.0 / (2 * kRoot2));
    set_witness(r, pentagon_excluding_centre(Vec(4, g)), ctx.options.tolerance);
    const auto p = pentagon(m.x);
    r.consistent = p && std::abs(pentagon_area(*p) - m.value) <= kRebuildTolerance;
    if (p) {
        Quantities q{{"R", p->radius}};
        std::vector<std::pair<std::string, double>> targets{{"R", kRoot2}};
        for (int i = 0; i < 4; ++i) {
            const std::string name = "side" + std::to_string(i + 1);
            q[name] = dist(p->vertices[i], p->vertices[i + 1]);
            targets.push_back({name, 1.0});
        }
        r.characterized = characterize(q, targets, r.note);
    }
    rep.informational.push_back({"witness value", r.witness_value});
    rep.claims.push_back(r);
}

// 3.9: concavity in each central angle and minimum at a vertex of the square.
void run_3_9(const Context& ctx, OracleReport& rep)
{
    ClaimResult r;
    r.spec = sign_spec("concave in phi_A and phi_B", ClaimKind::Concavity,
                       "negative second differences over [phi_min, phi_max]^2; minimum at a vertex");
    r.rederived = r.witness_value = kNaN;
    r.worst_margin = -kInf;
    const int n = std::max(8, ctx.preset.check_points);
    const double h = kConcavityStep;
    const double radii[] = {1.0, 1.1, 1.2, 1.3, 1.4, kRoot2};
    for (double radius : radii) {
        const double lo = phi_min(radius), hi = phi_max(radius);
        const auto total = [&](double pa, double pb) {
            const auto e = eared_circle(radius, pa, pb);
            return e ? e->total : kNaN;
        };
        double grid_min = kInf;
        for (int i = 0; i <= n; ++i)
            for (int j = 0; j <= n; ++j) {
                const double pa = lo + (hi - lo) * i / n, pb = lo + (hi - lo) * j / n;
                const auto e = eared_circle(radius, pa, pb);
                r.checks += 3;
                if (!e || !eared_circle_hypotheses(*e)) {
                    ++r.violations;
                    continue;
                }
                grid_min = std::min(grid_min, e->total);
                const double f0 = e->total;
                const double da = (total(pa + h, pb) - 2 * f0 + total(pa - h, pb)) / (h * h);
                const double db = (total(pa, pb + h) - 2 * f0 + total(pa, pb - h)) / (h * h);
                r.worst_margin = std::max({r.worst_margin, da, db});
                if (!(da < -kMonotoneMargin))
                    ++r.violations;
                if (!(db < -kMonotoneMargin))
                    ++r.violations;
            }
        double corner = kInf;
        for (double pa : {lo, hi})
            for (double pb : {lo, hi})
                corner = std::min(corner, total(pa, pb));
        ++r.checks;
        if (!(grid_min >= corner - 1e-12))
            ++r.violations;
        rep.informational.push_back({"R=" + std::to_string(radius) + " minimum at a vertex", corner});
    }
    rep.claims.push_back(r);
}

void run_3_10(const Context& ctx, OracleReport& rep)
{
    const MinResult m = minimize_params(rep.id, [](const Vec& x) { return eared_circle_extreme(x[0]); },
                                        {{"R", 1.0, kRoot2}}, ctx.outer());
    ClaimResult r = minimum_claim(minimum_spec("phi_A = phi_min, phi_B = phi_max over R", 1.8720, "lower bound", true),
                                  m, ctx.preset.zoom);
    const SchemeValue s = eared_circle_scheme();
    r.rederived = s.bound;
    for (std::size_t i = 0; i < s.pieces.size(); ++i)
        rep.informational.push_back({"subinterval " + std::to_string(i + 1) + " estimate", s.pieces[i]});
    const auto e = eared_circle(m.x[0], phi_min(m.x[0]), phi_max(m.x[0]));
    r.consistent = e && eared_circle_hypotheses(*e);
    rep.claims.push_back(r);
}

void run_4_1(const Context& ctx, OracleReport& rep)
{
    LayoutSpec s;
    s.ears = {0};
    const auto out = run_layout(ctx, rep.id, s, minimum_spec("two triangles", 1.0, "b=c=c1=b1=1, alpha1=pi/2"),
                                Vec{kRoot2, 1.0, 1.0},
                                {{"b", 1.0}, {"c", 1.0}, {"c1", 1.0}, {"b1", 1.0}, {"apex1", kPi / 2}});
    rep.claims.push_back(out.claim);
}

double four_two_bound(const Context& ctx, double& pentagon_min, double& obtuse3, double& quadrangle)
{
    pentagon_min = pentagon_containing_minimum(ctx).value;
    obtuse3 = obtuse_minimum(ctx, 1.0, 1.0, kRoot2).value;
    quadrangle = quadrangle_scheme(ctx).bound;
    return std::min({pentagon_min, kRoot2 + obtuse3, quadrangle + obtuse3, 1.0 + std::sqrt(3.0) / 2});
}

void run_4_2(const Context& ctx, OracleReport& rep)
{
    LayoutSpec s;
    s.ears = {0, 1};
    s.ear_radius_bound = kRoot2;
    const auto first = run_layout(ctx, rep.id, s,
                                  minimum_spec("three triangles", std::sqrt(7.0) / 4 + 1,
                                               "c1=b1=a2=c2=c=1, alpha1=beta2=pi/2"),
                                  Vec{kRoot2, kRoot2, 1.0},
                                  {{"c", 1.0}, {"c1", 1.0}, {"b1", 1.0}, {"a2", 1.0}, {"c2", 1.0},
                                   {"apex1", kPi / 2}, {"apex2", kPi / 2}});
    rep.claims.push_back(first.claim);

    s.c_min = kRoot2;
    auto second = run_layout(ctx, rep.id, s,
                             minimum_spec("three triangles with c >= sqrt2", kPentagonArea,
                                          "lower bound", true),
                             std::nullopt, {});
    double pent = 0, obt = 0, quad = 0;
    second.claim.rederived = four_two_bound(ctx, pent, obt, quad);
    rep.informational.push_back({"case: circumscribed pentagon", pent});
    rep.informational.push_back({"case: sqrt2 + obtuse triangle", kRoot2 + obt});
    rep.informational.push_back({"case: quadrangle + obtuse triangle", quad + obt});
    rep.informational.push_back({"case: equilateral sqrt2 with right ears", 1.0 + std::sqrt(3.0) / 2});
    rep.informational.push_back({"empirical minimum with c >= sqrt2", second.claim.found_min});
    rep.claims.push_back(second.claim);
}

void run_4_3(const Context& ctx, OracleReport& rep)
{
    LayoutSpec s;
    s.ears = {0, 1, 2};
    s.ear_radius_bound = kRoot2;
    auto out = run_layout(ctx, rep.id, s,
                          minimum_spec("four triangles", kPentagonArea + std::sqrt(7.0) / 8,
                                       "lower bound", true),
                          std::nullopt, {});
    double pent = 0, obt = 0, quad = 0;
    out.claim.rederived = four_two_bound(ctx, pent, obt, quad) + obt;
    const GridOptions inner = ctx.inner();
    rep.informational.push_back(
        {"example: three right unit-leg ears", evaluate_layout(s, {kRoot2, kRoot2, kRoot2}, inner).value});
    rep.claims.push_back(out.claim);
}

void run_4_4(const Context& ctx, OracleReport& rep)
{
    struct Sub
    {
        std::string label;
        double radius, value;
    };
    std::vector<Sub> subs = {{"R <= sqrt2", kRoot2, (std::sqrt(7.0) + std::sqrt(3.0)) / 8},
                             {"R <= sqrt(5/2)", kRootFiveHalves, 0.5}};
    if (ctx.options.radius_bound) {
        const double rb = *ctx.options.radius_bound;
        std::vector<Sub> chosen;
        for (const Sub& sub : subs)
            if (std::abs(sub.radius - rb) < 1e-12)
                chosen.push_back(sub);
        if (chosen.empty())
            chosen.push_back({"R <= " + std::to_string(rb), rb, kNaN});
        subs = chosen;
    }
    for (const Sub& sub : subs) {
        LayoutSpec s;
        s.obtuse_central = true;
        s.central_radius_bound = sub.radius;
        s.ears = {0};
        s.ear_area = false;
        auto out = run_layout(ctx, rep.id, s, minimum_spec(sub.label, sub.value, "b=b1=c1=1, a=sqrt2, R at the bound"),
                              Vec{kRoot2, 1.0, sub.radius},
                              {{"a", kRoot2}, {"b", 1.0}, {"R", sub.radius}});
        if (std::isnan(sub.value))
            out.claim.note += "no claimed constant for this circumradius bound; ";
        rep.claims.push_back(out.claim);
    }
}

void run_4_5(const Context& ctx, OracleReport& rep)
{
    LayoutSpec s;
    s.obtuse_central = true;
    s.central_radius_bound = kRoot2;
    s.ears = {0};
    const auto out = run_layout(ctx, rep.id, s,
                                minimum_spec("two triangles, obtuse centre", (std::sqrt(7.0) + std::sqrt(3.0) + 4) / 8,
                                             "c1=b1=b=1, alpha1=pi/2, R=sqrt2"),
                                Vec{kRoot2, 1.0, kRoot2},
                                {{"c1", 1.0}, {"b1", 1.0}, {"b", 1.0}, {"apex1", kPi / 2}, {"R", kRoot2}});
    rep.claims.push_back(out.claim);
}

// Obtuse central triangle of circumradius r with unit-leg isosceles ears on BC and CA.
double unit_eared_obtuse(double a, double b, double r)
{
    const auto cv = circle_vertices(a, b, r);
    if (!cv)
        return kNaN;
    const auto& v = *cv;
    const auto abc = metrics(v[0], v[1], v[2]);
    const auto a1 = unit_isosceles_apex(v[1], v[2], v[0]);
    const auto b2 = unit_isosceles_apex(v[2], v[0], v[1]);
    if (!abc || !a1 || !b2)
        return kNaN;
    const auto e1 = metrics(*a1, v[1], v[2]);
    const auto e2 = metrics(v[0], *b2, v[2]);
    if (!e1 || !e2)
        return kNaN;
    return abc->area + e1->area + e2->area;
}

void run_4_6(const Context& ctx, OracleReport& rep)
{
    const double bound = ctx.options.radius_bound.value_or(kRoot2);
    LayoutSpec s;
    s.obtuse_central = true;
    s.central_radius_bound = bound;
    s.ears = {0, 1};
    const auto out = run_layout(ctx, rep.id, s,
                                minimum_spec("three triangles, obtuse centre", 1.0 + std::sqrt(3.0) / 2,
                                             "c1=b1=a2=c2=1, alpha1=beta2=pi/2, R=sqrt2"),
                                Vec{kRoot2, kRoot2, kRoot2},
                                {{"c1", 1.0}, {"b1", 1.0}, {"a2", 1.0}, {"c2", 1.0}, {"apex1", kPi / 2},
                                 {"apex2", kPi / 2}, {"R", kRoot2}});
    rep.claims.push_back(out.claim);
    // Configurations at circumradius sqrt(5/2) with unit-leg ears, either right-angled
    // or with the apex on the circumcircle.
    const double r = kRootFiveHalves;
    const double on_circle = 2 * r * std::sin(2 * std::asin(1.0 / (2 * r)));
    const double right_ear = 0.5;
    const double both_right = unit_eared_obtuse(kRoot2, kRoot2, r);
    const double one_right = unit_eared_obtuse(kRoot2, on_circle, r);
    const double none_right = unit_eared_obtuse(on_circle, on_circle, r);
    rep.informational.push_back({"R=sqrt(5/2), both ears right", both_right});
    rep.informational.push_back({"R=sqrt(5/2), one ear right, one on the circle", one_right});
    rep.informational.push_back({"R=sqrt(5/2), both ears on the circle", none_right});
    // The inscribed part divided by R^2/2, as it appears before scaling.
    rep.informational.push_back({"one ear on the circle, inscribed part / (R^2/2) + right ear",
                                 (one_right - right_ear) / (r * r / 2) + right_ear});
    rep.informational.push_back({"both ears on the circle, inscribed part / (R^2/2)", none_right / (r * r / 2)});
}

const std::vector<CaseEntry>& registry()
{
    static const std::vector<CaseEntry> entries = [] {
        std::vector<CaseEntry> e;
        const auto add = [&](std::string id, std::string title, std::vector<ParamSpec> params,
                             std::vector<std::string> constraints, std::string objective, std::vector<ClaimSpec> claims,
                             std::function<void(const Context&, OracleReport&)> run) {
            e.push_back({LemmaCase{std::move(id), std::move(title), 1.0, std::move(params), std::move(constraints),
                                   std::move(objective), std::move(claims)},
                         std::move(run)});
        };
        add("3.1", "triangle with a fixed side", {{"a", 0.9, 4.0}, {"b", 0.9, 4.0}},
            {"alpha, beta <= pi/2", "a, b >= 1", "gamma <= gamma0", "optionally gamma >= pi/2"}, "V(ABC)",
            {sign_spec("alpha, beta <= pi/2", ClaimKind::ActiveConstraints, "two active constraints"),
             sign_spec("gamma >= pi/2", ClaimKind::ActiveConstraints, "two active constraints")},
            run_3_1);
        add("3.2", "obtuse triangle under a circumradius bound", obtuse_params(1.0, 1.0, kRoot2),
            {"gamma >= pi/2", "a >= a0", "b >= b0", "R <= R0"}, "V(ABC)",
            {minimum_spec("(1)", (std::sqrt(7.0) + std::sqrt(3.0)) / 8, "a=a0, b=b0, R=R0"),
             minimum_spec("(2)", 0.5, "a=a0, b=b0, R=R0"), minimum_spec("(3)", std::sqrt(7.0) / 8, "a=a0, b=b0, R=R0")},
            run_3_2);
        add("3.3", "triangle and ear with fixed sides", {{"alpha", 0.0, kPi}}, {"alpha + alpha1 <= pi"},
            "V(ABC) + V(A1BC)",
            {sign_spec("area decreases with alpha", ClaimKind::Monotonicity, "strictly increasing in alpha")}, run_3_3);
        add("3.4", "right triangle and right ear", {{"b", 1.0, 2.5}, {"c", 1.0, 2.5}, {"b1", 1.0, 2.5}},
            {"alpha = alpha1 = pi/2", "c1 < a"}, "V(ABC) + V(A1BC)",
            {sign_spec("two-step motion decreases area", ClaimKind::Monotonicity, "strict decrease")}, run_3_4);
        add("3.5", "obtuse triangle of circumradius sqrt2 and unit-leg ear",
            {{"alpha", 0.01, kPi / 2}, {"gamma", kPi / 2 - 0.05, kPi - 0.01}},
            {"R = sqrt2", "1 <= b <= sqrt(7/2)", "gamma >= pi/2", "alpha1 >= pi/2", "alpha + alpha1 <= pi"},
            "V(ABC) + V(A1BC)",
            {sign_spec("alpha1 = pi/2 or alpha + alpha1 = pi", ClaimKind::ActiveConstraints, "one active")}, run_3_5);
        add("3.6", "cyclic pentagon containing its centre", gap_params(0.05, kPi),
            {"sides >= 1", "centre in the pentagon"}, "pentagon area",
            {minimum_spec("(5/4) cot(pi/5)", kPentagonArea, "regular pentagon of side 1")}, run_3_6);
        add("3.7", "quadrangle over a diameter", quadrangle_params(),
            {"|BA1|, |A1C| >= 1", "|CA| >= sqrt2", "R <= sqrt2", "convex"}, "V(ABC) + V(BA1C)",
            {minimum_spec("1.4048", 1.4048, "lower bound", true)}, run_3_7);
        add("3.8", "cyclic pentagon not containing its centre", excluding_gap_params(),
            {"sides >= 1", "R <= sqrt2", "closing side separates the centre"}, "pentagon area",
            {minimum_spec("2.3977", 2.3977, "R = sqrt2, four sides 1")}, run_3_8);
        add("3.9", "eared triangle on a fixed circle", {{"phi_A", 0.0, kPi}, {"phi_B", 0.0, kPi}},
            {"phi_A, phi_B in [phi_min, phi_max]", "c1=b1=a2=c2=1"}, "V(ABC) + V(BA1C) + V(CB2A)",
            {sign_spec("concave in phi_A and phi_B", ClaimKind::Concavity, "negative second differences")}, run_3_9);
        add("3.10", "eared triangle at the extreme central angles", {{"R", 1.0, kRoot2}},
            {"phi_A = phi_min", "phi_B = phi_max"}, "V(ABC) + V(BA1C) + V(CB2A)",
            {minimum_spec("1.8720", 1.8720, "lower bound", true)}, run_3_10);
        add("4.1", "non-obtuse triangle with one ear", central_params(false), {kNonObtuseConstraints, kEarConstraints},
            "V(ABC) + V(BA1C)", {minimum_spec("1", 1.0, "b=c=c1=b1=1, alpha1=pi/2")}, run_4_1);
        add("4.2", "non-obtuse triangle with two ears", central_params(false),
            {kNonObtuseConstraints, kEarConstraints, "ear circumradius <= sqrt2", "second bound: c >= sqrt2"},
            "V(ABC) + V(BA1C) + V(CB2A)",
            {minimum_spec("sqrt7/4 + 1", std::sqrt(7.0) / 4 + 1, "c1=b1=a2=c2=c=1, alpha1=beta2=pi/2"),
             minimum_spec("(5/4) cot(pi/5)", kPentagonArea, "lower bound", true)},
            run_4_2);
        add("4.3", "non-obtuse triangle with three ears", central_params(false),
            {kNonObtuseConstraints, kEarConstraints, "ear circumradius <= sqrt2"},
            "V(ABC) + V(BA1C) + V(CB2A) + V(AC3B)",
            {minimum_spec("(5/4) cot(pi/5) + sqrt7/8", kPentagonArea + std::sqrt(7.0) / 8, "lower bound",
                          true)},
            run_4_3);
        add("4.4", "obtuse triangle with an ear", central_params(true),
            {kObtuseConstraints, kEarConstraints, "R <= sqrt2 or sqrt(5/2)"}, "V(ABC)",
            {minimum_spec("R <= sqrt2", (std::sqrt(7.0) + std::sqrt(3.0)) / 8, "b=b1=c1=1, a=sqrt2"),
             minimum_spec("R <= sqrt(5/2)", 0.5, "b=b1=c1=1, a=sqrt2")},
            run_4_4);
        add("4.5", "obtuse triangle with one ear", central_params(true),
            {kObtuseConstraints, kEarConstraints, "R <= sqrt2"}, "V(ABC) + V(BA1C)",
            {minimum_spec("(sqrt7 + sqrt3 + 4)/8", (std::sqrt(7.0) + std::sqrt(3.0) + 4) / 8,
                          "c1=b1=b=1, alpha1=pi/2, R=sqrt2")},
            run_4_5);
        add("4.6", "obtuse triangle with two ears", central_params(true),
            {kObtuseConstraints, kEarConstraints, "R <= sqrt2"}, "V(ABC) + V(BA1C) + V(CB2A)",
            {minimum_spec("1 + sqrt3/2", 1.0 + std::sqrt(3.0) / 2, "c1=b1=a2=c2=1, alpha1=beta2=pi/2, R=sqrt2")},
            run_4_6);
        return e;
    }();
    return entries;
}

nlohmann::json number(double v)
{
    return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr);
}

nlohmann::json to_json(const ParamSpec& p) { return {{"name", p.name}, {"lo", p.lo}, {"hi", p.hi}}; }

nlohmann::json to_json(const ClaimSpec& c)
{
    return {{"label", c.label},
            {"kind", to_string(c.kind)},
            {"value", number(c.value)},
            {"lower_bound_only", c.lower_bound_only},
            {"minimizer", c.minimizer}};
}

nlohmann::json to_json(const ClaimResult& r)
{
    nlohmann::json argmin = nlohmann::json::array();
    for (double v : r.argmin)
        argmin.push_back(v);
    return {{"claim", to_json(r.spec)},
            {"found_min", number(r.found_min)},
            {"argmin", argmin},
            {"lower_estimate", number(r.lower_estimate)},
            {"rederived", number(r.rederived)},
            {"claim_delta", number(r.claim_delta)},
            {"witness_value", number(r.witness_value)},
            {"witness_ok", r.witness_ok},
            {"consistent", r.consistent},
            {"characterized", r.characterized},
            {"active", r.active},
            {"checks", r.checks},
            {"violations", r.violations},
            {"worst_margin", number(r.worst_margin)},
            {"evaluations", r.evaluations},
            {"note", r.note},
            {"pass", r.pass}};
}

}  // namespace

const char* to_string(Resolution r)
{
    switch (r) {
    case Resolution::Coarse: return "coarse";
    case Resolution::Default: return "default";
    case Resolution::Fine: return "fine";
    }
    return "default";
}

Resolution resolution_from_string(const std::string& s)
{
    if (s == "coarse")
        return Resolution::Coarse;
    if (s == "default")
        return Resolution::Default;
    if (s == "fine")
        return Resolution::Fine;
    throw std::invalid_argument("unknown resolution: " + s);
}

const char* to_string(ClaimKind k)
{
    switch (k) {
    case ClaimKind::Minimum: return "Minimum";
    case ClaimKind::Monotonicity: return "Monotonicity";
    case ClaimKind::Concavity: return "Concavity";
    case ClaimKind::ActiveConstraints: return "ActiveConstraints";
    }
    return "Minimum";
}

ResolutionPreset preset(Resolution r)
{
    ResolutionPreset p;
    switch (r) {
    case Resolution::Coarse:
        p.points = 32;
        p.budget = std::size_t{1} << 15;
        p.rounds = 4;
        p.nested_budget = std::size_t{1} << 11;
        p.inner_points = 9;
        p.inner_rounds = 3;
        p.check_points = 16;
        break;
    case Resolution::Default:
        p.points = 64;
        p.budget = std::size_t{1} << 18;
        p.rounds = 4;
        p.nested_budget = std::size_t{1} << 15;
        p.inner_points = 17;
        p.inner_rounds = 4;
        p.check_points = 48;
        break;
    case Resolution::Fine:
        p.points = 128;
        p.budget = std::size_t{1} << 21;
        p.rounds = 6;
        p.nested_budget = std::size_t{1} << 18;
        p.inner_points = 25;
        p.inner_rounds = 5;
        p.check_points = 96;
        break;
    }
    return p;
}

std::vector<LemmaCase> list_cases()
{
    std::vector<LemmaCase> out;
    for (const CaseEntry& e : registry())
        out.push_back(e.meta);
    return out;
}

OracleReport run_case(const std::string& id, Resolution resolution, const OracleOptions& options)
{
    const auto& entries = registry();
    const auto it = std::find_if(entries.begin(), entries.end(), [&](const CaseEntry& e) { return e.meta.id == id; });
    if (it == entries.end())
        throw UnknownCase("unknown oracle case: " + id);
    OracleReport rep;
    rep.id = id;
    rep.title = it->meta.title;
    rep.resolution = resolution;
    rep.radius_bound = options.radius_bound;
    rep.tolerance = options.tolerance;
    rep.params = it->meta.params;
    it->run(Context{preset(resolution), options}, rep);
    rep.pass = !rep.claims.empty();
    for (ClaimResult& c : rep.claims) {
        finalize(c, options.tolerance);
        rep.pass = rep.pass && c.pass;
    }
    const ClaimResult& head = rep.claims.front();
    rep.found_min = head.found_min;
    rep.argmin = head.argmin;
    rep.bracket_lo = head.lower_estimate;
    rep.bracket_hi = head.found_min;
    rep.claim_delta = 0.0;
    for (const ClaimResult& c : rep.claims)
        if (c.spec.kind == ClaimKind::Minimum)
            rep.claim_delta = std::isnan(c.claim_delta) ? c.claim_delta : std::max(rep.claim_delta, c.claim_delta);
    return rep;
}

OracleSummary verify_all(Resolution resolution, double tolerance)
{
    const auto cases = list_cases();
    OracleSummary s;
    s.resolution = resolution;
    s.reports.resize(cases.size());
    OracleOptions options;
    options.tolerance = tolerance;
    parallel_for(cases.size(), [&](std::size_t i) { s.reports[i] = run_case(cases[i].id, resolution, options); });
    s.total = static_cast<int>(s.reports.size());
    for (const OracleReport& r : s.reports) {
        s.passed += r.pass ? 1 : 0;
        if (std::isfinite(r.claim_delta))
            s.max_claim_delta = std::max(s.max_claim_delta, r.claim_delta);
    }
    s.pass = s.passed == s.total;
    return s;
}

nlohmann::json to_json(const LemmaCase& c)
{
    nlohmann::json params = nlohmann::json::array(), claims = nlohmann::json::array();
    for (const ParamSpec& p : c.params)
        params.push_back(to_json(p));
    for (const ClaimSpec& k : c.claims)
        claims.push_back(to_json(k));
    return {{"id", c.id},         {"title", c.title},         {"p", c.p},        {"params", params},
            {"constraints", c.constraints}, {"objective", c.objective}, {"claims", claims}};
}

nlohmann::json to_json(const OracleReport& r)
{
    nlohmann::json params = nlohmann::json::array(), claims = nlohmann::json::array(),
                   info = nlohmann::json::array(), argmin = nlohmann::json::array();
    for (const ParamSpec& p : r.params)
        params.push_back(to_json(p));
    for (const ClaimResult& c : r.claims)
        claims.push_back(to_json(c));
    for (const Informational& i : r.informational)
        info.push_back({{"label", i.label}, {"value", number(i.value)}});
    for (double v : r.argmin)
        argmin.push_back(v);
    return {{"id", r.id},
            {"title", r.title},
            {"resolution", to_string(r.resolution)},
            {"radius_bound", r.radius_bound ? number(*r.radius_bound) : nlohmann::json(nullptr)},
            {"tolerance", r.tolerance},
            {"params", params},
            {"found_min", number(r.found_min)},
            {"argmin", argmin},
            {"bracket", {number(r.bracket_lo), number(r.bracket_hi)}},
            {"claim_delta", number(r.claim_delta)},
            {"claims", claims},
            {"informational", info},
            {"pass", r.pass}};
}

nlohmann::json to_json(const OracleSummary& s)
{
    nlohmann::json reports = nlohmann::json::array();
    for (const OracleReport& r : s.reports)
        reports.push_back(to_json(r));
    return {{"resolution", to_string(s.resolution)},
            {"passed", s.passed},
            {"total", s.total},
            {"max_claim_delta", s.max_claim_delta},
            {"pass", s.pass},
            {"reports", reports}};
}

}  // namespace delpack
